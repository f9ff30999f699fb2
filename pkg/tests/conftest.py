import pytest

from morpho.datasets import load_network_model

# priorities shown on the improvement structure (group A differs from the
# prospective-improvement table, which ranks A2 first)
FIG8_PRIORITIES = {
    "A1": 1, "A2": 2,
    "Bt1": 3, "Bt2": 1, "Bh1": 3, "Bh2": 1,
    "Dt1": 3, "Dt2": 2, "Dt3": 1,
    "Dh1": 3, "Dh2": 2, "Dh3": 1,
    "Db1": 3, "Db2": 2, "Db3": 1,
}


@pytest.fixture(scope="session")
def model():
    return load_network_model()


@pytest.fixture
def fig8_priorities():
    return dict(FIG8_PRIORITIES)


@pytest.fixture
def groups(model):
    return {g.id: g for g in model.groups}
