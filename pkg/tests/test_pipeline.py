import json
from dataclasses import replace

import pytest

from morpho.errors import ConfigError, StaleTransitionError, ValidationError
from morpho.model import (Alternative, AlternativeGroup, GenerationSnapshot,
                          Model, RequirementTree, Transition)
from morpho.pipeline import (ForecastConfig, ForecastReport, apply_changes,
                             render_report, run_forecast, select_basic)
from morpho.selection import BudgetSelection
from morpho.synthesis import Composition

SF1 = dict(T=2, Q=3, W=2, J=3, R=2, H=2, V=3, E=3, M=3, L=2, F=2, K=3, C=1, U=2, Z=3)
SF2 = dict(SF1, F=3)

SI1 = {"A": "A1", "Bt": "Bt2", "Bh": "Bh2", "Dt": "Dt2", "Dh": "Dh3", "Db": "Db3"}
SI2 = dict(SI1, Dt="Dt3")


def test_select_basic(model):
    assert select_basic(model).index == 4
    assert select_basic(model, 2) == model.generation(2)
    with pytest.raises(ConfigError):
        select_basic(replace(model, generations=()))
    with pytest.raises(ConfigError):
        select_basic(model, 9)


@pytest.mark.parametrize("sel, expected", [(SI1, SF1), (SI2, SF2)])
def test_apply_composite_improvements(model, sel, expected):
    out = apply_changes(model.generation(4), Composition.of(sel), model)
    assert out.levels == expected


def test_apply_all_none(model):
    base = model.generation(4)
    none = Composition.of({g.id: g.alternatives[0].id for g in model.groups})
    assert apply_changes(base, none, model).levels == base.levels


def test_apply_stale_transition(model):
    with pytest.raises(StaleTransitionError, match="F"):
        apply_changes(model.generation(3), [Transition("F", 2, 3)], model)


def test_apply_budget_selection(model):
    sel = BudgetSelection(("A2",), 0, 0)
    assert apply_changes(model.generation(4), sel, model).level("W") == 3


def test_hmmd_forecast(model):
    report = run_forecast(model, ForecastConfig(method="hmmd", strategy="explicit",
                                                default_compat=3, policy="latest"))
    assert report.basic_generation == 4
    assert [r.snapshot.levels for r in report.results] == [SF1, SF2]
    for r in report.results:
        assert r.snapshot == apply_changes(model.generation(4), r.selection, model)


def test_budget_forecast_zero(model):
    report = run_forecast(model, ForecastConfig(method="budget", budget=0))
    (r,) = report.results
    assert r.snapshot.levels == model.generation(4).levels
    assert r.selection.total_profit == 0


def test_budget_needs_budget(model):
    with pytest.raises(ConfigError):
        run_forecast(model, ForecastConfig(method="budget"))


def test_unknown_method(model):
    with pytest.raises(ConfigError):
        run_forecast(model, ForecastConfig(method="magic"))


def test_forecast_rejects_invalid_model(model):
    bad = replace(model, priority_scale=0)
    with pytest.raises(ValidationError):
        run_forecast(bad)


def test_forced_pipeline():
    tree = RequirementTree.from_nested({"id": "S", "children": [{"id": "x"}]})
    g = AlternativeGroup("g", "S", (Alternative("up", "g", Transition("x", 1, 2), 1, 1, 1),))
    m = Model(tree, (GenerationSnapshot(1, {"x": 1}),), (g,))
    (r,) = run_forecast(m).results
    assert r.snapshot.levels == {"x": 2}


def test_render_text(model):
    text = render_report(run_forecast(model), "text")
    blocks = text.split("\n\n")[1:]
    assert len(blocks) == 2
    assert "part D: Db3 * Dh3 * Dt2  N = (3;2,1,0)" in blocks[0]
    assert "part D: Db3 * Dh3 * Dt3  N = (2;3,0,0)" in blocks[1]
    assert "levels: T2 Q3 W2 J3 R2 H2 V3 E3 M3 L2 F2 K3 C1 U2 Z3" in blocks[0]
    assert "\x1b[" not in text
    assert "\x1b[" in render_report(run_forecast(model), "text", color=True)


def test_render_json(model):
    report = run_forecast(model)
    out = render_report(report, "json")
    assert out == render_report(report, "json")
    doc = json.loads(out)
    assert doc["basicGeneration"] == 4
    assert [r["levels"] for r in doc["results"]] == [SF1, SF2]
    assert doc["results"][1]["parts"][-1] == {
        "node": "D", "quality": {"n": [3, 0, 0], "w": 2},
        "selection": {"Db": "Db3", "Dh": "Dh3", "Dt": "Dt3"}}


def test_render_budget(model):
    report = run_forecast(model, ForecastConfig(method="budget", budget="9.0"))
    doc = json.loads(render_report(report, "json"))
    assert doc["results"][0]["totalProfit"] == 14.0
    assert "profit = 14.0" in render_report(report)


def test_render_empty():
    doc = json.loads(render_report(ForecastReport(1, "hmmd"), "json"))
    assert doc["results"] == []
    assert "no feasible result" in render_report(ForecastReport(1, "hmmd"))
