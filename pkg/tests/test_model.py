from dataclasses import replace

import pytest

from morpho.errors import ReferenceMismatchError
from morpho.model import (Alternative, AlternativeGroup, CompatibilityTable,
                          GenerationSnapshot, Model, RequirementNode,
                          RequirementTree, Transition, leaf_level,
                          validate_model)


def codes(model):
    return sorted(v.code for v in validate_model(model))


def small_model(**kw):
    tree = RequirementTree.from_nested(
        {"id": "S", "children": [{"id": "P", "children": [{"id": "x"}, {"id": "y"}]},
                                 {"id": "z"}]})
    groups = (
        AlternativeGroup("g1", "P", (Alternative("a1", "g1"),
                                     Alternative("a2", "g1", Transition("x", 0, 1), 1, 2, 1))),
        AlternativeGroup("g2", "S", (Alternative("b1", "g2"),
                                     Alternative("b2", "g2", Transition("z", 0, 2), 1, 1, 2))),
    )
    defaults = dict(tree=tree, generations=(GenerationSnapshot(1, {"x": 1}),),
                    groups=groups, compat=CompatibilityTable({("a1", "b1"): 2}))
    defaults.update(kw)
    return Model(**defaults)


def test_network_model_is_valid(model):
    assert validate_model(model) == []


def test_tree_shape(model):
    assert model.tree.leaves == tuple("TQWJRHVEMLFKCUZ")
    assert model.tree.composites == ("S", "A", "B", "I", "Y", "D")
    assert model.tree.is_leaf("C")


def test_leaf_level_examples(model):
    g1 = model.generation(1)
    assert leaf_level(g1, "T", model.tree) == 1
    assert leaf_level(g1, "V", model.tree) == 0
    assert leaf_level(GenerationSnapshot(7), "Z") == 0


def test_leaf_level_unknown_leaf(model):
    with pytest.raises(ReferenceMismatchError):
        leaf_level(model.generation(1), "nope", model.tree)
    with pytest.raises(ReferenceMismatchError):
        leaf_level(model.generation(1), "A", model.tree)  # composite, not a leaf


def test_snapshot_drops_zero_levels():
    assert GenerationSnapshot(1, {"a": 0, "b": 2}) == GenerationSnapshot(1, {"b": 2})


def test_small_model_valid():
    assert codes(small_model()) == []


def test_asymmetric_compat_reported_once():
    m = small_model(compat=CompatibilityTable({("a1", "b1"): 2, ("b1", "a1"): 3}))
    assert codes(m) == ["compat-asymmetric"]


def test_priority_out_of_range():
    m = small_model()
    g1 = m.groups[0]
    bad = replace(g1, alternatives=(g1.alternatives[0], replace(g1.alternatives[1], priority=4)))
    assert codes(replace(m, groups=(bad, m.groups[1]))) == ["priority-range"]


@pytest.mark.parametrize("mutate, expected", [
    (lambda m: replace(m, compat=CompatibilityTable({("a1", "a2"): 1})), ["compat-same-group"]),
    (lambda m: replace(m, compat=CompatibilityTable({("a1", "b1"): 5})), ["compat-range"]),
    (lambda m: replace(m, compat=CompatibilityTable({("a1", "q"): 1})), ["compat-unknown"]),
    (lambda m: replace(m, compat=CompatibilityTable({}, default=4)), ["compat-range"]),
    (lambda m: replace(m, generations=(GenerationSnapshot(2), GenerationSnapshot(1))),
     ["generation-order"]),
    (lambda m: replace(m, generations=(GenerationSnapshot(1, {"ghost": 1}),)), ["unknown-leaf"]),
    (lambda m: replace(m, generations=(GenerationSnapshot(1, {"x": 4}),)), ["level-range"]),
    (lambda m: replace(m, generations=(GenerationSnapshot(0),)), ["generation-index"]),
    (lambda m: replace(m, groups=m.groups + (AlternativeGroup("g3", "nowhere", ()),)),
     ["empty-group", "unknown-node"]),
    (lambda m: replace(m, groups=(m.groups[0], m.groups[0])),
     ["compat-unknown", "duplicate-alternative", "duplicate-alternative", "duplicate-group"]),
    (lambda m: replace(m, priority_scale=1), ["priority-range"]),
])
def test_violations(mutate, expected):
    assert codes(mutate(small_model())) == expected


def test_transition_violations():
    m = small_model()
    g = AlternativeGroup("g3", "S", (Alternative("c1", "g3", Transition("P", 1, 1), -1, 0),
                                     Alternative("c2", "gX", Transition("x", 0, 9))))
    assert codes(replace(m, groups=m.groups + (g,))) == [
        "alternative-group", "level-range", "negative-estimate", "null-transition", "unknown-leaf"]


def test_tree_violations():
    nodes = (RequirementNode("S", children=("P", "Q")), RequirementNode("P", children=("S",)),
             RequirementNode("Q", kind="composite"), RequirementNode("orphan"),
             RequirementNode("orphan"), RequirementNode("L", kind="leaf", children=("Q",)))
    m = Model(RequirementTree("S", nodes))
    found = codes(m)
    for code in ("not-a-tree", "empty-composite", "duplicate-node", "unreachable",
                 "leaf-children"):
        assert code in found, code
    m2 = Model(RequirementTree("S", (RequirementNode("S", children=("ghost",)),)))
    assert "dangling-child" in codes(m2)
    assert codes(Model(RequirementTree("nope", (RequirementNode("S"),)))) == ["missing-root"]


def test_compat_lookup_is_symmetric():
    t = CompatibilityTable({("a", "b"): 1}, default=3)
    assert t.value("a", "b") == t.value("b", "a") == 1
    assert t.value("a", "c") == 3
    assert t.explicit("c", "a") is None
