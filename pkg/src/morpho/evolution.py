"""Change detection between generations and integration of change sets."""
from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from decimal import Decimal
from typing import Iterable, Mapping

from .errors import (ConflictingAnnotationError, DanglingAnnotationError,
                     ReferenceMismatchError, UnclassifiableChangeError)
from .model import (CompatibilityTable, GenerationSnapshot, Model,
                    RequirementTree, to_decimal)


class OpKind(enum.Enum):
    CHANGE_DA = "O1"
    DELETE_DA = "O2"
    ADD_DA = "O3"
    AGGREGATE_DAS = "O4"
    CHANGE_COMPAT = "O5"
    CHANGE_PART = "O6"
    DELETE_PART = "O7"
    ADD_PART = "O8"
    AGGREGATE_PARTS = "O9"
    CHANGE_CONFIGURATION = "O10"

    @property
    def is_leaf_transition(self) -> bool:
        return self in _LEAF_KINDS


_LEAF_KINDS = frozenset({OpKind.CHANGE_DA, OpKind.DELETE_DA, OpKind.ADD_DA})


@dataclass(frozen=True)
class ChangeOperation:
    """A typed change.

    For leaf kinds ``from_level``/``to_level`` are satisfiability levels;
    for CHANGE_COMPAT they hold the old and new compatibility values and
    ``target`` is the alternative pair.
    """

    kind: OpKind
    target: str | tuple[str, str]
    from_level: int | None = None
    to_level: int | None = None
    cost: Decimal | None = None
    profit: Decimal | None = None

    def __post_init__(self):
        if self.kind.is_leaf_transition:
            if self.from_level is None or self.to_level is None:
                raise ValueError(f"{self.kind.value} needs from/to levels")
            if self.from_level == self.to_level:
                raise ValueError(f"{self.target}: from-level equals to-level")
            if self.kind is OpKind.DELETE_DA and self.to_level != 0:
                raise ValueError("deletion must end at level 0")
            if self.kind is OpKind.ADD_DA and self.from_level != 0:
                raise ValueError("addition must start at level 0")
        for name in ("cost", "profit"):
            v = getattr(self, name)
            if v is not None:
                v = to_decimal(v)
                if v < 0:
                    raise ValueError(f"{name} must be non-negative")
                object.__setattr__(self, name, v)

    @property
    def identity(self) -> tuple:
        return (self.target, self.from_level, self.to_level)

    def __str__(self):
        if self.kind.is_leaf_transition:
            return f"{self.target}{self.from_level}->{self.target}{self.to_level}"
        return f"{self.kind.value}({self.target})"


@dataclass(frozen=True)
class ChangeSet:
    from_generation: int
    to_generation: int
    operations: tuple[ChangeOperation, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "operations", tuple(self.operations))

    def __len__(self):
        return len(self.operations)

    def __iter__(self):
        return iter(self.operations)

    def transitions(self) -> set[tuple[str, int, int]]:
        """(leaf, from, to) triples of the leaf-level operations."""
        return {(op.target, op.from_level, op.to_level)
                for op in self.operations if op.kind.is_leaf_transition}


@dataclass(frozen=True)
class Difference:
    """A raw structural difference, before typing.

    ``what`` is one of ``leaf-level``, ``node``, ``node-edit``, ``compat``,
    ``aggregate-das``, ``aggregate-parts`` or ``configuration``.  For
    ``node`` the before/after values are presence flags.
    """

    what: str
    subject: object
    before: object = None
    after: object = None


def classify_change(diff: Difference) -> OpKind:
    what = diff.what
    if what == "leaf-level":
        if diff.before == diff.after:
            raise ValueError(f"{diff.subject}: no level change")
        if diff.before == 0:
            return OpKind.ADD_DA
        if diff.after == 0:
            return OpKind.DELETE_DA
        return OpKind.CHANGE_DA
    if what == "node":
        if bool(diff.before) == bool(diff.after):
            raise ValueError(f"{diff.subject}: presence unchanged")
        return OpKind.ADD_PART if diff.after else OpKind.DELETE_PART
    if what == "node-edit":
        return OpKind.CHANGE_PART
    if what == "compat":
        return OpKind.CHANGE_COMPAT
    if what in ("aggregate-das", "aggregate-parts", "configuration"):
        raise UnclassifiableChangeError(
            f"{what} change on {diff.subject!r} cannot be classified automatically")
    raise ValueError(f"unknown difference type {what!r}")


def _tree_of(model_or_tree) -> RequirementTree:
    return model_or_tree.tree if isinstance(model_or_tree, Model) else model_or_tree


def diff_generations(prev: GenerationSnapshot, curr: GenerationSnapshot,
                     model: Model | RequirementTree) -> ChangeSet:
    """Typed operations turning ``prev`` into ``curr``, in tree pre-order."""
    tree = _tree_of(model)
    leaves = set(tree.leaves)
    for snap in (prev, curr):
        bad = sorted(set(snap.levels) - leaves)
        if bad:
            raise ReferenceMismatchError(
                f"generation {snap.index} refers to unknown leaves {bad}")

    active_before = {n: any(prev.level(l) for l in tree.leaves_under(n))
                     for n in tree.composites}
    ops = []
    for node in tree.preorder():
        if node.is_leaf:
            a, b = prev.level(node.id), curr.level(node.id)
            if a != b:
                kind = classify_change(Difference("leaf-level", node.id, a, b))
                ops.append(ChangeOperation(kind, node.id, a, b))
        else:
            was = active_before[node.id]
            now = any(curr.level(l) for l in tree.leaves_under(node.id))
            if was != now:
                ops.append(ChangeOperation(
                    classify_change(Difference("node", node.id, was, now)), node.id))
    return ChangeSet(prev.index, curr.index, tuple(ops))


def diff_compat(old: CompatibilityTable, new: CompatibilityTable,
                pairs: Iterable[tuple[str, str]]) -> list[ChangeOperation]:
    """Compatibility-change operations over the given alternative pairs."""
    ops = []
    for a, b in pairs:
        x, y = old.value(a, b), new.value(a, b)
        if x != y:
            ops.append(ChangeOperation(classify_change(Difference("compat", (a, b), x, y)),
                                       (a, b), x, y))
    return ops


def diff_trees(old: RequirementTree, new: RequirementTree) -> list[ChangeOperation]:
    """Part-level operations between two tree versions.

    Nodes are matched by id.  Reported in the pre-order of ``old`` (for
    deletions and edits) followed by additions in the pre-order of ``new``.
    """
    ops = []
    for n in old.preorder():
        if n.id not in new:
            ops.append(ChangeOperation(OpKind.DELETE_PART, n.id))
        elif (n.label, n.kind) != (new[n.id].label, new[n.id].kind):
            ops.append(ChangeOperation(classify_change(Difference("node-edit", n.id)), n.id))
    for n in new.preorder():
        if n.id not in old:
            ops.append(ChangeOperation(OpKind.ADD_PART, n.id))
    return ops


def aggregate_changes(sets: Iterable[ChangeSet],
                      annotations: Mapping[tuple, tuple] | None = None) -> ChangeSet:
    """Merge change sets into one general set and attach (cost, profit).

    ``annotations`` maps an operation identity ``(target, from, to)`` to a
    ``(cost, profit)`` pair.  Operations keep first-appearance order.
    """
    sets = list(sets)
    annotations = dict(annotations or {})
    merged: dict[tuple, ChangeOperation] = {}
    for cs in sets:
        for op in cs.operations:
            seen = merged.get(op.identity)
            if seen is None:
                merged[op.identity] = op
                continue
            if seen.kind is not op.kind:
                raise ConflictingAnnotationError(f"{op}: kinds {seen.kind.value}/{op.kind.value}")
            merged[op.identity] = _merge_estimates(seen, op.cost, op.profit)

    for key, (cost, profit) in annotations.items():
        if key not in merged:
            raise DanglingAnnotationError(f"annotation for absent operation {key!r}")
        merged[key] = _merge_estimates(merged[key], to_decimal(cost), to_decimal(profit))

    if sets:
        lo = min(cs.from_generation for cs in sets)
        hi = max(cs.to_generation for cs in sets)
    else:
        lo = hi = 0
    return ChangeSet(lo, hi, tuple(merged.values()))


def _merge_estimates(op: ChangeOperation, cost, profit) -> ChangeOperation:
    for name, new in (("cost", cost), ("profit", profit)):
        old = getattr(op, name)
        if old is not None and new is not None and old != new:
            raise ConflictingAnnotationError(f"{op}: {name} {old} vs {new}")
    return replace(op, cost=op.cost if cost is None else cost,
                   profit=op.profit if profit is None else profit)
