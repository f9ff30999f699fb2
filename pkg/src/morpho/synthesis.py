"""Hierarchical morphological design over alternative groups.

A composition picks one alternative per group.  It is scored by a quality
vector ``(w; n_1..n_r)``: ``w`` is the weakest pairwise compatibility of the
picked alternatives and ``n_k`` counts picks with priority ``k``.  Quality
vectors are compared on ``w`` and on cumulative counts
``n_1, n_1+n_2, ...`` (more high-priority picks is better).
"""
from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import accumulate, combinations, product
from typing import Callable, Iterable, Mapping, Sequence

from .errors import IncompleteAssignmentError, ScaleMismatchError
from .model import MAX_COMPAT, AlternativeGroup, CompatibilityTable, Model


class Ordering(enum.Enum):
    BETTER = "strictly-better"
    WORSE = "strictly-worse"
    EQUAL = "equal"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class QualityVector:
    w: int
    n: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "n", tuple(self.n))

    @property
    def r(self) -> int:
        return len(self.n)

    def __str__(self):
        return f"({self.w};{','.join(map(str, self.n))})"


@dataclass(frozen=True)
class Composition:
    """One alternative per group, stored as (group, alternative) pairs sorted by group."""

    pairs: tuple[tuple[str, str], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple(sorted(self.pairs)))

    @classmethod
    def of(cls, selection: Mapping[str, str] | Iterable[tuple[str, str]]) -> "Composition":
        items = selection.items() if isinstance(selection, Mapping) else selection
        return cls(tuple(items))

    @property
    def selection(self) -> dict[str, str]:
        return dict(self.pairs)

    @property
    def alternatives(self) -> tuple[str, ...]:
        return tuple(a for _, a in self.pairs)

    def __len__(self):
        return len(self.pairs)

    def __str__(self):
        return "*".join(self.alternatives)


def feasible(c: Composition, compat: CompatibilityTable) -> bool:
    return all(compat.value(a, b) >= 1 for a, b in combinations(c.alternatives, 2))


def quality_vector(c: Composition, compat: CompatibilityTable,
                   priorities: Mapping[str, int], r: int = 3) -> QualityVector:
    alts = c.alternatives
    w = min((compat.value(a, b) for a, b in combinations(alts, 2)), default=MAX_COMPAT)
    return QualityVector(w, _counts((_priority(priorities, a) for a in alts), r))


def _priority(priorities, alt_id):
    try:
        return priorities[alt_id]
    except KeyError:
        raise IncompleteAssignmentError(f"no priority for alternative {alt_id!r}") from None


def _counts(prios: Iterable[int], r: int) -> tuple[int, ...]:
    n = [0] * r
    for p in prios:
        if not 1 <= p <= r:
            raise ValueError(f"priority {p} outside [1, {r}]")
        n[p - 1] += 1
    return tuple(n)


def dominates(a: QualityVector, b: QualityVector) -> Ordering:
    if a.r != b.r:
        raise ScaleMismatchError(f"quality vectors of length {a.r} and {b.r}")
    if a == b:
        return Ordering.EQUAL
    diffs = [a.w - b.w] + [x - y for x, y in zip(accumulate(a.n), accumulate(b.n))]
    if all(d >= 0 for d in diffs):
        return Ordering.BETTER
    if all(d <= 0 for d in diffs):
        return Ordering.WORSE
    return Ordering.INCOMPARABLE


def quality_layers(qvs: Sequence[QualityVector]) -> list[int]:
    """Pareto layer of each quality vector under `dominates` (1 = best)."""
    layer = [0] * len(qvs)
    remaining = set(range(len(qvs)))
    k = 0
    while remaining:
        k += 1
        front = [i for i in remaining if not any(
            dominates(qvs[j], qvs[i]) is Ordering.BETTER for j in remaining)]
        for i in front:
            layer[i] = k
        remaining.difference_update(front)
    return layer


# A component is (component id, [(candidate id, priority), ...]).
_Component = tuple[str, Sequence[tuple[str, int]]]


def _pareto(components: Sequence[_Component], compat: Callable[[str, str], int],
            r: int) -> list[tuple[Composition, QualityVector]]:
    scored = []
    for picks in product(*(cands for _, cands in components)):
        ids = [cid for cid, _ in picks]
        w = MAX_COMPAT
        for a, b in combinations(ids, 2):
            w = min(w, compat(a, b))
            if w == 0:
                break
        if w == 0:
            continue
        qv = QualityVector(w, _counts((p for _, p in picks), r))
        scored.append((Composition(tuple(zip((gid for gid, _ in components), ids))), qv))

    distinct = list(dict.fromkeys(qv for _, qv in scored))
    efficient = {q for q in distinct
                 if not any(dominates(o, q) is Ordering.BETTER for o in distinct)}
    kept = [(c, q) for c, q in scored if q in efficient]
    kept.sort(key=lambda cq: cq[0].pairs)
    return kept


def synthesize_node(groups: Sequence[AlternativeGroup], compat: CompatibilityTable,
                    priorities: Mapping[str, int], r: int = 3
                    ) -> list[tuple[Composition, QualityVector]]:
    """All Pareto-efficient feasible compositions of ``groups``.

    Compositions with an incompatible (0) pair are discarded before scoring.
    Compositions of equal quality are all kept.
    """
    if not groups:
        raise ValueError("need at least one group")
    components = []
    for g in groups:
        if not g.alternatives:
            raise ValueError(f"group {g.id!r} has no alternatives")
        components.append((g.id, [(a.id, _priority(priorities, a.id)) for a in g.alternatives]))
    return _pareto(components, compat.value, r)


@dataclass(frozen=True)
class PartResult:
    node: str
    composition: Composition  # leaf-level selection under ``node``
    quality: QualityVector


@dataclass(frozen=True)
class TreeResult:
    composition: Composition
    quality: QualityVector
    parts: tuple[PartResult, ...]

    def part(self, node: str) -> PartResult:
        for p in self.parts:
            if p.node == node:
                return p
        raise KeyError(node)


def synthesize_tree(model: Model, priorities: Mapping[str, int] | None = None,
                    default_compat: int = MAX_COMPAT) -> list[TreeResult]:
    """Bottom-up synthesis over the requirement tree.

    Each node combines the groups it owns with the Pareto sets of its child
    subtrees.  A child's efficient compositions act as alternatives of the
    parent, prioritised by their Pareto layer (capped at the scale).  Pairs
    involving such composite alternatives use an explicit table entry for
    their ids (``"<node>#<k>"``) if one exists, else ``default_compat``.
    A node without own groups and a single contributing child passes the
    child's set through unchanged.
    """
    if priorities is None:
        priorities = model.stored_priorities()
    r = model.priority_scale
    tree = model.tree
    owned: dict[str, list[AlternativeGroup]] = {}
    for g in model.groups:
        owned.setdefault(g.node, []).append(g)
    table = model.compat

    def compat(a: str, b: str) -> int:
        if a in model.alternatives and b in model.alternatives:
            return table.value(a, b)
        v = table.explicit(a, b)
        return default_compat if v is None else v

    def solve(node_id: str) -> list[TreeResult] | None:
        groups = owned.get(node_id, [])
        children = []
        for c in tree[node_id].children:
            res = solve(c)
            if res is not None:
                children.append((c, res))
        if not groups and not children:
            return None
        if not groups and len(children) == 1:
            return children[0][1]

        components: list[_Component] = []
        for g in groups:
            components.append((g.id, [(a.id, _priority(priorities, a.id)) for a in g.alternatives]))
        lifted: dict[str, TreeResult] = {}
        for child, res in children:
            layers = quality_layers([t.quality for t in res])
            cands = []
            for k, (t, layer) in enumerate(zip(res, layers), 1):
                cid = f"{child}#{k}"
                lifted[cid] = t
                cands.append((cid, min(layer, r)))
            components.append((f"{child}#", cands))

        out = []
        for comp, qv in _pareto(components, compat, r):
            selection: list[tuple[str, str]] = []
            parts: list[PartResult] = []
            for gid, cid in comp.pairs:
                if cid in lifted:
                    selection.extend(lifted[cid].composition.pairs)
                    parts.extend(lifted[cid].parts)
                else:
                    selection.append((gid, cid))
            full = Composition(tuple(selection))
            parts.append(PartResult(node_id, full, qv))
            out.append(TreeResult(full, qv, tuple(parts)))
        return out

    result = solve(tree.root)
    if result is None:
        raise ValueError("model has no alternative groups")
    order = {n.id: i for i, n in enumerate(tree.preorder())}
    result = [TreeResult(t.composition, t.quality,
                         tuple(sorted(t.parts, key=lambda p: order[p.node])))
              for t in result]
    result.sort(key=lambda t: t.composition.pairs)
    return result
