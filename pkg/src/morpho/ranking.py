"""Ordinal priorities for alternatives from their (cost, profit) estimates."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

from .errors import IncompleteAssignmentError
from .model import AlternativeGroup, Model

PROFIT_DESC = "profit-desc"
PARETO_LAYER = "pareto-layer"
EXPLICIT = "explicit"
STRATEGIES = (PROFIT_DESC, PARETO_LAYER, EXPLICIT)


@dataclass(frozen=True)
class RankingStrategy:
    kind: str = PROFIT_DESC
    # explicit strategy only; None means "use priorities stored on the alternatives"
    priorities: Mapping[str, int] | None = None

    def __post_init__(self):
        if self.kind not in STRATEGIES:
            raise ValueError(f"unknown ranking strategy {self.kind!r}")


def pareto_layers(items: Sequence[tuple]) -> list[int]:
    """Non-dominated sorting of (cost, profit) pairs; cost is minimized.

    Returns the layer of each item, 1 being the non-dominated front.
    """
    layer = [0] * len(items)
    remaining = set(range(len(items)))
    k = 0
    while remaining:
        k += 1
        front = [i for i in remaining
                 if not any(_dominated_by(items[i], items[j]) for j in remaining)]
        for i in front:
            layer[i] = k
        remaining.difference_update(front)
    return layer


def _dominated_by(a, b) -> bool:
    return b[0] <= a[0] and b[1] >= a[1] and (b[0] < a[0] or b[1] > a[1])


def assign_priorities(group: AlternativeGroup, strategy: RankingStrategy | str = PROFIT_DESC,
                      r: int = 3) -> dict[str, int]:
    if r < 1:
        raise ValueError("priority scale must be >= 1")
    if isinstance(strategy, str):
        strategy = RankingStrategy(strategy)
    alts = group.alternatives

    if strategy.kind == EXPLICIT:
        source = strategy.priorities
        out = {}
        for a in alts:
            p = a.priority if source is None else source.get(a.id)
            if p is None:
                raise IncompleteAssignmentError(f"no priority for alternative {a.id!r}")
            if not 1 <= p <= r:
                raise ValueError(f"priority {p} of {a.id!r} outside [1, {r}]")
            out[a.id] = p
        return out

    if strategy.kind == PARETO_LAYER:
        layers = pareto_layers([(a.cost, a.profit) for a in alts])
        return {a.id: min(k, r) for a, k in zip(alts, layers)}

    # profit-desc with competition ranking; "none" options pinned to the worst rank
    changes = [a for a in alts if not a.is_none]
    out = {}
    for a in alts:
        if a.is_none:
            out[a.id] = r
        else:
            better = sum(1 for b in changes if b.profit > a.profit)
            out[a.id] = min(1 + better, r)
    return out


def rank_model(model: Model, strategy: RankingStrategy | str = PROFIT_DESC) -> dict[str, int]:
    """Priorities for every alternative of every group in ``model``."""
    out: dict[str, int] = {}
    for g in model.groups:
        out.update(assign_priorities(g, strategy, model.priority_scale))
    return out
