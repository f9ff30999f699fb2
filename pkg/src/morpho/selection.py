"""Exact budgeted selection: 0/1 knapsack and multiple-choice knapsack.

Costs are quantized to integers with an explicit ``scale`` (cost * scale
must be integral) and both solvers run a dynamic program over exact
quantized cost.  Profits stay Decimal, so optima are exact.

Ties are broken by lower total cost, then by id order: for the 0/1
knapsack, the selection that contains the earliest-id item at the first
point where two selections differ wins; for MCKP, the lexicographically
smaller tuple of picked ids (in group order) wins.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import Decimal
from typing import Iterable, Sequence

from .errors import InfeasibleError, QuantizationError
from .model import AlternativeGroup, to_decimal


@dataclass(frozen=True)
class BudgetSelection:
    chosen: tuple[str, ...]
    total_cost: Decimal
    total_profit: Decimal


def quantize(cost, scale: int, what: str = "cost") -> int:
    q = to_decimal(cost) * scale
    if q != q.to_integral_value():
        raise QuantizationError(f"{what}: {cost} * {scale} is not an integer")
    return int(q)


def _check_scale(scale):
    if not isinstance(scale, int) or scale < 1:
        raise ValueError(f"scale must be a positive integer, got {scale!r}")


def knapsack01(items: Iterable[tuple[str, object, object]], budget, scale: int = 10
               ) -> BudgetSelection:
    """Profit-maximal subset of ``(id, cost, profit)`` items within ``budget``."""
    _check_scale(scale)
    items = sorted((i, to_decimal(c), to_decimal(p)) for i, c, p in items)
    if len({i for i, _, _ in items}) != len(items):
        raise ValueError("item ids must be unique")
    for i, c, p in items:
        if c < 0 or p < 0:
            raise ValueError(f"item {i!r}: negative cost or profit")
    weights = [quantize(c, scale, f"item {i!r}") for i, c, _ in items]
    cap = int((to_decimal(budget) * scale).to_integral_value(rounding="ROUND_FLOOR"))
    if cap < 0:
        return BudgetSelection((), Decimal(0), Decimal(0))
    n = len(items)

    # best[j]: (profit, mask) over subsets with quantized cost exactly j.
    # Bit n-1-k marks item k, so a larger mask prefers earlier ids.
    best: list[tuple[Decimal, int] | None] = [None] * (cap + 1)
    best[0] = (Decimal(0), 0)
    for k, ((_, _, profit), wt) in enumerate(zip(items, weights)):
        bit = 1 << (n - 1 - k)
        for j in range(cap, wt - 1, -1):
            src = best[j - wt]
            if src is None:
                continue
            cand = (src[0] + profit, src[1] | bit)
            cur = best[j]
            if cur is None or cand > cur:
                best[j] = cand

    # profit desc, then cost asc, then mask desc
    j, (profit, mask) = max(((j, b) for j, b in enumerate(best) if b is not None),
                            key=lambda jb: (jb[1][0], -jb[0], jb[1][1]))
    chosen = tuple(items[k][0] for k in range(n) if mask >> (n - 1 - k) & 1)
    cost = sum((items[k][1] for k in range(n) if mask >> (n - 1 - k) & 1), Decimal(0))
    return BudgetSelection(chosen, cost, profit)


def mckp_select(groups: Sequence[AlternativeGroup], budget, scale: int = 10
                ) -> BudgetSelection:
    """Pick exactly one alternative per group, maximizing profit within ``budget``.

    Every group must offer a zero-cost option unless it is marked
    ``mandatory``.
    """
    _check_scale(scale)
    budget = to_decimal(budget)
    cap = int((budget * scale).to_integral_value(rounding="ROUND_FLOOR"))
    options = []
    for g in groups:
        if not g.alternatives:
            raise ValueError(f"group {g.id!r} has no alternatives")
        if not g.mandatory and not any(a.cost == 0 for a in g.alternatives):
            raise ValueError(f"group {g.id!r} has no zero-cost option and is not mandatory")
        options.append([(a.id, quantize(a.cost, scale, f"alternative {a.id!r}"), a.profit, a.cost)
                        for a in g.alternatives])

    min_cost = sum((min(o[3] for o in opts) for opts in options), Decimal(0))
    if cap < 0 or min_cost > budget:
        raise InfeasibleError(
            f"cheapest selection costs {min_cost}, budget is {budget}", min_cost)

    # best[j]: (profit, ids) with quantized cost exactly j; ids compared ascending
    best: dict[int, tuple[Decimal, tuple[str, ...]]] = {0: (Decimal(0), ())}
    for opts in options:
        nxt: dict[int, tuple[Decimal, tuple[str, ...]]] = {}
        for j, (profit, ids) in best.items():
            for aid, wt, p, _ in opts:
                k = j + wt
                if k > cap:
                    continue
                cand = (profit + p, ids + (aid,))
                cur = nxt.get(k)
                if cur is None or cand[0] > cur[0] or (cand[0] == cur[0] and cand[1] < cur[1]):
                    nxt[k] = cand
        best = nxt

    j, (profit, ids) = min(best.items(), key=lambda kv: (-kv[1][0], kv[0], kv[1][1]))
    cost = sum((o[3] for opts, aid in zip(options, ids) for o in opts if o[0] == aid), Decimal(0))
    return BudgetSelection(ids, cost, profit)
