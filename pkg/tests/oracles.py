"""Brute-force reference solvers, deliberately sharing no code with the library."""
from decimal import Decimal
from itertools import combinations, product


def pareto_compositions(groups, compat, priorities, r):
    """Enumerate, score and filter every composition.

    ``groups``: list of (group_id, [alt_id, ...]); ``compat(a, b)`` -> int.
    Returns a set of (frozenset of (group, alt) pairs, (w, n-tuple)).
    """
    scored = []
    for picks in product(*[alts for _, alts in groups]):
        vals = [compat(a, b) for a, b in combinations(picks, 2)]
        if any(v == 0 for v in vals):
            continue
        w = min(vals) if vals else 3
        n = tuple(sum(1 for a in picks if priorities[a] == k) for k in range(1, r + 1))
        sel = frozenset(zip([g for g, _ in groups], picks))
        scored.append((sel, (w, n)))

    def better(x, y):
        cx = [sum(x[1][:k + 1]) for k in range(r)]
        cy = [sum(y[1][:k + 1]) for k in range(r)]
        ge = x[0] >= y[0] and all(a >= b for a, b in zip(cx, cy))
        return ge and x != y

    return {(s, q) for s, q in scored if not any(better(q2, q) for _, q2 in scored)}


def knapsack_best_profit(items, budget):
    best = Decimal(0)
    for k in range(len(items) + 1):
        for sub in combinations(items, k):
            if sum((c for _, c, _ in sub), Decimal(0)) <= budget:
                best = max(best, sum((p for _, _, p in sub), Decimal(0)))
    return best


def mckp_best_profit(groups, budget):
    """``groups``: list of [(id, cost, profit), ...]; None if nothing fits."""
    best = None
    for picks in product(*groups):
        if sum((c for _, c, _ in picks), Decimal(0)) <= budget:
            p = sum((p for _, _, p in picks), Decimal(0))
            best = p if best is None or p > best else best
    return best
