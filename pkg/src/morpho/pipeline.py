"""Forecast pipeline: base selection, change application, reporting."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .errors import ConfigError, ReferenceMismatchError, StaleTransitionError
from .evolution import ChangeSet
from .io import dumps
from .model import (MAX_COMPAT, Alternative, GenerationSnapshot, Model,
                    Transition, check_model)
from .ranking import EXPLICIT, RankingStrategy, rank_model
from .selection import BudgetSelection, mckp_select
from .synthesis import (Composition, PartResult, QualityVector, feasible,
                        quality_vector, synthesize_tree)

HMMD = "hmmd"
BUDGET = "budget"

Selection = Union[Composition, BudgetSelection, ChangeSet, Iterable]


@dataclass(frozen=True)
class ForecastConfig:
    method: str = HMMD
    strategy: str = EXPLICIT
    budget: object = None
    scale: int = 10
    default_compat: int = MAX_COMPAT
    policy: object = "latest"


@dataclass(frozen=True)
class ForecastResult:
    selection: Composition | BudgetSelection
    quality: QualityVector | None
    snapshot: GenerationSnapshot
    parts: tuple[PartResult, ...] = ()


@dataclass(frozen=True)
class ForecastReport:
    basic_generation: int
    method: str
    results: tuple[ForecastResult, ...] = ()
    leaves: tuple[str, ...] = ()  # tree pre-order, used for rendering


def select_basic(model: Model, policy="latest") -> GenerationSnapshot:
    if not model.generations:
        raise ConfigError("model has no generations")
    if policy == "latest":
        return max(model.generations, key=lambda g: g.index)
    try:
        return model.generation(int(policy))
    except ReferenceMismatchError as e:
        raise ConfigError(str(e)) from None


def _transitions(selection: Selection, model: Model | None) -> list[Transition]:
    if isinstance(selection, ChangeSet):
        return [Transition(op.target, op.from_level, op.to_level)
                for op in selection.operations if op.kind.is_leaf_transition]
    if isinstance(selection, Composition):
        ids: Iterable = selection.alternatives
    elif isinstance(selection, BudgetSelection):
        ids = selection.chosen
    else:
        ids = selection
    out = []
    for x in ids:
        if isinstance(x, Transition):
            out.append(x)
            continue
        if isinstance(x, str):
            if model is None:
                raise ValueError("a model is needed to resolve alternative ids")
            x = model.alternative(x)
        if isinstance(x, Alternative):
            if x.action is not None:
                out.append(x.action)
        else:
            raise TypeError(f"cannot apply {x!r}")
    return out


def apply_changes(base: GenerationSnapshot, selection: Selection,
                  model: Model | None = None) -> GenerationSnapshot:
    """Write each selected transition's target level onto ``base``.

    The result's index is the change set's target generation, or
    ``base.index + 1`` for compositions and budget selections.  Only leaf
    transitions affect levels; part-level operations are implied by them.
    """
    levels = dict(base.levels)
    for t in _transitions(selection, model):
        if model is not None and (t.leaf not in model.tree or not model.tree.is_leaf(t.leaf)):
            raise ReferenceMismatchError(f"{t.leaf!r} is not a leaf of the requirement tree")
        current = levels.get(t.leaf, 0)
        if current != t.from_level:
            raise StaleTransitionError(
                f"leaf {t.leaf}: transition expects level {t.from_level}, found {current}")
        levels[t.leaf] = t.to_level
    index = selection.to_generation if isinstance(selection, ChangeSet) else base.index + 1
    return GenerationSnapshot(index, levels)


def run_forecast(model: Model, config: ForecastConfig = ForecastConfig()) -> ForecastReport:
    check_model(model)
    basic = select_basic(model, config.policy)
    strategy = RankingStrategy(config.strategy)
    priorities = rank_model(model, strategy)
    results = []
    if config.method == HMMD:
        for t in synthesize_tree(model, priorities, config.default_compat):
            results.append(ForecastResult(t.composition, t.quality,
                                          apply_changes(basic, t.composition, model), t.parts))
    elif config.method == BUDGET:
        if config.budget is None:
            raise ConfigError("budget method needs a budget")
        sel = mckp_select(model.groups, config.budget, config.scale)
        comp = Composition(tuple(zip((g.id for g in model.groups), sel.chosen)))
        q = (quality_vector(comp, model.compat, priorities, model.priority_scale)
             if feasible(comp, model.compat) else None)
        results.append(ForecastResult(sel, q, apply_changes(basic, sel, model)))
    else:
        raise ConfigError(f"unknown method {config.method!r}")
    return ForecastReport(basic.index, config.method, tuple(results), model.tree.leaves)


# -- rendering

def _qv_json(q: QualityVector | None):
    return None if q is None else {"w": q.w, "n": list(q.n)}


def report_to_dict(report: ForecastReport) -> dict:
    results = []
    for r in report.results:
        d: dict = {"quality": _qv_json(r.quality),
                   "levels": {leaf: r.snapshot.level(leaf) for leaf in report.leaves}
                   if report.leaves else dict(r.snapshot.levels)}
        if isinstance(r.selection, BudgetSelection):
            d["chosen"] = list(r.selection.chosen)
            d["totalCost"] = r.selection.total_cost
            d["totalProfit"] = r.selection.total_profit
        else:
            d["selection"] = r.selection.selection
            d["parts"] = [{"node": p.node, "selection": p.composition.selection,
                           "quality": _qv_json(p.quality)} for p in r.parts]
        results.append(d)
    return {"basicGeneration": report.basic_generation, "method": report.method,
            "results": results}


def _style(text: str, code: str, color: bool) -> str:
    return f"\x1b[{code}m{text}\x1b[0m" if color else text


def render_report(report: ForecastReport, fmt: str = "text", color: bool = False) -> str:
    if fmt == "json":
        return dumps(report_to_dict(report), sort_keys=True) + "\n"
    if fmt != "text":
        raise ValueError(f"unknown format {fmt!r}")
    lines = [_style(f"Forecast from generation {report.basic_generation} "
                    f"(method: {report.method})", "1", color)]
    if not report.results:
        lines.append("no feasible result")
    for i, r in enumerate(report.results, 1):
        lines.append("")
        if isinstance(r.selection, BudgetSelection):
            head = " * ".join(r.selection.chosen)
        else:
            head = str(r.selection).replace("*", " * ")
        lines.append(_style(f"Result {i}: {head}", "1;36", color))
        if r.quality is not None:
            lines.append(f"  N = {r.quality}")
        if isinstance(r.selection, BudgetSelection):
            lines.append(f"  cost = {r.selection.total_cost}, profit = {r.selection.total_profit}")
        for p in r.parts:
            alts = " * ".join(p.composition.alternatives)
            lines.append(f"  part {p.node}: {alts}  N = {p.quality}")
        leaves = report.leaves or tuple(r.snapshot.levels)
        lines.append("  levels: " + " ".join(f"{leaf}{r.snapshot.level(leaf)}" for leaf in leaves))
    return "\n".join(lines) + "\n"

