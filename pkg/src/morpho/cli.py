"""Command-line driver.

Exit codes: 0 success, 1 validation/config error, 2 parse error.
Text styling follows ``MORPHO_COLOR`` (``auto`` or ``never``); JSON output
is never styled.
"""
from __future__ import annotations

import argparse
import os
import sys
from decimal import Decimal, InvalidOperation

from . import __version__
from .errors import MorphoError, ParseError
from .evolution import diff_generations
from .io import dumps, parse_model
from .model import MAX_COMPAT, validate_model
from .pipeline import BUDGET, HMMD, ForecastConfig, render_report, run_forecast
from .ranking import EXPLICIT, STRATEGIES, RankingStrategy, rank_model
from .selection import mckp_select
from .synthesis import synthesize_tree


def _decimal(text):
    try:
        return Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a decimal number: {text!r}") from None


def _use_color(stream) -> bool:
    mode = os.environ.get("MORPHO_COLOR", "auto")
    return mode != "never" and stream.isatty()


def _load(path, validate=True):
    try:
        with open(path, encoding="utf-8") as f:
            text = f.read()
    except OSError as e:
        raise ParseError(f"cannot read {path}: {e.strerror}") from None
    return parse_model(text, validate=validate)


def _emit(args, data, text):
    if args.format == "json":
        sys.stdout.write(dumps(data, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_validate(args):
    model = _load(args.model, validate=False)
    problems = validate_model(model)
    text = "valid" if not problems else "\n".join(str(p) for p in problems)
    _emit(args, {"valid": not problems,
                 "violations": [{"code": p.code, "subject": p.subject, "message": p.message}
                                for p in problems]}, text)
    return 1 if problems else 0


def cmd_diff(args):
    model = _load(args.model)
    to = args.to if args.to is not None else args.from_ + 1
    cs = diff_generations(model.generation(args.from_), model.generation(to), model)
    ops = [{"kind": op.kind.value, "target": op.target,
            "from": op.from_level, "to": op.to_level} for op in cs]
    text = "\n".join([f"generation {cs.from_generation} -> {cs.to_generation}: {len(cs)} operations"]
                     + [f"  {op.kind.value:<3} {op}" for op in cs])
    _emit(args, {"from": cs.from_generation, "to": cs.to_generation, "operations": ops}, text)
    return 0


def cmd_rank(args):
    model = _load(args.model)
    prios = rank_model(model, RankingStrategy(args.strategy))
    data = {g.id: {a.id: prios[a.id] for a in g.alternatives} for g in model.groups}
    lines = []
    for g in model.groups:
        lines.append(f"{g.id}: " + ", ".join(f"{a}({p})" for a, p in data[g.id].items()))
    _emit(args, {"strategy": args.strategy, "priorities": data}, "\n".join(lines))
    return 0


def cmd_synth(args):
    model = _load(args.model)
    prios = rank_model(model, RankingStrategy(args.strategy))
    results = synthesize_tree(model, prios, args.default_compat)
    data = [{"selection": t.composition.selection,
             "quality": {"w": t.quality.w, "n": list(t.quality.n)},
             "parts": [{"node": p.node, "quality": {"w": p.quality.w, "n": list(p.quality.n)}}
                       for p in t.parts]} for t in results]
    lines = [f"{len(results)} Pareto-efficient composition(s)"]
    for i, t in enumerate(results, 1):
        parts = ", ".join(f"{p.node}{p.quality}" for p in t.parts)
        lines.append(f"  {i}. {' * '.join(t.composition.alternatives)}  N = {t.quality}  [{parts}]")
    _emit(args, {"results": data}, "\n".join(lines))
    return 0


def cmd_select(args):
    model = _load(args.model)
    sel = mckp_select(model.groups, args.budget, args.scale)
    text = (f"chosen: {' * '.join(sel.chosen)}\n"
            f"cost: {sel.total_cost}  profit: {sel.total_profit}")
    _emit(args, {"chosen": list(sel.chosen), "totalCost": sel.total_cost,
                 "totalProfit": sel.total_profit}, text)
    return 0


def cmd_forecast(args):
    model = _load(args.model)
    policy = args.basic if args.basic == "latest" else int(args.basic)
    report = run_forecast(model, ForecastConfig(args.method, args.strategy, args.budget,
                                                args.scale, args.default_compat, policy))
    sys.stdout.write(render_report(report, args.format,
                                   color=args.format == "text" and _use_color(sys.stdout)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", required=True, metavar="PATH", help="model JSON file")
    common.add_argument("--format", choices=("text", "json"), default="text")

    p = argparse.ArgumentParser(prog="morpho", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"morpho {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="check model invariants")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("diff", parents=[common], help="change operations between generations")
    s.add_argument("--from", dest="from_", type=int, required=True, metavar="K")
    s.add_argument("--to", type=int, metavar="K", help="default: K+1")
    s.set_defaults(func=cmd_diff)

    s = sub.add_parser("rank", parents=[common], help="assign ordinal priorities")
    s.add_argument("--strategy", choices=STRATEGIES, default="profit-desc")
    s.set_defaults(func=cmd_rank)

    s = sub.add_parser("synth", parents=[common], help="hierarchical Pareto synthesis")
    s.add_argument("--default-compat", type=int, default=MAX_COMPAT, metavar="N")
    s.add_argument("--strategy", choices=STRATEGIES, default=EXPLICIT)
    s.set_defaults(func=cmd_synth)

    s = sub.add_parser("select", parents=[common], help="multiple-choice knapsack selection")
    s.add_argument("--budget", type=_decimal, required=True, metavar="X")
    s.add_argument("--scale", type=int, default=10, metavar="N")
    s.set_defaults(func=cmd_select)

    s = sub.add_parser("forecast", parents=[common], help="run the full forecast pipeline")
    s.add_argument("--method", choices=(HMMD, BUDGET), default=HMMD)
    s.add_argument("--budget", type=_decimal, metavar="X")
    s.add_argument("--scale", type=int, default=10, metavar="N")
    s.add_argument("--strategy", choices=STRATEGIES, default=EXPLICIT)
    s.add_argument("--default-compat", type=int, default=MAX_COMPAT, metavar="N")
    s.add_argument("--basic", default="latest", metavar="latest|K")
    s.set_defaults(func=cmd_forecast)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as e:
        print(f"morpho: parse error: {e}", file=sys.stderr)
        return 2
    except (MorphoError, ValueError) as e:
        print(f"morpho: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
