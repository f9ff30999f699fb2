"""Bundled example: requirements to a communication network over four generations.

The tree has parts A (user), B (system: basic criteria I, dynamic
criteria Y), C (mobility, a single leaf) and D (evolution).  Generation 4
is the base for forecasting; six alternative groups describe prospective
improvements of it, with compatibility estimates inside parts B and D.
"""
from __future__ import annotations

import json
from decimal import Decimal
from importlib import resources

from .evolution import ChangeOperation, ChangeSet, OpKind
from .io import parse_model
from .model import Model


def _read(name: str) -> str:
    return resources.files("morpho").joinpath("data", name).read_text(encoding="utf-8")


def network_model_text() -> str:
    return _read("network_requirements.json")


def load_network_model() -> Model:
    return parse_model(network_model_text())


def network_change_tables() -> list[ChangeSet]:
    """Expert-estimated change sets between consecutive generations 1..4."""
    out = []
    for cs in json.loads(_read("network_changes.json"), parse_float=Decimal):
        ops = []
        for o in cs["operations"]:
            kind = OpKind.ADD_DA if o["from"] == 0 else OpKind.CHANGE_DA
            ops.append(ChangeOperation(kind, o["leaf"], o["from"], o["to"], o["cost"], o["profit"]))
        out.append(ChangeSet(cs["from"], cs["to"], tuple(ops)))
    return out


def change_annotations(sets: list[ChangeSet]) -> dict[tuple, tuple[Decimal, Decimal]]:
    """``identity -> (cost, profit)`` for every estimated operation in ``sets``."""
    return {op.identity: (op.cost, op.profit)
            for cs in sets for op in cs.operations if op.cost is not None}
