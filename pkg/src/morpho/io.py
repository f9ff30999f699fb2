"""Model file (JSON) reading and writing.

Document layout::

    {
      "tree": {"id": "S", "label": "...", "children": [...]},
      "generations": [{"index": 1, "levels": {"T": 1, ...}}, ...],
      "groups": [{"id": "A", "node": "A", "mandatory": false,
                  "alternatives": [{"id": "A1", "action": "none",
                                    "cost": 0.0, "profit": 0.0, "priority": 1},
                                   {"id": "A2", "action": {"leaf": "W", "from": 2, "to": 3},
                                    "cost": 1.4, "profit": 1.6}]}],
      "compat": {"default": 3, "pairs": [{"a": "A1", "b": "B1", "value": 2}]},
      "priorityScale": 3
    }

``compat`` may also be given as a bare array of pairs together with a
top-level ``compatDefault``.  ``mandatory``, ``priority`` and ``levelScale``
are optional.
"""
from __future__ import annotations

import json
from decimal import Decimal

from .errors import ParseError, ValidationError
from .model import (Alternative, AlternativeGroup, CompatibilityTable,
                    GenerationSnapshot, Model, RequirementTree, Transition,
                    validate_model)


def format_decimal(d: Decimal) -> str:
    """Plain notation with at least one fractional digit: 2 -> "2.0"."""
    s = format(Decimal(d).normalize(), "f")
    return s if "." in s else s + ".0"


def dumps(obj, indent: int = 2, sort_keys: bool = False, _level: int = 0) -> str:
    """``json.dumps`` work-alike that writes Decimals as plain JSON numbers."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, Decimal):
        return format_decimal(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        keys = sorted(obj) if sort_keys else list(obj)
        body = ",\n".join(f"{pad}{json.dumps(str(k))}: "
                          f"{dumps(obj[k], indent, sort_keys, _level + 1)}" for k in keys)
        return "{\n" + body + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(isinstance(x, (int, str)) and not isinstance(x, bool) for x in obj):
            return "[" + ", ".join(json.dumps(x) for x in obj) + "]"
        body = ",\n".join(pad + dumps(x, indent, sort_keys, _level + 1) for x in obj)
        return "[\n" + body + "\n" + end + "]"
    return json.dumps(obj)


def model_to_dict(model: Model) -> dict:
    groups = []
    for g in model.groups:
        alts = []
        for a in g.alternatives:
            d = {"id": a.id,
                 "action": "none" if a.action is None else
                 {"leaf": a.action.leaf, "from": a.action.from_level, "to": a.action.to_level},
                 "cost": a.cost, "profit": a.profit}
            if a.priority is not None:
                d["priority"] = a.priority
            alts.append(d)
        gd = {"id": g.id, "node": g.node}
        if g.mandatory:
            gd["mandatory"] = True
        gd["alternatives"] = alts
        groups.append(gd)
    out = {
        "tree": model.tree.to_nested(),
        "generations": [{"index": s.index,
                         "levels": {leaf: s.levels[leaf] for leaf in model.tree.leaves
                                    if leaf in s.levels}}
                        for s in model.generations],
        "groups": groups,
        "compat": {"default": model.compat.default,
                   "pairs": [{"a": a, "b": b, "value": v}
                             for (a, b), v in model.compat.entries.items()]},
        "priorityScale": model.priority_scale,
    }
    if model.max_level != 3:
        out["levelScale"] = model.max_level
    return out


def dump_model(model: Model) -> str:
    return dumps(model_to_dict(model)) + "\n"


def parse_model(text: str, validate: bool = True) -> Model:
    """Parse a model document; raises `ParseError` or `ValidationError`."""
    if not text.strip():
        raise ParseError("empty document", 1, 1)
    try:
        doc = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None
    model = model_from_dict(doc)
    if validate:
        problems = validate_model(model)
        if problems:
            raise ValidationError(problems)
    return model


def _need(d, key, where, kind=None):
    if not isinstance(d, dict):
        raise ParseError(f"{where}: expected an object")
    if key not in d:
        raise ParseError(f"{where}: missing {key!r}")
    v = d[key]
    if kind is not None and (not isinstance(v, kind) or isinstance(v, bool)):
        raise ParseError(f"{where}.{key}: expected {getattr(kind, '__name__', kind)}")
    return v


def _number(v, where) -> Decimal:
    if isinstance(v, bool) or not isinstance(v, (int, Decimal)):
        raise ParseError(f"{where}: expected a number")
    return Decimal(v)


def _tree(d, where="tree"):
    _need(d, "id", where, str)
    kids = d.get("children", [])
    if not isinstance(kids, list):
        raise ParseError(f"{where}.children: expected an array")
    for i, k in enumerate(kids):
        _tree(k, f"{where}.children[{i}]")


def model_from_dict(doc) -> Model:
    if not isinstance(doc, dict):
        raise ParseError("top level: expected an object")
    tree_d = _need(doc, "tree", "top level", dict)
    _tree(tree_d)
    tree = RequirementTree.from_nested(tree_d)

    gens = []
    for i, g in enumerate(doc.get("generations", [])):
        where = f"generations[{i}]"
        idx = _need(g, "index", where, int)
        levels = _need(g, "levels", where, dict)
        for leaf, v in levels.items():
            if isinstance(v, bool) or not isinstance(v, int):
                raise ParseError(f"{where}.levels.{leaf}: expected an integer")
        gens.append(GenerationSnapshot(idx, levels))

    groups = []
    for i, g in enumerate(doc.get("groups", [])):
        where = f"groups[{i}]"
        gid = _need(g, "id", where, str)
        alts = []
        for j, a in enumerate(_need(g, "alternatives", where, list)):
            aw = f"{where}.alternatives[{j}]"
            act = _need(a, "action", aw)
            if act == "none":
                action = None
            elif isinstance(act, dict):
                action = Transition(_need(act, "leaf", aw + ".action", str),
                                    _need(act, "from", aw + ".action", int),
                                    _need(act, "to", aw + ".action", int))
            else:
                raise ParseError(f"{aw}.action: expected \"none\" or {{leaf, from, to}}")
            prio = a.get("priority")
            if prio is not None and (isinstance(prio, bool) or not isinstance(prio, int)):
                raise ParseError(f"{aw}.priority: expected an integer")
            alts.append(Alternative(_need(a, "id", aw, str), gid, action,
                                    _number(_need(a, "cost", aw), aw + ".cost"),
                                    _number(_need(a, "profit", aw), aw + ".profit"), prio))
        groups.append(AlternativeGroup(gid, _need(g, "node", where, str), tuple(alts),
                                       bool(g.get("mandatory", False))))

    c = doc.get("compat", {})
    if isinstance(c, list):
        pairs, default = c, doc.get("compatDefault", 3)
    elif isinstance(c, dict):
        pairs, default = c.get("pairs", []), c.get("default", 3)
    else:
        raise ParseError("compat: expected an object or an array")
    if isinstance(default, bool) or not isinstance(default, int):
        raise ParseError("compat.default: expected an integer")
    entries = {}
    for i, p in enumerate(pairs):
        where = f"compat[{i}]"
        key = (_need(p, "a", where, str), _need(p, "b", where, str))
        if key in entries:
            raise ParseError(f"{where}: pair {key} listed twice")
        entries[key] = _need(p, "value", where, int)

    return Model(tree, tuple(gens), tuple(groups), CompatibilityTable(entries, default),
                 _need(doc, "priorityScale", "top level", int) if "priorityScale" in doc else 3,
                 doc.get("levelScale", 3))
