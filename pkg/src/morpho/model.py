"""Morphological data model: requirement trees, generations, alternatives.

All types are frozen dataclasses.  Mapping fields are plain dicts that the
library never mutates after construction; treat them as read-only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from decimal import Decimal
from functools import cached_property
from itertools import combinations
from typing import Iterable, Iterator, Mapping

from .errors import ReferenceMismatchError

MAX_COMPAT = 3
LEAF = "leaf"
COMPOSITE = "composite"


def to_decimal(value) -> Decimal:
    """Convert ints, strings and floats to Decimal without binary noise."""
    if isinstance(value, Decimal):
        return value
    if isinstance(value, float):
        return Decimal(repr(value))
    return Decimal(value)


@dataclass(frozen=True)
class RequirementNode:
    id: str
    label: str = ""
    children: tuple[str, ...] = ()
    kind: str = ""

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if not self.kind:
            object.__setattr__(self, "kind", COMPOSITE if self.children else LEAF)

    @property
    def is_leaf(self) -> bool:
        return self.kind == LEAF


@dataclass(frozen=True)
class RequirementTree:
    """Rooted tree of requirement nodes.

    ``nodes`` keeps declaration order and may contain duplicates or dangling
    child references; `validate_model` reports those instead of the
    constructor raising.
    """

    root: str
    nodes: tuple[RequirementNode, ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))

    @classmethod
    def from_nested(cls, spec: Mapping) -> "RequirementTree":
        """Build from ``{"id", "label", "children": [...]}`` nesting."""
        nodes: list[RequirementNode] = []

        def walk(d):
            kids = d.get("children") or []
            nodes.append(RequirementNode(d["id"], d.get("label", ""),
                                         tuple(k["id"] for k in kids)))
            for k in kids:
                walk(k)

        walk(spec)
        return cls(spec["id"], tuple(nodes))

    def to_nested(self, node_id: str | None = None) -> dict:
        node = self[node_id or self.root]
        out = {"id": node.id, "label": node.label}
        if node.children:
            out["children"] = [self.to_nested(c) for c in node.children]
        return out

    @cached_property
    def _index(self) -> dict[str, RequirementNode]:
        index: dict[str, RequirementNode] = {}
        for n in self.nodes:
            index.setdefault(n.id, n)
        return index

    def __getitem__(self, node_id: str) -> RequirementNode:
        try:
            return self._index[node_id]
        except KeyError:
            raise ReferenceMismatchError(f"unknown node {node_id!r}") from None

    def __contains__(self, node_id) -> bool:
        return node_id in self._index

    def preorder(self, start: str | None = None) -> Iterator[RequirementNode]:
        """Pre-order walk; tolerates cycles and dangling ids by skipping them."""
        seen: set[str] = set()
        stack = [start or self.root]
        while stack:
            nid = stack.pop()
            if nid in seen or nid not in self._index:
                continue
            seen.add(nid)
            node = self._index[nid]
            yield node
            stack.extend(reversed(node.children))

    @cached_property
    def leaves(self) -> tuple[str, ...]:
        return tuple(n.id for n in self.preorder() if n.is_leaf)

    @cached_property
    def composites(self) -> tuple[str, ...]:
        return tuple(n.id for n in self.preorder() if not n.is_leaf)

    @cached_property
    def parents(self) -> dict[str, str]:
        return {c: n.id for n in self.preorder() for c in n.children}

    def is_leaf(self, node_id: str) -> bool:
        return self[node_id].is_leaf

    def leaves_under(self, node_id: str) -> tuple[str, ...]:
        return tuple(n.id for n in self.preorder(node_id) if n.is_leaf)


@dataclass(frozen=True)
class GenerationSnapshot:
    """Leaf satisfiability levels of one system generation.

    Zero levels are dropped on construction: an absent leaf *is* level 0.
    """

    index: int
    levels: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        object.__setattr__(self, "levels",
                           {k: int(v) for k, v in self.levels.items() if v != 0})

    def level(self, leaf: str) -> int:
        return self.levels.get(leaf, 0)


def leaf_level(snapshot: GenerationSnapshot, leaf: str,
               tree: RequirementTree | None = None) -> int:
    """Level of ``leaf`` in ``snapshot``; 0 when the snapshot omits it.

    With ``tree`` given, a leaf id the tree does not know is an error.
    """
    if tree is not None and (leaf not in tree or not tree.is_leaf(leaf)):
        raise ReferenceMismatchError(f"{leaf!r} is not a leaf of the requirement tree")
    return snapshot.level(leaf)


@dataclass(frozen=True)
class Transition:
    leaf: str
    from_level: int
    to_level: int

    def __str__(self):
        return f"{self.leaf}{self.from_level}->{self.leaf}{self.to_level}"


@dataclass(frozen=True)
class Alternative:
    id: str
    group: str
    action: Transition | None = None  # None means "no change"
    cost: Decimal = Decimal(0)
    profit: Decimal = Decimal(0)
    priority: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "cost", to_decimal(self.cost))
        object.__setattr__(self, "profit", to_decimal(self.profit))

    @property
    def is_none(self) -> bool:
        return self.action is None


@dataclass(frozen=True)
class AlternativeGroup:
    id: str
    node: str
    alternatives: tuple[Alternative, ...]
    mandatory: bool = False

    def __post_init__(self):
        object.__setattr__(self, "alternatives", tuple(self.alternatives))

    def __iter__(self):
        return iter(self.alternatives)

    def __len__(self):
        return len(self.alternatives)


@dataclass(frozen=True)
class CompatibilityTable:
    """Ordinal compatibilities between alternatives of different groups.

    ``entries`` is keyed by ordered pairs so that asymmetric input can be
    represented and reported; lookups accept either order.
    """

    entries: Mapping[tuple[str, str], int] = field(default_factory=dict)
    default: int = MAX_COMPAT

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, str, int]], default: int = MAX_COMPAT):
        return cls({(a, b): v for a, b, v in pairs}, default)

    def explicit(self, a: str, b: str) -> int | None:
        v = self.entries.get((a, b))
        return self.entries.get((b, a)) if v is None else v

    def value(self, a: str, b: str) -> int:
        v = self.explicit(a, b)
        return self.default if v is None else v


@dataclass(frozen=True)
class Model:
    tree: RequirementTree
    generations: tuple[GenerationSnapshot, ...] = ()
    groups: tuple[AlternativeGroup, ...] = ()
    compat: CompatibilityTable = field(default_factory=CompatibilityTable)
    priority_scale: int = 3
    max_level: int = 3

    def __post_init__(self):
        object.__setattr__(self, "generations", tuple(self.generations))
        object.__setattr__(self, "groups", tuple(self.groups))

    @cached_property
    def alternatives(self) -> dict[str, Alternative]:
        out: dict[str, Alternative] = {}
        for g in self.groups:
            for a in g.alternatives:
                out.setdefault(a.id, a)
        return out

    @cached_property
    def group_index(self) -> dict[str, AlternativeGroup]:
        return {g.id: g for g in self.groups}

    def alternative(self, alt_id: str) -> Alternative:
        try:
            return self.alternatives[alt_id]
        except KeyError:
            raise ReferenceMismatchError(f"unknown alternative {alt_id!r}") from None

    def generation(self, index: int) -> GenerationSnapshot:
        for g in self.generations:
            if g.index == index:
                return g
        raise ReferenceMismatchError(f"no generation with index {index}")

    def stored_priorities(self) -> dict[str, int]:
        return {a.id: a.priority for a in self.alternatives.values()
                if a.priority is not None}


@dataclass(frozen=True)
class Violation:
    code: str
    subject: str
    message: str

    def __str__(self):
        return f"[{self.code}] {self.subject}: {self.message}"


def validate_model(model: Model) -> list[Violation]:
    """Return every invariant violation found in ``model`` (empty if valid)."""
    out: list[Violation] = []
    add = lambda code, subj, msg: out.append(Violation(code, subj, msg))  # noqa: E731
    tree = model.tree
    max_level = model.max_level
    r = model.priority_scale

    # -- tree
    seen: set[str] = set()
    for n in tree.nodes:
        if n.id in seen:
            add("duplicate-node", n.id, "node id declared more than once")
        seen.add(n.id)
        if n.kind not in (LEAF, COMPOSITE):
            add("node-kind", n.id, f"unknown kind {n.kind!r}")
        elif n.kind == COMPOSITE and not n.children:
            add("empty-composite", n.id, "composite node has no children")
        elif n.kind == LEAF and n.children:
            add("leaf-children", n.id, "leaf node has children")
        for c in n.children:
            if c not in tree:
                add("dangling-child", n.id, f"child {c!r} does not exist")
    if tree.root not in tree:
        add("missing-root", tree.root, "root node does not exist")
    else:
        # each node must be reached exactly once from the root
        hits: dict[str, int] = {}
        stack = [tree.root]
        while stack:
            nid = stack.pop()
            hits[nid] = hits.get(nid, 0) + 1
            if hits[nid] > 1 or nid not in tree:
                continue
            stack.extend(tree[nid].children)
        for nid, k in hits.items():
            if k > 1:
                add("not-a-tree", nid, "node reachable along more than one path or on a cycle")
        for n in tree.nodes:
            if n.id not in hits:
                add("unreachable", n.id, "node not reachable from the root")
    leaves = {n.id for n in tree.nodes if n.is_leaf}

    # -- generations
    prev = None
    for g in model.generations:
        if g.index < 1:
            add("generation-index", f"generation {g.index}", "index must be positive")
        if prev is not None and g.index <= prev:
            add("generation-order", f"generation {g.index}",
                f"index not greater than previous ({prev})")
        prev = g.index
        for leaf, lvl in g.levels.items():
            if leaf not in leaves:
                add("unknown-leaf", leaf, f"generation {g.index} refers to unknown leaf {leaf!r}")
            if not 0 <= lvl <= max_level:
                add("level-range", f"{leaf}@{g.index}", f"level {lvl} outside [0, {max_level}]")

    # -- groups and alternatives
    if r < 1:
        add("priority-scale", "model", f"priority scale {r} must be >= 1")
    group_of: dict[str, str] = {}
    group_ids: set[str] = set()
    for g in model.groups:
        if g.id in group_ids:
            add("duplicate-group", g.id, "group id declared more than once")
        group_ids.add(g.id)
        if g.node not in tree:
            add("unknown-node", g.id, f"owning node {g.node!r} does not exist")
        if not g.alternatives:
            add("empty-group", g.id, "group has no alternatives")
        for a in g.alternatives:
            if a.id in group_of:
                add("duplicate-alternative", a.id, "alternative id used more than once")
            else:
                group_of[a.id] = g.id
            if a.group != g.id:
                add("alternative-group", a.id, f"declares group {a.group!r} but sits in {g.id!r}")
            if a.cost < 0 or a.profit < 0:
                add("negative-estimate", a.id, "cost and profit must be non-negative")
            if a.priority is not None and not 1 <= a.priority <= r:
                add("priority-range", a.id, f"priority {a.priority} outside [1, {r}]")
            t = a.action
            if t is not None:
                if t.leaf not in leaves:
                    add("unknown-leaf", a.id, f"transition on unknown leaf {t.leaf!r}")
                if t.from_level == t.to_level:
                    add("null-transition", a.id, "from-level equals to-level")
                for lvl in (t.from_level, t.to_level):
                    if not 0 <= lvl <= max_level:
                        add("level-range", a.id, f"level {lvl} outside [0, {max_level}]")

    # -- compatibility
    c = model.compat
    if not 0 <= c.default <= MAX_COMPAT:
        add("compat-range", "default", f"default {c.default} outside [0, {MAX_COMPAT}]")
    for (a, b), v in c.entries.items():
        subj = f"{a}/{b}"
        if not 0 <= v <= MAX_COMPAT:
            add("compat-range", subj, f"value {v} outside [0, {MAX_COMPAT}]")
        for x in (a, b):
            if x not in group_of:
                add("compat-unknown", subj, f"unknown alternative {x!r}")
        if a in group_of and group_of.get(a) == group_of.get(b):
            add("compat-same-group", subj, "pair lies within a single group")
        rev = c.entries.get((b, a))
        if rev is not None and rev != v and a < b:
            add("compat-asymmetric", subj, f"value {v} differs from reverse value {rev}")
    return out


def check_model(model: Model) -> Model:
    """Raise `ValidationError` unless ``model`` is valid; return it otherwise."""
    from .errors import ValidationError

    problems = validate_model(model)
    if problems:
        raise ValidationError(problems)
    return model


def cross_pairs(ids: Iterable[str]) -> Iterator[tuple[str, str]]:
    return combinations(ids, 2)
