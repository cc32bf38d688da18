"""Labeled unranked trees, kept normalized at all times.

A tree value is either a string leaf (:class:`Str`) or a non-empty hedge of
labeled nodes (:class:`Nodes`). The two absorption laws are built into
:func:`concat`: adjacent strings merge, and a string next to a node vanishes.
Because no other constructor can produce a mixed sequence, structural
equality is equality up to those laws.

Two text forms are supported. The s-expression form mirrors the usual
notation (``#Mul[#Int['123'] #Int['45']]``); JSON uses
``{"label": L, "children": [...]}`` objects with plain strings as leaves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Union

from .errors import FormatError


@dataclass(frozen=True)
class Str:
    text: str = ""

    def __repr__(self):
        return f"Str({self.text!r})"


@dataclass(frozen=True)
class Node:
    label: str
    children: "Tree"


@dataclass(frozen=True)
class Nodes:
    items: tuple

    def __post_init__(self):
        if not self.items:
            raise ValueError("Nodes needs at least one node; use Str('') for the empty tree")
        if not all(isinstance(n, Node) for n in self.items):
            raise TypeError("Nodes holds Node values only")

    def __len__(self):
        return len(self.items)

    def __iter__(self):
        return iter(self.items)


Tree = Union[Str, Nodes]

EMPTY = Str("")


def concat(v1: Tree, v2: Tree) -> Tree:
    if isinstance(v1, Str):
        if isinstance(v2, Str):
            return Str(v1.text + v2.text)
        return v2
    if isinstance(v2, Str):
        return v1
    return Nodes(v1.items + v2.items)


def concat_all(values: Iterable[Tree]) -> Tree:
    """Fold :func:`concat` over ``values`` in one pass."""
    texts, nodes = [], []
    for v in values:
        if isinstance(v, Str):
            if not nodes:
                texts.append(v.text)
        else:
            nodes.extend(v.items)
    return Nodes(tuple(nodes)) if nodes else Str("".join(texts))


def make_node(label: str, v: Tree) -> Nodes:
    return Nodes((Node(label, v),))


def node(label: str, *children) -> Nodes:
    """Test and REPL shorthand: ``node("Mul", node("Int", "1"), ...)``.

    String arguments become leaves; with no children the node holds ``''``.
    """
    parts = [Str(c) if isinstance(c, str) else c for c in children]
    return make_node(label, concat_all(parts))


def count_nodes(v: Tree) -> int:
    if isinstance(v, Str):
        return 0
    return sum(1 + count_nodes(n.children) for n in v.items)


def labels_of(v: Tree) -> set:
    if isinstance(v, Str):
        return set()
    out = set()
    for n in v.items:
        out.add(n.label)
        out |= labels_of(n.children)
    return out


# -- s-expressions ----------------------------------------------------------

_SEXPR_ESCAPES = {"\\": "\\\\", "'": "\\'", "\n": "\\n", "\t": "\\t", "\r": "\\r"}
_SEXPR_UNESCAPES = {"\\": "\\", "'": "'", "n": "\n", "t": "\t", "r": "\r"}


def _quote(text):
    return "'" + "".join(_SEXPR_ESCAPES.get(c, c) for c in text) + "'"


def to_sexpr(v: Tree) -> str:
    if isinstance(v, Str):
        return _quote(v.text)
    return " ".join(f"#{n.label}[{to_sexpr(n.children)}]" for n in v.items)


class _SexprReader:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def fail(self, message):
        raise FormatError(f"{message} at offset {self.pos}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def tree(self, closer):
        self.skip()
        if self.text.startswith("'", self.pos):
            leaf = self.string()
            self.skip()
            return leaf
        items = []
        while True:
            self.skip()
            if self.pos >= len(self.text) or self.text[self.pos] == closer:
                break
            items.append(self.node())
        if not items:
            self.fail("expected a node or a quoted string")
        return Nodes(tuple(items))

    def node(self):
        if not self.text.startswith("#", self.pos):
            self.fail("expected '#'")
        start = self.pos = self.pos + 1
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        label = self.text[start:self.pos]
        if not label:
            self.fail("expected a label")
        if not self.text.startswith("[", self.pos):
            self.fail("expected '['")
        self.pos += 1
        children = self.tree("]")
        if not self.text.startswith("]", self.pos):
            self.fail("expected ']'")
        self.pos += 1
        return Node(label, children)

    def string(self):
        self.pos += 1
        out = []
        while True:
            if self.pos >= len(self.text):
                self.fail("unterminated string")
            c = self.text[self.pos]
            if c == "'":
                self.pos += 1
                return Str("".join(out))
            if c == "\\":
                esc = self.text[self.pos + 1:self.pos + 2]
                if esc not in _SEXPR_UNESCAPES:
                    self.fail("bad escape")
                out.append(_SEXPR_UNESCAPES[esc])
                self.pos += 2
            else:
                out.append(c)
                self.pos += 1


def from_sexpr(text: str) -> Tree:
    reader = _SexprReader(text)
    v = reader.tree("")
    reader.skip()
    if reader.pos != len(text):
        reader.fail("trailing characters")
    return v


# -- JSON -------------------------------------------------------------------

def to_data(v: Tree):
    """Plain-data form: a string, one node object, or a list of node objects."""
    if isinstance(v, Str):
        return v.text
    objs = [_node_data(n) for n in v.items]
    return objs[0] if len(objs) == 1 else objs


def _node_data(n: Node):
    if isinstance(n.children, Str):
        children = [n.children.text]
    else:
        children = [_node_data(c) for c in n.children.items]
    return {"label": n.label, "children": children}


def from_data(data) -> Tree:
    if isinstance(data, str):
        return Str(data)
    if isinstance(data, dict):
        return Nodes((_data_node(data),))
    if isinstance(data, list) and data:
        return Nodes(tuple(_data_node(d) for d in data))
    raise FormatError(f"not a tree: {data!r}")


def _data_node(data) -> Node:
    if not isinstance(data, dict) or set(data) != {"label", "children"}:
        raise FormatError(f"not a node object: {data!r}")
    kids = data["children"]
    if not isinstance(kids, list) or not kids:
        raise FormatError("children must be a non-empty list")
    if len(kids) == 1 and isinstance(kids[0], str):
        return Node(data["label"], Str(kids[0]))
    return Node(data["label"], Nodes(tuple(_data_node(k) for k in kids)))


def to_json(v: Tree, indent=None) -> str:
    return json.dumps(to_data(v), indent=indent, ensure_ascii=False)


def from_json(text: str) -> Tree:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(str(exc)) from None
    return from_data(data)


def to_text(v: Tree, indent="  ") -> str:
    """Indented outline, one node per line."""
    lines = []

    def emit(t, depth):
        if isinstance(t, Str):
            lines.append(indent * depth + _quote(t.text))
            return
        for n in t.items:
            if isinstance(n.children, Str):
                lines.append(f"{indent * depth}#{n.label} {_quote(n.children.text)}")
            else:
                lines.append(f"{indent * depth}#{n.label}")
                emit(n.children, depth + 1)

    emit(v, 0)
    return "\n".join(lines)


def serialize(v: Tree, format: str = "sexpr") -> str:
    if format == "sexpr":
        return to_sexpr(v)
    if format == "json":
        return to_json(v)
    if format == "text":
        return to_text(v)
    raise ValueError(f"unknown tree format: {format!r}")


def deserialize(text: str, format: str = "sexpr") -> Tree:
    if format == "sexpr":
        return from_sexpr(text)
    if format == "json":
        return from_json(text)
    raise ValueError(f"no reader for tree format: {format!r}")
