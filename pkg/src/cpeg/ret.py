"""Regular expression types over hedges, and tree membership.

A type is one of ``EmptySeq``, ``Concat``, ``Union``, ``Star``, ``Label`` or
``Var``. Variables are bound in a single global set: an ordered mapping from
variable name to body.

Membership of a hedge of nodes is decided as a least fixpoint over spans of
the hedge, so it terminates for every global set, guarded or not. A node
matches ``L[T]`` when its label is ``L`` and its children match ``T``. String
pieces between nodes are absorbed by the tree equations and so match any
type that admits some string.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
import typing
from typing import Mapping

import networkx as nx

from ._stack import stack_room
from .errors import FormatError, UnboundTypeVariableError, UnguardedTypeError
from .trees import Nodes, Str, Tree


@dataclass(frozen=True)
class EmptySeq:
    pass


@dataclass(frozen=True)
class Concat:
    left: "RegularExpressionType"
    right: "RegularExpressionType"


@dataclass(frozen=True)
class Union:
    left: "RegularExpressionType"
    right: "RegularExpressionType"


@dataclass(frozen=True)
class Star:
    body: "RegularExpressionType"


@dataclass(frozen=True)
class Label:
    label: str
    body: "RegularExpressionType"


@dataclass(frozen=True)
class Var:
    name: str


RegularExpressionType = typing.Union[EmptySeq, Concat, Union, Star, Label, Var]
GlobalSet = Mapping[str, RegularExpressionType]

EMPTY = EmptySeq()


def concat(*types):
    if not types:
        return EMPTY
    result = types[-1]
    for t in reversed(types[:-1]):
        result = Concat(t, result)
    return result


def union(*types):
    result = types[-1]
    for t in reversed(types[:-1]):
        result = Union(t, result)
    return result


def variables(t) -> list:
    """Variable names in ``t`` in first-occurrence order."""
    out = []
    stack = [t]
    while stack:
        cur = stack.pop()
        if isinstance(cur, Var):
            if cur.name not in out:
                out.append(cur.name)
        elif isinstance(cur, (Concat, Union)):
            stack.extend((cur.right, cur.left))
        elif isinstance(cur, (Star, Label)):
            stack.append(cur.body)
    return out


def resolve(x: str, e: GlobalSet) -> RegularExpressionType:
    try:
        return e[x]
    except KeyError:
        raise UnboundTypeVariableError(x) from None


# -- guardedness ------------------------------------------------------------

def _exposed(t) -> set:
    """Variables reachable without passing a label or a preceding item."""
    match t:
        case Var(name):
            return {name}
        case Union(left, right):
            return _exposed(left) | _exposed(right)
        case Concat(left, _):
            return _exposed(left)
        case Star(body):
            return _exposed(body)
    return set()


def unguarded_cycle(e: GlobalSet, root=None):
    """A cycle of exposed references, or ``None`` when the set is guarded."""
    if root is not None:
        _check_bound(root, e)
    graph = nx.DiGraph()
    names = list(e)
    graph.add_nodes_from(names)
    for name in names:
        _check_bound(e[name], e)
        for ref in sorted(_exposed(e[name])):
            graph.add_edge(name, ref)
    for name in names:
        try:
            edges = nx.find_cycle(graph, source=name)
        except nx.NetworkXNoCycle:
            continue
        return [u for u, _ in edges]
    return None


def check_guarded(e: GlobalSet, root=None) -> None:
    """Raise :class:`UnguardedTypeError` if some recursion is unguarded.

    A reference is guarded when it sits under a label or to the right of a
    concatenation. Every cycle through the definitions needs at least one
    guarded reference; otherwise matching could revisit a variable without
    making progress.
    """
    cycle = unguarded_cycle(e, root)
    if cycle is not None:
        raise UnguardedTypeError(cycle)


# -- string acceptance ------------------------------------------------------

# Which plain strings a type admits depends only on emptiness: "0" marks the
# empty string, "+" any non-empty one.
_NONE, _EPS, _PLUS, _BOTH = frozenset(), frozenset("0"), frozenset("+"), frozenset("0+")


def _acc(t, table):
    match t:
        case EmptySeq():
            return _BOTH
        case Label():
            return _NONE
        case Var(name):
            return table[name]
        case Union(left, right):
            return _acc(left, table) | _acc(right, table)
        case Star(body):
            return _EPS | (_acc(body, table) & _PLUS)
        case Concat(left, right):
            a, b = _acc(left, table), _acc(right, table)
            out = set()
            if "0" in a and "0" in b:
                out.add("0")
            if ("+" in a and b) or (a and "+" in b):
                out.add("+")
            return frozenset(out)
    raise TypeError(f"not a type: {t!r}")


def _string_table(e: GlobalSet):
    table = {name: _NONE for name in e}
    changed = True
    while changed:
        changed = False
        for name, body in e.items():
            new = _acc(body, table)
            if new != table[name]:
                table[name] = new
                changed = True
    return table


def _check_bound(t, e):
    for name in variables(t):
        resolve(name, e)


def string_acceptance(t, e: GlobalSet) -> frozenset:
    """Subset of ``{"0", "+"}``: whether the empty / a non-empty string has type ``t``."""
    _check_bound(t, e)
    return _acc(t, _string_table(e))


def string_nullable(t, e: GlobalSet) -> bool:
    """True iff some node-free value (a plain string) has type ``t``."""
    return bool(string_acceptance(t, e))


# -- membership -------------------------------------------------------------

class _Matcher:
    def __init__(self, e: GlobalSet):
        self.e = e
        self.strings = _string_table(e)
        self.memo = {}
        self.hedges = {}

    def member(self, v: Tree, t) -> bool:
        key = (id(v), id(t))
        hit = self.memo.get(key)
        if hit is None:
            if isinstance(v, Str):
                hit = ("0" if v.text == "" else "+") in _acc(t, self.strings)
            else:
                hedge = self.hedges.get(id(v))
                if hedge is None:
                    hedge = self.hedges[id(v)] = _HedgeMatch(self, v.items)
                hit = len(v.items) in hedge.ends(t, 0)
            self.memo[key] = hit
        return hit


class _HedgeMatch:
    """Span relation of one hedge against every variable, as a least fixpoint."""

    def __init__(self, matcher, items):
        self.m = matcher
        self.items = items
        self.table = {}
        self._solve()

    def _solve(self):
        e = self.m.e
        n = len(self.items)
        self.table = {(name, i): frozenset() for name in e for i in range(n + 1)}
        changed = True
        while changed:
            changed = False
            for name, body in e.items():
                for i in range(n + 1):
                    new = self.ends(body, i)
                    if new != self.table[name, i]:
                        self.table[name, i] = new
                        changed = True

    def ends(self, t, i) -> frozenset:
        match t:
            case EmptySeq():
                return frozenset((i,))
            case Var(name):
                return self.table[name, i]
            case Label(label, body):
                items = self.items
                if i < len(items) and items[i].label == label and self.m.member(items[i].children, body):
                    return frozenset((i + 1,))
                return frozenset()
            case Union(left, right):
                return self.ends(left, i) | self.ends(right, i)
            case Concat(left, right):
                out = set()
                for k in self.ends(left, i):
                    out |= self.ends(right, k)
                return frozenset(out)
            case Star(body):
                reached = {i}
                frontier = [i]
                while frontier:
                    k = frontier.pop()
                    for j in self.ends(body, k):
                        if j not in reached:
                            reached.add(j)
                            frontier.append(j)
                return frozenset(reached)
        raise TypeError(f"not a type: {t!r}")


def member(v: Tree, t, e: GlobalSet) -> bool:
    """Decide whether tree ``v`` has type ``t`` under global set ``e``."""
    _check_bound(t, e)
    for body in e.values():
        _check_bound(body, e)
    # every tree level nests a handful of frames
    with stack_room(8 * _depth(v)):
        return _Matcher(e).member(v, t)


def _depth(v: Tree) -> int:
    deepest = 0
    stack = [(v, 0)]
    while stack:
        cur, d = stack.pop()
        deepest = max(deepest, d)
        if isinstance(cur, Nodes):
            stack.extend((n.children, d + 1) for n in cur.items)
    return deepest


# -- text form --------------------------------------------------------------

_UNION, _CONCAT, _POSTFIX = range(3)


def _render(t, level):
    match t:
        case EmptySeq():
            return "Empty"
        case Var(name):
            return name
        case Label(label, body):
            return f"{label}[{_render(body, _UNION)}]"
        case Star(body):
            return _render(body, _POSTFIX + 1) + "*"
        case Concat(left, right):
            text = _render(left, _POSTFIX) + ", " + _render(right, _CONCAT)
            return text if level <= _CONCAT else f"({text})"
        case Union(left, right):
            text = _render(left, _CONCAT) + " | " + _render(right, _UNION)
            return text if level <= _UNION else f"({text})"
    raise TypeError(f"not a type: {t!r}")


def render_type(t) -> str:
    return _render(t, _UNION)


def serialize_types(e: GlobalSet, root) -> str:
    """``type X = ...`` per binding, then the root type on the last line."""
    lines = [f"type {name} = {render_type(body)}" for name, body in e.items()]
    lines.append(render_type(root))
    return "\n".join(lines) + "\n"


class _TypeReader:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def fail(self, message):
        raise FormatError(f"{message} at offset {self.pos} in {self.text!r}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos] in " \t":
            self.pos += 1

    def peek(self):
        self.skip()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def ident(self):
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and (self.text[self.pos].isalnum() or self.text[self.pos] == "_"):
            self.pos += 1
        if start == self.pos or self.text[start].isdigit():
            self.fail("expected a name")
        return self.text[start:self.pos]

    def union(self):
        items = [self.concat()]
        while self.peek() == "|":
            self.pos += 1
            items.append(self.concat())
        return union(*items)

    def concat(self):
        items = [self.postfix()]
        while self.peek() == ",":
            self.pos += 1
            items.append(self.postfix())
        return concat(*items)

    def postfix(self):
        t = self.atom()
        while self.peek() == "*":
            self.pos += 1
            t = Star(t)
        return t

    def atom(self):
        if self.peek() == "(":
            self.pos += 1
            t = self.union()
            if self.peek() != ")":
                self.fail("expected ')'")
            self.pos += 1
            return t
        name = self.ident()
        if self.peek() == "[":
            self.pos += 1
            body = self.union()
            if self.peek() != "]":
                self.fail("expected ']'")
            self.pos += 1
            return Label(name, body)
        return EMPTY if name == "Empty" else Var(name)

    def whole(self):
        t = self.union()
        if self.peek():
            self.fail("trailing characters")
        return t


def parse_type(text: str):
    return _TypeReader(text).whole()


def read_types(text: str):
    """Inverse of :func:`serialize_types`; returns ``(global_set, root)``."""
    bindings = {}
    root = None
    for line in text.splitlines():
        line = line.strip()
        if not line:
            continue
        if root is not None:
            raise FormatError("the root type must be the last line")
        if line.startswith("type ") and "=" in line:
            head, body = line[5:].split("=", 1)
            name = head.strip()
            if not name.isidentifier() or name == "Empty":
                raise FormatError(f"bad type variable name: {name!r}")
            if name in bindings:
                raise FormatError(f"type {name} defined twice")
            bindings[name] = parse_type(body)
        else:
            root = parse_type(line)
    if root is None:
        raise FormatError("missing root type")
    return bindings, root


# -- JSON form --------------------------------------------------------------

def type_to_data(t):
    match t:
        case EmptySeq():
            return {"kind": "empty"}
        case Var(name):
            return {"kind": "var", "name": name}
        case Label(label, body):
            return {"kind": "label", "label": label, "body": type_to_data(body)}
        case Star(body):
            return {"kind": "star", "body": type_to_data(body)}
        case Concat(left, right):
            return {"kind": "concat", "left": type_to_data(left), "right": type_to_data(right)}
        case Union(left, right):
            return {"kind": "union", "left": type_to_data(left), "right": type_to_data(right)}
    raise TypeError(f"not a type: {t!r}")


def type_from_data(d):
    try:
        kind = d["kind"]
        if kind == "empty":
            return EMPTY
        if kind == "var":
            return Var(d["name"])
        if kind == "label":
            return Label(d["label"], type_from_data(d["body"]))
        if kind == "star":
            return Star(type_from_data(d["body"]))
        if kind == "concat":
            return Concat(type_from_data(d["left"]), type_from_data(d["right"]))
        if kind == "union":
            return Union(type_from_data(d["left"]), type_from_data(d["right"]))
    except (KeyError, TypeError):
        pass
    raise FormatError(f"not a type: {d!r}")


def types_to_json(e: GlobalSet, root, indent=None) -> str:
    data = {"root": type_to_data(root),
            "bindings": {name: type_to_data(body) for name, body in e.items()}}
    return json.dumps(data, indent=indent)


def types_from_json(text: str):
    try:
        data = json.loads(text)
        bindings = {name: type_from_data(body) for name, body in data["bindings"].items()}
        return bindings, type_from_data(data["root"])
    except (json.JSONDecodeError, KeyError, TypeError, AttributeError) as exc:
        raise FormatError(f"bad type document: {exc}") from None
