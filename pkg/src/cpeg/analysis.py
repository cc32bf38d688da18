"""Load-time checks: recursion structure, left recursion and well-formedness.

Definitions used here:

* A nonterminal is *recursive* when it lies on a cycle of the reference
  graph (an edge ``A -> B`` whenever ``B`` occurs in the body of ``A``).
* Tail positions: a rule body is in tail position; so is the right operand
  of a sequence in tail position and both branches of a choice in tail
  position. Operands of repetition, not, capture and fold-capture never are.
* The *continuation* of an occurrence is everything sequenced to its right
  in the enclosing chain of sequences and choices, stopping at the nearest
  repetition, predicate, capture or fold-capture.

A grammar is well-formed when every occurrence of a recursive nonterminal is
in tail position, or its continuation contains no capture and no
fold-capture.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import networkx as nx

from .errors import LeftRecursionError
from .expressions import (
    AnyChar, Capture, Choice, Empty, FoldCapture, Nonterminal, Not,
    Repetition, Sequence, Terminal, nonterminals, walk,
)
from .grammar import Grammar


@dataclass(frozen=True)
class Violation:
    rule: str
    path: tuple
    reason: str

    def to_data(self):
        return {"rule": self.rule, "path": ".".join(map(str, self.path)), "reason": self.reason}


@dataclass(frozen=True)
class WellFormednessReport:
    violations: tuple = ()

    @property
    def is_well_formed(self) -> bool:
        return not self.violations

    def to_text(self) -> str:
        if self.is_well_formed:
            return "well-formed"
        return "\n".join(f"{v.rule} @ {'.'.join(map(str, v.path)) or '<body>'}: {v.reason}"
                         for v in self.violations)

    def to_data(self):
        return {"well_formed": self.is_well_formed,
                "violations": [v.to_data() for v in self.violations]}

    def to_json(self, indent=None):
        return json.dumps(self.to_data(), indent=indent)


@dataclass(frozen=True)
class RecursionInfo:
    recursive_nonterminals: frozenset = frozenset()
    left_recursive_cycles: tuple = field(default=())


def reference_graph(g: Grammar) -> nx.DiGraph:
    graph = nx.DiGraph()
    graph.add_nodes_from(g.rules)
    for name, body in g.rules.items():
        graph.add_edges_from((name, ref) for ref in sorted(nonterminals(body)))
    return graph


def _on_cycles(graph) -> set:
    out = set()
    for scc in nx.strongly_connected_components(graph):
        if len(scc) > 1 or any(graph.has_edge(n, n) for n in scc):
            out |= scc
    return out


def nullable_rules(g: Grammar) -> dict:
    """Which rules can succeed without consuming input (least fixpoint)."""
    table = {name: False for name in g.rules}
    changed = True
    while changed:
        changed = False
        for name, body in g.rules.items():
            if not table[name] and nullable(body, table):
                table[name] = True
                changed = True
    return table


def nullable(e, table) -> bool:
    match e:
        case Empty() | Repetition() | Not():
            return True
        case Terminal() | AnyChar():
            return False
        case Nonterminal(name):
            return table[name]
        case Sequence(first, second):
            return nullable(first, table) and nullable(second, table)
        case Choice(first, second):
            return nullable(first, table) or nullable(second, table)
        case Capture(_, body):
            return nullable(body, table)
        case FoldCapture(_, base, _):
            return nullable(base, table)
    raise TypeError(f"not a core expression: {e!r}")


def leftmost(e, table) -> set:
    """Nonterminals that may be entered before any input is consumed."""
    match e:
        case Nonterminal(name):
            return {name}
        case Sequence(first, second) | FoldCapture(_, first, second):
            out = leftmost(first, table)
            if nullable(first, table):
                out |= leftmost(second, table)
            return out
        case Choice(first, second):
            return leftmost(first, table) | leftmost(second, table)
        case Repetition(body) | Not(body) | Capture(_, body):
            return leftmost(body, table)
    return set()


def _canonical(cycle):
    i = cycle.index(min(cycle))
    return tuple(cycle[i:] + cycle[:i])


def recursive_nonterminals(g: Grammar) -> RecursionInfo:
    recursive = _on_cycles(reference_graph(g))
    table = nullable_rules(g)
    left = nx.DiGraph()
    left.add_nodes_from(g.rules)
    for name, body in g.rules.items():
        left.add_edges_from((name, ref) for ref in sorted(leftmost(body, table)))
    cycles = sorted({_canonical(list(c)) for c in nx.simple_cycles(left)})
    return RecursionInfo(frozenset(recursive), tuple(cycles))


def reject_left_recursion(g: Grammar) -> None:
    cycles = recursive_nonterminals(g).left_recursive_cycles
    if cycles:
        raise LeftRecursionError(cycles)


def _has_capture(exprs) -> bool:
    return any(isinstance(node, (Capture, FoldCapture)) for e in exprs for node in walk(e))


def _occurrences(e, path, tail, after):
    """Yield ``(name, path, tail, continuation)`` for every nonterminal occurrence."""
    match e:
        case Nonterminal(name):
            yield name, path, tail, after
        case Sequence(first, second):
            yield from _occurrences(first, path + (0,), False, (second,) + after)
            yield from _occurrences(second, path + (1,), tail, after)
        case Choice(first, second):
            yield from _occurrences(first, path + (0,), tail, after)
            yield from _occurrences(second, path + (1,), tail, after)
        case Repetition(body) | Not(body) | Capture(_, body):
            yield from _occurrences(body, path + (0,), False, ())
        case FoldCapture(_, base, step):
            yield from _occurrences(base, path + (0,), False, ())
            yield from _occurrences(step, path + (1,), False, ())


def check_well_formed(g: Grammar) -> WellFormednessReport:
    recursive = _on_cycles(reference_graph(g))
    violations = []
    for rule, body in g.rules.items():
        for name, path, tail, after in _occurrences(body, (), True, ()):
            if name in recursive and not tail and _has_capture(after):
                violations.append(Violation(
                    rule, path,
                    f"recursive nonterminal {name} is not in tail position "
                    f"and is followed by a capture"))
    return WellFormednessReport(tuple(violations))
