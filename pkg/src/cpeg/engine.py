"""Recursive-descent interpreter for capture-annotated PEGs.

Positions stand in for the unconsumed suffixes of the big-step rules: every
judgement relates suffixes of one input, so an index is enough.

Two loops terminate where the rules alone would diverge: a repetition, or the
step loop of a fold-capture, stops as soon as an iteration succeeds without
consuming input. The value of that empty iteration is dropped.
"""

from __future__ import annotations

from dataclasses import dataclass

from ._stack import stack_room
from .errors import ParseDepthError
from .expressions import (
    AnyChar, Capture, Choice, Empty, FoldCapture, Nonterminal, Not,
    Repetition, Sequence, Terminal,
)
from .grammar import Grammar
from .trees import EMPTY, Str, Tree, concat, concat_all, make_node

DEFAULT_MAX_DEPTH = 5000


@dataclass(frozen=True)
class ParserState:
    input: str
    position: int
    grammar: Grammar

    def __post_init__(self):
        if not 0 <= self.position <= len(self.input):
            raise ValueError(f"position {self.position} outside input of length {len(self.input)}")


@dataclass(frozen=True)
class Success:
    value: Tree
    end: int
    unconsumed: int = 0

    ok = True


@dataclass(frozen=True)
class Failure:
    position: int

    ok = False


ParseOutcome = Success | Failure


class _Evaluator:
    def __init__(self, grammar, text, max_depth):
        self.rules = grammar.rules
        self.text = text
        self.max_depth = max_depth
        self.depth = 0

    def run(self, e, pos):
        """Return ``(value, end)`` on success or ``None`` on failure."""
        self.depth += 1
        if self.depth > self.max_depth:
            raise ParseDepthError(f"evaluation nested deeper than {self.max_depth}")
        try:
            return self._run(e, pos)
        finally:
            self.depth -= 1

    def _run(self, e, pos):
        text = self.text
        match e:
            case Terminal(char):
                if pos < len(text) and text[pos] == char:
                    return Str(char), pos + 1
                return None
            case AnyChar():
                if pos < len(text):
                    return Str(text[pos]), pos + 1
                return None
            case Empty():
                return EMPTY, pos
            case Nonterminal(name):
                return self.run(self.rules[name], pos)
            case Sequence():
                values = []
                cur = pos
                # walk the right spine iteratively; long literals nest deeply
                while isinstance(e, Sequence):
                    r = self.run(e.first, cur)
                    if r is None:
                        return None
                    values.append(r[0])
                    cur = r[1]
                    e = e.second
                r = self.run(e, cur)
                if r is None:
                    return None
                values.append(r[0])
                return concat_all(values), r[1]
            case Choice():
                while isinstance(e, Choice):
                    r = self.run(e.first, pos)
                    if r is not None:
                        return r
                    e = e.second
                return self.run(e, pos)
            case Repetition(body):
                values = []
                cur = pos
                while True:
                    r = self.run(body, cur)
                    if r is None or r[1] == cur:
                        break
                    values.append(r[0])
                    cur = r[1]
                return concat_all(values), cur
            case Not(body):
                if self.run(body, pos) is None:
                    return EMPTY, pos
                return None
            case Capture(label, body):
                r = self.run(body, pos)
                if r is None:
                    return None
                return make_node(label, r[0]), r[1]
            case FoldCapture(label, base, step):
                r = self.run(base, pos)
                if r is None:
                    return None
                acc, cur = r
                while True:
                    r = self.run(step, cur)
                    if r is None or r[1] == cur:
                        break
                    acc = make_node(label, concat(acc, r[0]))
                    cur = r[1]
                return acc, cur
        raise TypeError(f"not a core expression: {e!r}")


def evaluate(e, state: ParserState, max_depth: int = DEFAULT_MAX_DEPTH) -> ParseOutcome:
    """Run expression ``e`` at ``state.position``.

    Failure reports the starting position: a failed expression never
    consumes input.
    """
    ev = _Evaluator(state.grammar, state.input, max_depth)
    # each nested evaluation costs a handful of interpreter frames
    with stack_room(4 * max_depth):
        r = ev.run(e, state.position)
    if r is None:
        return Failure(state.position)
    return Success(r[0], r[1], len(state.input) - r[1])


def parse(g: Grammar, text: str, full_match: bool = False,
          max_depth: int = DEFAULT_MAX_DEPTH) -> ParseOutcome:
    """Run the start expression of ``g`` over ``text``.

    With ``full_match`` a success that leaves input unconsumed becomes a
    :class:`Failure` located where the unconsumed suffix begins.
    """
    outcome = evaluate(g.start, ParserState(text, 0, g), max_depth)
    if full_match and outcome.ok and outcome.unconsumed:
        return Failure(outcome.end)
    return outcome
