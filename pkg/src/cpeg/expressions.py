"""Parsing expressions: the nine core constructs plus the frontend sugar.

Core expressions are what the interpreter and the type inferencer see::

    Empty  Terminal  Nonterminal  Sequence  Choice
    Repetition  Not  Capture  FoldCapture

``AnyChar`` is the one extra leaf: it stands for the choice over the whole
alphabet (``.``), which cannot be spelled out as a finite choice when the
alphabet is all of Unicode. Every consumer treats it exactly like a terminal.

The sugared forms (``Literal``, ``CharClass``, ``OneOrMore``, ``Optional``,
``And`` and ``Fold``) only exist between the grammar reader and
:func:`desugar`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union


@dataclass(frozen=True)
class Empty:
    pass


@dataclass(frozen=True)
class Terminal:
    char: str

    def __post_init__(self):
        if len(self.char) != 1:
            raise ValueError(f"terminal must be a single character: {self.char!r}")


@dataclass(frozen=True)
class AnyChar:
    pass


@dataclass(frozen=True)
class Nonterminal:
    name: str


@dataclass(frozen=True)
class Sequence:
    first: "Expression"
    second: "Expression"


@dataclass(frozen=True)
class Choice:
    first: "Expression"
    second: "Expression"


@dataclass(frozen=True)
class Repetition:
    body: "Expression"


@dataclass(frozen=True)
class Not:
    body: "Expression"


@dataclass(frozen=True)
class Capture:
    label: str
    body: "Expression"


@dataclass(frozen=True)
class FoldCapture:
    """``base (^{ step #label })*`` -- left-folds every ``step`` result."""

    label: str
    base: "Expression"
    step: "Expression"


Expression = Union[Empty, Terminal, AnyChar, Nonterminal, Sequence, Choice,
                   Repetition, Not, Capture, FoldCapture]

CORE_TYPES = (Empty, Terminal, AnyChar, Nonterminal, Sequence, Choice,
              Repetition, Not, Capture, FoldCapture)


# -- sugar ------------------------------------------------------------------

@dataclass(frozen=True)
class Literal:
    text: str


@dataclass(frozen=True)
class CharClass:
    ranges: tuple  # ((lo, hi), ...) inclusive


@dataclass(frozen=True)
class OneOrMore:
    body: object


@dataclass(frozen=True)
class Optional:
    body: object


@dataclass(frozen=True)
class And:
    body: object


@dataclass(frozen=True)
class Fold:
    """``base ^{...}`` in one of its sugared positions.

    ``alternatives`` holds ``(label, step)`` pairs; more than one only for
    the choice form ``base (^{e2 #L} / ^{e3 #M})``. ``suffix`` is ``None``
    for a single fold, or one of ``"?"``, ``"*"``, ``"+"``.
    """

    base: object
    alternatives: tuple
    suffix: str | None = None


# -- helpers ----------------------------------------------------------------

def seq(*items):
    """Right-nested sequence of ``items``; ``Empty`` when there are none."""
    if not items:
        return Empty()
    result = items[-1]
    for item in reversed(items[:-1]):
        result = Sequence(item, result)
    return result


def choice(*items):
    if not items:
        raise ValueError("choice needs at least one alternative")
    result = items[-1]
    for item in reversed(items[:-1]):
        result = Choice(item, result)
    return result


def children(e) -> tuple:
    if isinstance(e, (Sequence, Choice)):
        return (e.first, e.second)
    if isinstance(e, (Repetition, Not, Capture, OneOrMore, Optional, And)):
        return (e.body,)
    if isinstance(e, FoldCapture):
        return (e.base, e.step)
    if isinstance(e, Fold):
        return (e.base,) + tuple(step for _, step in e.alternatives)
    return ()


def walk(e) -> Iterator:
    """Pre-order traversal; iterative so long literal chains are fine."""
    stack = [e]
    while stack:
        node = stack.pop()
        yield node
        stack.extend(reversed(children(node)))


def is_core(e) -> bool:
    return all(isinstance(node, CORE_TYPES) for node in walk(e))


def _char_class(ranges):
    chars = []
    for lo, hi in ranges:
        chars.extend(chr(c) for c in range(ord(lo), ord(hi) + 1))
    if not chars:
        raise ValueError("empty character class")
    return choice(*(Terminal(c) for c in chars))


def desugar(e) -> Expression:
    """Rewrite sugared forms into core constructs; identity on core input."""
    match e:
        case Empty() | Terminal() | AnyChar() | Nonterminal():
            return e
        case Sequence() | Choice():
            return _desugar_spine(e)
        case Repetition(body):
            return Repetition(desugar(body))
        case Not(body):
            return Not(desugar(body))
        case Capture(label, body):
            return Capture(label, desugar(body))
        case FoldCapture(label, base, step):
            return FoldCapture(label, desugar(base), desugar(step))
        case Literal(text):
            return seq(*(Terminal(c) for c in text))
        case CharClass(ranges):
            return _char_class(ranges)
        case OneOrMore(body):
            body = desugar(body)
            return Sequence(body, Repetition(body))
        case Optional(body):
            return Choice(desugar(body), Empty())
        case And(body):
            return Not(Not(desugar(body)))
        case Fold():
            return _desugar_fold(e)
    raise TypeError(f"not an expression: {e!r}")


def _desugar_spine(e):
    # long literals and classes give deep right spines; rebuild them iteratively
    kind = type(e)
    lefts = []
    while type(e) is kind:
        lefts.append(desugar(e.first))
        e = e.second
    out = desugar(e)
    for left in reversed(lefts):
        out = kind(left, out)
    return out


def _desugar_fold(e: Fold):
    base = desugar(e.base)
    alts = [(label, desugar(step)) for label, step in e.alternatives]
    if e.suffix is None:
        return choice(*(Capture(label, Sequence(base, step)) for label, step in alts))
    if len(alts) != 1:
        raise ValueError("a repeated or optional fold takes a single ^{...}")
    (label, step), = alts
    if e.suffix == "?":
        return Choice(Capture(label, Sequence(base, step)), base)
    if e.suffix == "*":
        return FoldCapture(label, base, step)
    if e.suffix == "+":
        return FoldCapture(label, Capture(label, Sequence(base, step)), step)
    raise ValueError(f"unknown fold suffix: {e.suffix!r}")


def terminals(e) -> set:
    return {node.char for node in walk(e) if isinstance(node, Terminal)}


def labels(e) -> set:
    return {node.label for node in walk(e) if isinstance(node, (Capture, FoldCapture))}


def nonterminals(e) -> set:
    return {node.name for node in walk(e) if isinstance(node, Nonterminal)}
