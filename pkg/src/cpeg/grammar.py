"""Grammar container plus the reader and writer for grammar files.

Grammar files use Nez-style notation::

    // left-associative products
    Prod = Val (^{ '*' Val #Mul })*
    Val  = { [0-9]+ #Int }

One rule per ``Name = expression``; the first rule is the start rule.
Whitespace between tokens is insignificant and ``//`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from .errors import GrammarError, GrammarSyntaxError, UnknownNonterminalError
from .expressions import (
    And, AnyChar, Capture, CharClass, Choice, Empty, Expression, Fold,
    FoldCapture, Literal, Nonterminal, Not, OneOrMore, Optional, Repetition,
    Sequence, Terminal, choice, desugar, labels, nonterminals, seq, terminals,
)


@dataclass(frozen=True)
class Grammar:
    """The 5-tuple: rules, start expression, and the derived alphabet/labels."""

    rules: Mapping[str, Expression]
    start: Expression
    alphabet: frozenset = field(default=frozenset())
    labels: frozenset = field(default=frozenset())

    def __post_init__(self):
        object.__setattr__(self, "rules", MappingProxyType(dict(self.rules)))

    @classmethod
    def from_rules(cls, rules, start=None) -> "Grammar":
        """Build a grammar, inferring the alphabet and label set.

        ``rules`` is an ordered mapping or a sequence of ``(name, body)``
        pairs; ``start`` defaults to the first rule's nonterminal.
        """
        pairs = list(rules.items()) if isinstance(rules, Mapping) else list(rules)
        table = {}
        for name, body in pairs:
            if name in table:
                raise GrammarError(f"duplicate rule: {name}")
            table[name] = desugar(body)
        if start is None:
            if not table:
                raise GrammarError("grammar has no rules")
            start = Nonterminal(next(iter(table)))
        start = desugar(start)
        for body in [start, *table.values()]:
            for name in sorted(nonterminals(body)):
                if name not in table:
                    raise UnknownNonterminalError(name)
        sigma, tags = set(), set()
        for body in [start, *table.values()]:
            sigma |= terminals(body)
            tags |= labels(body)
        return cls(table, start, frozenset(sigma), frozenset(tags))

    @property
    def nonterminals(self) -> frozenset:
        return frozenset(self.rules)

    def __eq__(self, other):
        if not isinstance(other, Grammar):
            return NotImplemented
        return (list(self.rules.items()) == list(other.rules.items())
                and self.start == other.start
                and self.alphabet == other.alphabet
                and self.labels == other.labels)

    def __hash__(self):
        return hash((tuple(self.rules.items()), self.start))


def lookup_rule(g: Grammar, name: str) -> Expression:
    try:
        return g.rules[name]
    except KeyError:
        raise UnknownNonterminalError(name) from None


# -- reader -----------------------------------------------------------------

_ESCAPES = {"n": "\n", "t": "\t", "r": "\r", "\\": "\\", "'": "'", '"': '"',
            "]": "]", "[": "[", "-": "-"}


def _is_ident_start(c):
    return c.isalpha() or c == "_"


def _is_ident_char(c):
    return c.isalnum() or c == "_"


class _FoldGroup:
    """Parenthesized ``(^{..} / ^{..})`` waiting to be attached to a base."""

    def __init__(self, alternatives, offset):
        self.alternatives = alternatives
        self.offset = offset


class _Reader:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def error(self, message, offset=None):
        return GrammarSyntaxError(message, self.text, self.pos if offset is None else offset)

    def skip(self):
        text, n = self.text, len(self.text)
        while self.pos < n:
            c = text[self.pos]
            if c.isspace():
                self.pos += 1
            elif text.startswith("//", self.pos):
                end = text.find("\n", self.pos)
                self.pos = n if end < 0 else end + 1
            else:
                break

    def peek(self, token=None):
        self.skip()
        if token is None:
            return self.text[self.pos] if self.pos < len(self.text) else ""
        return self.text.startswith(token, self.pos)

    def expect(self, token):
        if not self.peek(token):
            found = self.peek() or "end of input"
            raise self.error(f"expected {token!r}, found {found!r}")
        self.pos += len(token)

    def ident(self):
        self.skip()
        start = self.pos
        if start >= len(self.text) or not _is_ident_start(self.text[start]):
            raise self.error("expected an identifier")
        self.pos += 1
        while self.pos < len(self.text) and _is_ident_char(self.text[self.pos]):
            self.pos += 1
        return self.text[start:self.pos]

    def at_rule_start(self):
        """True when the upcoming tokens are ``Identifier =``."""
        save = self.pos
        try:
            self.skip()
            if not _is_ident_start(self.peek()):
                return False
            self.ident()
            return self.peek("=")
        finally:
            self.pos = save

    # grammar   <- rule+
    # rule      <- Identifier '=' choice
    def grammar(self):
        rules = []
        while True:
            self.skip()
            if self.pos >= len(self.text):
                break
            start = self.pos
            name = self.ident()
            self.expect("=")
            body = self.choice()
            rules.append((name, body, start))
        if not rules:
            raise self.error("grammar has no rules")
        return rules

    # choice    <- sequence ('/' sequence)*
    def choice(self):
        alts = [self.sequence()]
        while self.peek("/"):
            self.pos += 1
            alts.append(self.sequence())
        return choice(*alts)

    def _sequence_ends(self):
        return self.peek() in ("", "/", ")", "}", "#") or self.at_rule_start()

    # sequence  <- (prefixed / fold)*    ; a fold takes everything before it
    def sequence(self):
        items = []
        while not self._sequence_ends():
            start = self.pos
            item = self.prefixed()
            if isinstance(item, (_FoldGroup, tuple)):
                if not items:
                    raise self.error("^{...} needs an expression on its left", start)
                alternatives, suffix = item if isinstance(item, tuple) else (item.alternatives, None)
                items = [Fold(seq(*items), tuple(alternatives), suffix)]
            else:
                items.append(item)
        return seq(*items)

    # prefixed  <- ('&' / '!')? suffixed
    def prefixed(self):
        self.skip()
        start = self.pos
        if self.peek("&") or self.peek("!"):
            op = self.text[self.pos]
            self.pos += 1
            body = self.prefixed()
            if isinstance(body, (_FoldGroup, tuple)):
                raise self.error("^{...} cannot be used under a predicate", start)
            return And(body) if op == "&" else Not(body)
        return self.suffixed()

    # suffixed  <- primary ('?' / '*' / '+')*
    def suffixed(self):
        start = self.pos
        item = self.primary()
        while self.peek() in ("?", "*", "+"):
            op = self.text[self.pos]
            self.pos += 1
            if isinstance(item, _FoldGroup):
                if len(item.alternatives) != 1:
                    raise self.error("only a single ^{...} may be repeated or optional", start)
                item = (item.alternatives, op)
            elif isinstance(item, tuple):
                raise self.error("^{...} takes at most one suffix", start)
            else:
                item = {"?": Optional, "*": Repetition, "+": OneOrMore}[op](item)
        return item

    def primary(self):
        self.skip()
        start = self.pos
        c = self.peek()
        if c in ("'", '"'):
            return self.literal()
        if c == "[":
            return self.char_class()
        if c == ".":
            self.pos += 1
            return AnyChar()
        if c == "(":
            self.pos += 1
            if self.peek("^"):
                group = self.fold_alternatives(start)
                self.expect(")")
                return group
            if self.peek(")"):
                raise self.error("empty group")
            inner = self.choice()
            self.expect(")")
            return inner
        if c == "{":
            self.pos += 1
            body = self.choice()
            label = self.label()
            self.expect("}")
            return Capture(label, body)
        if c == "^":
            return _FoldGroup([self.fold_one()], start)
        if _is_ident_start(c):
            return Nonterminal(self.ident())
        raise self.error(f"unexpected {c!r}" if c else "unexpected end of input")

    def fold_one(self):
        self.expect("^")
        self.expect("{")
        body = self.choice()
        label = self.label()
        self.expect("}")
        return (label, body)

    def fold_alternatives(self, start):
        alts = [self.fold_one()]
        while self.peek("/"):
            self.pos += 1
            if not self.peek("^"):
                raise self.error("every alternative of a fold group must be ^{...}")
            alts.append(self.fold_one())
        return _FoldGroup(alts, start)

    def label(self):
        self.expect("#")
        if self.pos >= len(self.text) or not _is_ident_start(self.text[self.pos]):
            raise self.error("expected a label after '#'")
        return self.ident()

    def char(self, terminator):
        text = self.text
        if self.pos >= len(text):
            raise self.error(f"unterminated {terminator!r}")
        c = text[self.pos]
        if c == "\\":
            if self.pos + 1 >= len(text):
                raise self.error("dangling escape")
            e = text[self.pos + 1]
            if e == "u":
                digits = text[self.pos + 2:self.pos + 6]
                if len(digits) != 4 or any(d not in "0123456789abcdefABCDEF" for d in digits):
                    raise self.error("\\u needs four hex digits")
                self.pos += 6
                return chr(int(digits, 16))
            if e not in _ESCAPES:
                raise self.error(f"unknown escape \\{e}")
            self.pos += 2
            return _ESCAPES[e]
        self.pos += 1
        return c

    def literal(self):
        quote = self.text[self.pos]
        self.pos += 1
        chars = []
        while True:
            if self.pos >= len(self.text):
                raise self.error("unterminated literal")
            if self.text[self.pos] == quote:
                self.pos += 1
                break
            chars.append(self.char(quote))
        return Literal("".join(chars))

    def char_class(self):
        start = self.pos
        self.pos += 1
        ranges = []
        while True:
            if self.pos >= len(self.text):
                raise self.error("unterminated character class", start)
            if self.text[self.pos] == "]":
                self.pos += 1
                break
            lo = self.char("]")
            hi = lo
            if self.text.startswith("-", self.pos) and not self.text.startswith("-]", self.pos):
                self.pos += 1
                hi = self.char("]")
                if hi < lo:
                    raise self.error(f"bad range {lo!r}-{hi!r}", start)
            ranges.append((lo, hi))
        if not ranges:
            raise self.error("empty character class", start)
        return CharClass(tuple(ranges))


def parse_grammar(text: str) -> Grammar:
    """Read a grammar file into a desugared :class:`Grammar`."""
    reader = _Reader(text)
    rules = reader.grammar()
    seen = {}
    for name, _, offset in rules:
        if name in seen:
            raise GrammarSyntaxError(f"duplicate rule: {name}", text, offset)
        seen[name] = offset
    try:
        bodies = [(name, desugar(body)) for name, body, _ in rules]
    except ValueError as exc:
        raise GrammarSyntaxError(str(exc), text, 0) from None
    return Grammar.from_rules(bodies)


def load_grammar(path) -> Grammar:
    with open(path, encoding="utf-8") as f:
        return parse_grammar(f.read())


# -- writer -----------------------------------------------------------------

_QUOTE_ESCAPES = {"\\": "\\\\", "'": "\\'", "\n": "\\n", "\t": "\\t", "\r": "\\r"}

# precedence levels
_CHOICE, _SEQ, _PREFIX, _ATOM = range(4)


def _quote(text):
    return "'" + "".join(_QUOTE_ESCAPES.get(c, c) for c in text) + "'"


def _render(e, level):
    """Render ``e`` so that it reads back as the identical AST."""
    match e:
        case Empty():
            return "''"
        case Terminal(c):
            return _quote(c)
        case AnyChar():
            return "."
        case Nonterminal(name):
            return name
        case Capture(label, body):
            return "{ " + _render(body, _CHOICE) + " #" + label + " }"
        case FoldCapture(label, base, step):
            text = _render(base, _SEQ) + " (^{ " + _render(step, _CHOICE) + " #" + label + " })*"
            return "(" + text + ")"
        case Repetition(body):
            return _render(body, _ATOM) + "*"
        case Not(body):
            text = "!" + _render(body, _PREFIX)
            return text if level <= _PREFIX else "(" + text + ")"
        case Sequence(first, second):
            text = _render(first, _PREFIX) + " " + _render(second, _SEQ)
            return text if level <= _SEQ else "(" + text + ")"
        case Choice(first, second):
            text = _render(first, _SEQ) + " / " + _render(second, _CHOICE)
            return text if level <= _CHOICE else "(" + text + ")"
    raise TypeError(f"not a core expression: {e!r}")


def render_expression(e: Expression) -> str:
    return _render(e, _CHOICE)


def serialize_grammar(g: Grammar) -> str:
    """Write ``g`` back out; the start rule must be the first rule."""
    if g.rules and g.start != Nonterminal(next(iter(g.rules))):
        raise GrammarError("only grammars that start at their first rule can be written")
    return "".join(f"{name} = {render_expression(body)}\n" for name, body in g.rules.items())
