"""Infer a regular expression type for a grammar, before any parsing.

Each nonterminal met outside the environment gets a fresh variable bound to
the type of its body (the body is inferred with the nonterminal added to the
environment); a nonterminal already in the environment is just its variable.
So a nonterminal used in two unrelated places is inferred twice, under two
variables. A fold-capture ``base (^{ step #L })*`` gets its own variable
``X = L[X, T_step] | T_base``.

Variables are numbered ``X1, X2, ...`` in pre-order: a nonterminal or fold
claims its number before its subexpressions are visited.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Mapping

from . import ret
from .analysis import check_well_formed
from .errors import CPEGError, UnguardedTypeError, WellFormednessError
from .expressions import (
    AnyChar, Capture, Choice, Empty, FoldCapture, Nonterminal, Not,
    Repetition, Sequence, Terminal,
)
from .grammar import Grammar, lookup_rule


class FreshSupply:
    """Hands out ``X1, X2, ...``; never repeats a name within one run."""

    def __init__(self, prefix="X", start=1):
        self.prefix = prefix
        self.next = start

    def fresh(self) -> str:
        name = f"{self.prefix}{self.next}"
        self.next += 1
        return name


@dataclass(frozen=True)
class InferenceResult:
    root_type: object
    bindings: Mapping[str, object]
    introduced: frozenset
    diagnostics: tuple = field(default=(), compare=False)

    def __post_init__(self):
        object.__setattr__(self, "bindings", MappingProxyType(dict(self.bindings)))

    def serialize(self) -> str:
        return ret.serialize_types(self.bindings, self.root_type)

    def to_json(self, indent=None) -> str:
        return ret.types_to_json(self.bindings, self.root_type, indent)


def _union(t1, t2):
    # T | T is T; keeps a character class typed as Empty rather than Empty|Empty|...
    return t1 if t1 == t2 else ret.Union(t1, t2)


class _Inferrer:
    def __init__(self, grammar, supply):
        self.grammar = grammar
        self.supply = supply
        self.order = []

    def _merge(self, *parts):
        merged = {}
        for part in parts:
            clash = merged.keys() & part.keys()
            if clash:
                raise CPEGError(f"type variable introduced twice: {sorted(clash)}")
            merged.update(part)
        return merged

    def infer(self, e, env):
        """Return ``(type, bindings)``; the introduced set is ``bindings.keys()``."""
        match e:
            case Empty() | Terminal() | AnyChar() | Not():
                return ret.EMPTY, {}
            case Nonterminal(name):
                if name in env:
                    return ret.Var(env[name]), {}
                x = self.supply.fresh()
                self.order.append(x)
                body, bindings = self.infer(lookup_rule(self.grammar, name), {**env, name: x})
                return ret.Var(x), self._merge(bindings, {x: body})
            case Sequence(first, second):
                t1, e1 = self.infer(first, env)
                t2, e2 = self.infer(second, env)
                return ret.Concat(t1, t2), self._merge(e1, e2)
            case Choice(first, second):
                t1, e1 = self.infer(first, env)
                t2, e2 = self.infer(second, env)
                return _union(t1, t2), self._merge(e1, e2)
            case Repetition(body):
                t, bindings = self.infer(body, env)
                return ret.Star(t), bindings
            case Capture(label, body):
                t, bindings = self.infer(body, env)
                return ret.Label(label, t), bindings
            case FoldCapture(label, base, step):
                x = self.supply.fresh()
                self.order.append(x)
                t1, e1 = self.infer(base, env)
                t2, e2 = self.infer(step, env)
                folded = _union(ret.Label(label, ret.Concat(ret.Var(x), t2)), t1)
                return ret.Var(x), self._merge(e1, e2, {x: folded})
        raise TypeError(f"not a core expression: {e!r}")


def infer_expr(e, env: Mapping[str, str], supply: FreshSupply, g: Grammar) -> InferenceResult:
    """Infer ``e`` under an environment mapping nonterminals to variables."""
    inferrer = _Inferrer(g, supply)
    root, bindings = inferrer.infer(e, dict(env))
    ordered = {x: bindings[x] for x in inferrer.order}
    return InferenceResult(root, ordered, frozenset(ordered))


def infer_grammar(g: Grammar, force: bool = False) -> InferenceResult:
    """Type of ``g``'s start expression, with its global set.

    Refuses grammars that are not well-formed unless ``force`` is set. The
    result is checked for guarded recursion; with ``force`` a failure of that
    check is recorded in ``diagnostics`` instead of raised.
    """
    report = check_well_formed(g)
    notes = []
    if not report.is_well_formed:
        if not force:
            raise WellFormednessError(report)
        notes.append("grammar is not well-formed; inferred anyway")
    result = infer_expr(g.start, {}, FreshSupply(), g)
    try:
        ret.check_guarded(result.bindings, result.root_type)
    except UnguardedTypeError as exc:
        if not force:
            raise
        notes.append(str(exc))
    if notes:
        result = InferenceResult(result.root_type, result.bindings, result.introduced, tuple(notes))
    return result


def alpha_equal(r1: InferenceResult, r2: InferenceResult) -> bool:
    """True iff a bijective renaming of variables maps ``r1`` onto ``r2``."""
    if len(r1.bindings) != len(r2.bindings):
        return False
    return _match_from({}, [(r1.root_type, r2.root_type)], r1.bindings, r2.bindings)


def _match_from(mapping, pairs, b1, b2):
    mapping = dict(mapping)
    used = set(mapping.values())
    work = list(pairs)
    while work:
        t1, t2 = work.pop()
        if type(t1) is not type(t2):
            return False
        match t1:
            case ret.EmptySeq():
                pass
            case ret.Var(name):
                other = t2.name
                if name in mapping:
                    if mapping[name] != other:
                        return False
                    continue
                if other in used or (name in b1) != (other in b2):
                    return False
                mapping[name] = other
                used.add(other)
                if name in b1:
                    work.append((b1[name], b2[other]))
            case ret.Label(label, body):
                if label != t2.label:
                    return False
                work.append((body, t2.body))
            case ret.Star(body):
                work.append((body, t2.body))
            case ret.Concat(left, right) | ret.Union(left, right):
                work.append((left, t2.left))
                work.append((right, t2.right))
    # bindings unreachable from the root still need partners
    rest1 = [x for x in b1 if x not in mapping]
    if not rest1:
        return True
    rest2 = [y for y in b2 if y not in used]
    x = rest1[0]
    return any(_match_from(mapping, [(ret.Var(x), ret.Var(y))], b1, b2) for y in rest2)


def dedupe(result: InferenceResult) -> InferenceResult:
    """Merge variables whose bodies are identical, for display.

    Later duplicates are replaced by the first variable with the same body;
    repeated until nothing changes.
    """
    bindings = dict(result.bindings)
    root = result.root_type
    while True:
        seen = {}
        renames = {}
        for name, body in bindings.items():
            if body in seen:
                renames[name] = seen[body]
            else:
                seen[body] = name
        if not renames:
            break
        bindings = {name: _rename(body, renames) for name, body in bindings.items()
                    if name not in renames}
        root = _rename(root, renames)
    return InferenceResult(root, bindings, frozenset(bindings), result.diagnostics)


def _rename(t, renames):
    match t:
        case ret.Var(name):
            return ret.Var(renames.get(name, name))
        case ret.Label(label, body):
            return ret.Label(label, _rename(body, renames))
        case ret.Star(body):
            return ret.Star(_rename(body, renames))
        case ret.Concat(left, right):
            return ret.Concat(_rename(left, renames), _rename(right, renames))
        case ret.Union(left, right):
            return ret.Union(_rename(left, renames), _rename(right, renames))
    return t
