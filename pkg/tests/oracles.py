"""Brute-force reference implementations used only by the tests.

``derive`` reads the big-step parsing rules as a relation and collects every
``(output, unconsumed suffix)`` pair that can be derived, working on suffix
strings and raw (unnormalized) tree terms. ``normalize`` applies the tree
equations separately.

``has_type`` searches for a typing derivation rule by rule, trying every
decomposition of a value into a concatenation, with a fuel bound.
"""

from cpeg import expressions as ex
from cpeg import ret
from cpeg.trees import Node, Nodes, Str

FAIL = ("fail",)
EPS = ("str", "")

fired = set()


def _cat(a, b):
    return ("cat", a, b)


def derive(e, x, rules):
    """All ``(o, y)`` with ``e`` parsing ``x`` to output ``o`` leaving ``y``."""
    out = set()
    match e:
        case ex.Empty():
            fired.add("E-Empty")
            out.add((EPS, x))
        case ex.Terminal(a):
            if x[:1] == a:
                fired.add("E-Term1")
                out.add((("str", a), x[1:]))
            else:
                fired.add("E-Term2")
                out.add((FAIL, x))
        case ex.AnyChar():
            out.add(((("str", x[0]), x[1:]) if x else (FAIL, x)))
        case ex.Nonterminal(name):
            fired.add("E-Nt")
            out |= derive(rules[name], x, rules)
        case ex.Sequence(e1, e2):
            for o1, y1 in derive(e1, x, rules):
                if o1 == FAIL:
                    fired.add("E-Seq2")
                    out.add((FAIL, x))
                    continue
                for o2, y2 in derive(e2, y1, rules):
                    if o2 == FAIL:
                        fired.add("E-Seq3")
                        out.add((FAIL, x))
                    else:
                        fired.add("E-Seq1")
                        out.add((_cat(o1, o2), y2))
        case ex.Choice(e1, e2):
            for o1, y1 in derive(e1, x, rules):
                if o1 != FAIL:
                    fired.add("E-Alt1")
                    out.add((o1, y1))
                    continue
                for o2, y2 in derive(e2, x, rules):
                    fired.add("E-Alt2" if o2 != FAIL else "E-Alt3")
                    out.add((o2, y2) if o2 != FAIL else (FAIL, x))
        case ex.Repetition(body):
            out |= _rep(body, x, rules)
        case ex.Not(body):
            for o, _ in derive(body, x, rules):
                if o == FAIL:
                    fired.add("E-Not2")
                    out.add((EPS, x))
                else:
                    fired.add("E-Not1")
                    out.add((FAIL, x))
        case ex.Capture(label, body):
            for o, y in derive(body, x, rules):
                if o == FAIL:
                    fired.add("E-Capture2")
                    out.add((FAIL, x))
                else:
                    fired.add("E-Capture1")
                    out.add((("node", label, o), y))
        case ex.FoldCapture(label, e1, e2):
            for o1, y1 in derive(e1, x, rules):
                if o1 == FAIL:
                    fired.add("E-FoldCap2")
                    out.add((FAIL, x))
                    continue
                for steps, z in _steps(e2, y1, rules):
                    if not steps:
                        fired.add("E-FoldCap3")
                        out.add((o1, z))
                        continue
                    fired.add("E-FoldCap1")
                    if len(steps) >= 2:
                        fired.add("E-FoldCap1(n>=3)")
                    acc = o1
                    for v in steps:
                        acc = ("node", label, _cat(acc, v))
                    out.add((acc, z))
        case _:
            raise TypeError(e)
    return out


def _rep(body, x, rules):
    out = set()
    for o, y in derive(body, x, rules):
        if o == FAIL:
            fired.add("E-Rep2")
            out.add((EPS, x))
        elif y == x:
            # an iteration that consumes nothing ends the loop
            out.add((EPS, x))
        else:
            fired.add("E-Rep1")
            for o2, y2 in _rep(body, y, rules):
                out.add((_cat(o, o2), y2))
    return out


def _steps(e2, y, rules):
    """Every maximal run of successful ``e2`` applications from ``y``."""
    out = set()
    for o, y1 in derive(e2, y, rules):
        if o == FAIL or y1 == y:
            out.add(((), y))
        else:
            for rest, z in _steps(e2, y1, rules):
                out.add(((o,) + rest, z))
    return out


def _leaves(raw, acc):
    kind = raw[0]
    if kind == "str":
        acc.append(raw[1])
    elif kind == "node":
        acc.append(Node(raw[1], normalize(raw[2])))
    else:
        _leaves(raw[1], acc)
        _leaves(raw[2], acc)
    return acc


def normalize(raw):
    """Raw term -> library tree: strings merge, strings beside nodes vanish."""
    parts = _leaves(raw, [])
    nodes = tuple(p for p in parts if isinstance(p, Node))
    if nodes:
        return Nodes(nodes)
    return Str("".join(parts))


def oracle_parse(g, text):
    """Unique outcome as ``(tree, end)`` or ``None``; asserts determinism."""
    results = derive(g.start, text, g.rules)
    assert len(results) == 1, f"relation is not functional here: {results}"
    (o, y), = results
    if o == FAIL:
        assert y == text
        return None
    return normalize(o), len(text) - len(y)


# -- typing derivations -----------------------------------------------------

STRING_WITNESSES = ("", "z")


def _as_value(v):
    if isinstance(v, Str):
        return ("s", v.text)
    return ("h", tuple((n.label, _as_value(n.children)) for n in v.items))


def _splits(v):
    """Every ``(v1, v2)`` whose concatenation equals ``v`` up to the equations."""
    if v[0] == "s":
        s = v[1]
        return [(("s", s[:i]), ("s", s[i:])) for i in range(len(s) + 1)]
    nodes = v[1]
    out = []
    for k in range(len(nodes) + 1):
        lefts = [("h", nodes[:k])] if k else [("s", w) for w in STRING_WITNESSES]
        rights = [("h", nodes[k:])] if k < len(nodes) else [("s", w) for w in STRING_WITNESSES]
        out.extend((a, b) for a in lefts for b in rights)
    return out


def _typed(v, t, e, fuel):
    if fuel <= 0:
        return False
    fuel -= 1
    match t:
        case ret.EmptySeq():
            return v[0] == "s"
        case ret.Var(name):
            return _typed(v, e[name], e, fuel)
        case ret.Union(t1, t2):
            return _typed(v, t1, e, fuel) or _typed(v, t2, e, fuel)
        case ret.Label(label, body):
            return (v[0] == "h" and len(v[1]) == 1 and v[1][0][0] == label
                    and _typed(v[1][0][1], body, e, fuel))
        case ret.Concat(t1, t2):
            return any(_typed(a, t1, e, fuel) and _typed(b, t2, e, fuel) for a, b in _splits(v))
        case ret.Star(body):
            return v == ("s", "") or _pieces(v, body, e, fuel)
    raise TypeError(t)


def _pieces(v, body, e, fuel):
    """``v`` is a concatenation of one or more values of type ``body``."""
    if fuel <= 0:
        return False
    if _typed(v, body, e, fuel - 1):
        return True
    return any(_typed(a, body, e, fuel - 1) and _pieces(b, body, e, fuel - 1)
               for a, b in _splits(v))


def has_type(v, t, e, fuel=14):
    return _typed(_as_value(v), t, e, fuel)


# -- enumeration ------------------------------------------------------------

def all_trees(max_nodes, labels=("A", "B"), strings=("", "x")):
    """Every normalized tree with at most ``max_nodes`` nodes."""
    by_size = {0: [Str(s) for s in strings]}
    # hedges[n]: non-empty node sequences using exactly n nodes
    hedges = {0: []}
    for n in range(1, max_nodes + 1):
        singles = [Node(label, kid) for kid in by_size[n - 1] for label in labels]
        seqs = [(node,) for node in singles]
        for first in range(1, n):
            for head in hedges[first]:
                for tail in (h for h in hedges[n - first] if len(h) == 1):
                    seqs.append(head + tail)
        hedges[n] = seqs
        by_size[n] = [Nodes(h) for h in seqs]
    out = []
    for n in range(max_nodes + 1):
        out.extend(by_size[n])
    return out

