"""``cpeg`` command line: check, parse, type and validate.

Exit codes: 0 ok / member, 1 parse failure / not a member, 2 I/O error,
3 grammar error, 4 rejected by well-formedness, left-recursion or
guardedness checks.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

from . import ret, trees
from .analysis import check_well_formed, recursive_nonterminals, reject_left_recursion
from .engine import parse
from .errors import (
    GrammarError, LeftRecursionError, ParseDepthError, UnguardedTypeError,
    WellFormednessError,
)
from .grammar import load_grammar
from .inference import FreshSupply, dedupe, infer_expr, infer_grammar

EXIT_OK, EXIT_FAIL, EXIT_IO, EXIT_GRAMMAR, EXIT_REJECTED = range(5)


@dataclass(frozen=True)
class CliConfig:
    command: str
    grammar_path: str
    input: str | None = None
    input_path: str | None = None
    output_format: str | None = None
    full_match: bool = False
    allow_left_recursion: bool = False
    force_infer: bool = False
    dedup: bool = False

    @classmethod
    def from_args(cls, ns):
        return cls(ns.command, ns.grammar, getattr(ns, "input", None),
                   getattr(ns, "input_path", None), ns.format,
                   getattr(ns, "full_match", False),
                   getattr(ns, "allow_left_recursion", False),
                   getattr(ns, "force_infer", False), getattr(ns, "dedup", False))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cpeg", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, formats, input_=False):
        p.add_argument("-g", "--grammar", required=True, help="grammar file")
        p.add_argument("-f", "--format", choices=formats, default=None)
        if input_:
            p.add_argument("input_path", nargs="?", help="input file ('-' for stdin)")
            p.add_argument("--input", help="inline input string")
            p.add_argument("--full-match", action="store_true",
                           help="fail unless the whole input is consumed")
            p.add_argument("--allow-left-recursion", action="store_true",
                           help="skip the left-recursion guard")

    common(sub.add_parser("check", help="report well-formedness, left recursion, guardedness"),
           ["text", "json"])
    common(sub.add_parser("parse", help="parse input and print the tree"),
           ["sexpr", "json", "text"], input_=True)
    p = sub.add_parser("type", help="print the inferred type and its global set")
    common(p, ["text", "json"])
    p.add_argument("--force-infer", action="store_true", help="infer even if not well-formed")
    p.add_argument("--dedup", action="store_true", help="merge identical bindings")
    p = sub.add_parser("validate", help="parse, then check the tree against the inferred type")
    common(p, ["text", "json"], input_=True)
    p.add_argument("--force-infer", action="store_true", help="infer even if not well-formed")
    return parser


def _read_input(cfg, stdin):
    if cfg.input is not None:
        return cfg.input
    if cfg.input_path in (None, "-"):
        return stdin.read()
    with open(cfg.input_path, encoding="utf-8") as f:
        return f.read()


def _check(g, cfg, out):
    report = check_well_formed(g)
    info = recursive_nonterminals(g)
    result = infer_expr(g.start, {}, FreshSupply(), g)
    cycle = ret.unguarded_cycle(result.bindings, result.root_type)
    clean = report.is_well_formed and not info.left_recursive_cycles and cycle is None
    if cfg.output_format == "json":
        data = report.to_data()
        data["recursive_nonterminals"] = sorted(info.recursive_nonterminals)
        data["left_recursive_cycles"] = [list(c) for c in info.left_recursive_cycles]
        data["guarded"] = cycle is None
        data["unguarded_cycle"] = cycle
        out.write(json.dumps(data, indent=2) + "\n")
    else:
        out.write(f"well-formedness: {report.to_text()}\n")
        cycles = "; ".join(" -> ".join(c + c[:1]) for c in info.left_recursive_cycles)
        out.write(f"left recursion: {cycles or 'none'}\n")
        out.write("guardedness: " + ("ok" if cycle is None else
                                      "unguarded " + " -> ".join(cycle + cycle[:1])) + "\n")
    return EXIT_OK if clean else EXIT_REJECTED


def _parse(g, cfg, out, err, stdin):
    if not cfg.allow_left_recursion:
        reject_left_recursion(g)
    text = _read_input(cfg, stdin)
    outcome = parse(g, text, full_match=cfg.full_match)
    if not outcome.ok:
        err.write(f"parse failed at position {outcome.position}\n")
        return EXIT_FAIL, None
    return EXIT_OK, outcome


def run(argv=None, stdin=None, stdout=None, stderr=None) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    cfg = CliConfig.from_args(build_parser().parse_args(argv))
    try:
        g = load_grammar(cfg.grammar_path)
        if cfg.command == "check":
            return _check(g, cfg, out)
        if cfg.command == "type":
            result = infer_grammar(g, force=cfg.force_infer)
            for note in result.diagnostics:
                err.write(f"warning: {note}\n")
            if cfg.dedup:
                result = dedupe(result)
            out.write(result.to_json(indent=2) + "\n" if cfg.output_format == "json"
                      else result.serialize())
            return EXIT_OK
        if cfg.command == "parse":
            code, outcome = _parse(g, cfg, out, err, stdin)
            if outcome is not None:
                out.write(trees.serialize(outcome.value, cfg.output_format or "sexpr") + "\n")
            return code
        if cfg.command == "validate":
            result = infer_grammar(g, force=cfg.force_infer)
            code, outcome = _parse(g, cfg, out, err, stdin)
            if outcome is None:
                return code
            ok = ret.member(outcome.value, result.root_type, result.bindings)
            if cfg.output_format == "json":
                out.write(json.dumps({"member": ok, "tree": trees.to_data(outcome.value)}) + "\n")
            else:
                out.write("MEMBER\n" if ok else "NOT-MEMBER\n")
            return EXIT_OK if ok else EXIT_FAIL
    except OSError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_IO
    except GrammarError as exc:
        err.write(f"grammar error: {exc}\n")
        return EXIT_GRAMMAR
    except (WellFormednessError, LeftRecursionError, UnguardedTypeError) as exc:
        err.write(f"rejected: {exc}\n")
        return EXIT_REJECTED
    except ParseDepthError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_FAIL
    raise AssertionError(cfg.command)


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
