"""Command-line interface: ``ftag COMMAND [options]``.

Exit status is 0 on success or acceptance, 1 on a well-formed rejection or
difference, and 2 on usage or input errors.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import List, Optional

from .composer import CompositionError, Rejected, bracket, finalize, tree_yield
from .derivation import Derivation, parse_derivation
from .grammar_io import (
    GrammarSyntaxError, GrammarValidationError, bundled_path, load_grammar,
)
from .lint import lint_extraction_pair
from .mc import MCFailure, compare, language_sample, mc_parse, mc_realize
from .parser import check_derivation, parse, tokenize
from .trees import Grammar, format_address, validate_grammar

EXIT_OK, EXIT_REJECT, EXIT_ERROR = 0, 1, 2


class UsageError(Exception):
    pass


class _Out:
    def __init__(self, stream, fmt: str):
        self.stream = stream
        self.records = fmt == "records"
        self.color = (fmt == "pretty" and os.environ.get("FTAG_COLOR", "1") != "0"
                      and hasattr(stream, "isatty") and stream.isatty())

    def line(self, text: str = ""):
        self.stream.write(text + "\n")

    def head(self, text: str):
        self.line(f"\033[1m{text}\033[0m" if self.color else text)

    def rec(self, *fields):
        self.line("\t".join(str(f) for f in fields))

    def say(self, kind: str, text: str, pretty: Optional[str] = None):
        """One line: a ``kind``-tagged record, or ``pretty`` (default ``text``)."""
        if self.records:
            self.rec(kind, text)
        else:
            self.line(text if pretty is None else pretty)


def _read_grammar(path: str, validate: bool = True) -> Grammar:
    """Load ``path``; a bare file name not found on disk falls back to the
    grammars shipped with the package."""
    p = Path(path)
    if not p.exists():
        shipped = bundled_path(p.name)
        if p.parent == Path(".") and shipped.is_file():
            return load_grammar(shipped.read_text(encoding="utf-8"), validate=validate)
        raise UsageError(f"cannot read grammar {path!r}")
    return load_grammar(p.read_text(encoding="utf-8"), validate=validate)


def _tokens(args) -> List[str]:
    if args.tokens is not None:
        return [t for t in args.tokens.split(",") if t]
    if args.sentence is not None:
        return tokenize(args.sentence)
    raise UsageError("give a sentence with -s or tokens with --tokens")


def _need(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required for this command")
    return value


def _show_derivation(out: _Out, n: int, d: Derivation, final, show_features: bool):
    if out.records:
        for r in d.records():
            out.rec("record", n, r.parent, r.operation, format_address(r.address),
                    r.child, r.treeset or "-")
        out.rec("tree", n, bracket(final, show_features))
        return
    out.head(f"derivation {n}")
    for line in d.pretty().splitlines():
        out.line("  " + line)
    out.line("  " + bracket(final, show_features))


def cmd_parse(args, out: _Out) -> int:
    g = _read_grammar(_need(args.grammar, "-g"))
    tokens = _tokens(args)
    result = parse(g, tokens, max_trees=args.max_trees, explain=args.explain)
    n = len(result.derivations)
    if out.records:
        out.rec("sentence", " ".join(tokens))
        out.rec("derivations", n)
    else:
        out.line(f"{n} derivation{'' if n == 1 else 's'} for: {' '.join(tokens)}")
    for i, (d, final) in enumerate(result.derivations, 1):
        _show_derivation(out, i, d, final, args.show_features)
    if result.tree_limit_cut:
        msg = "tree budget reached; raise --max-trees to search further"
        out.say("note", msg, f"note: {msg}")
    if args.explain:
        if not out.records:
            out.head(f"rejected candidates: {len(result.rejected)}")
        for diag in result.rejected:
            if out.records:
                where = (f"{diag.location[0]}@{format_address(diag.location[1])}"
                         if diag.location else "-")
                out.rec("rejected", diag.derivation or "-", diag.reason, where,
                        diag.attribute or "-", diag.detail or "-")
            else:
                out.line(f"  {diag.derivation or '(none)'}")
                out.line(f"    {diag}")
    return EXIT_OK if n else EXIT_REJECT


def cmd_validate(args, out: _Out) -> int:
    g = _read_grammar(_need(args.grammar, "-g"), validate=False)
    violations = validate_grammar(g)
    for v in violations:
        if out.records:
            out.rec("violation", v.tree, format_address(v.address), v.rule, v.message)
        else:
            out.line(str(v))
    if not out.records:
        out.line(f"{len(g.trees)} trees, {len(violations)} violation(s)")
    return EXIT_REJECT if violations else EXIT_OK


def _triple(items: Optional[List[str]]):
    if not items:
        raise UsageError("--triple eps=NAME filler=NAME host=NAME is required")
    parts = {}
    for item in items:
        key, eq, value = item.partition("=")
        if not eq or key not in ("eps", "filler", "host") or not value:
            raise UsageError(f"bad --triple item {item!r}")
        parts[key] = value
    if set(parts) != {"eps", "filler", "host"}:
        raise UsageError("--triple needs eps=, filler= and host=")
    return parts["eps"], parts["filler"], parts["host"]


def cmd_lint(args, out: _Out) -> int:
    g = _read_grammar(_need(args.grammar, "-g"))
    names = _triple(args.triple)
    for name in names:
        if name not in g.trees:
            raise UsageError(f"no tree named {name!r}")
    violations = lint_extraction_pair(*(g.trees[n] for n in names))
    for v in violations:
        if out.records:
            out.rec("violation", v.tree, format_address(v.address), v.rule, v.message)
        else:
            out.line(f"clause ({v.rule}) {v.tree}@{format_address(v.address)}: {v.message}")
    if not out.records:
        out.line(f"{len(violations)} violation(s)")
    return EXIT_REJECT if violations else EXIT_OK


def cmd_derive(args, out: _Out) -> int:
    g = _read_grammar(_need(args.grammar, "-g"))
    try:
        d = parse_derivation(_need(args.derivation, "-d"))
    except ValueError as exc:
        raise UsageError(f"bad derivation: {exc}") from None
    try:
        final = finalize(mc_realize(g, d)) if g.treesets else check_derivation(g, d)
    except (Rejected, MCFailure) as exc:
        msg = exc.describe() if isinstance(exc, Rejected) else str(exc)
        out.say("rejected", msg, f"rejected: {msg}")
        return EXIT_REJECT
    if out.records:
        out.rec("tree", bracket(final, args.show_features))
        out.rec("yield", " ".join(tree_yield(final)))
    else:
        out.line(bracket(final, args.show_features))
        out.line("yield: " + " ".join(tree_yield(final)))
    return EXIT_OK


def cmd_compare(args, out: _Out) -> int:
    g = _read_grammar(_need(args.grammar, "-g"))
    m = _read_grammar(_need(args.mc_grammar, "-m"))
    tokens = _tokens(args)
    left = parse(g, tokens, max_trees=args.max_trees).derivations
    right = mc_parse(m, tokens, max_trees=args.max_trees)
    if not left or not right:
        msg = (f"{len(left)} feature-based and {len(right)} multi-component "
               "derivation(s); nothing to compare")
        out.say("compare", f"unequal\t{msg}", msg)
        return EXIT_REJECT
    reports = [compare(a, b) for (_, a), (_, b) in zip(left, right)]
    equal = len(left) == len(right) and all(r.equal for r in reports)
    for i, r in enumerate(reports, 1):
        if out.records:
            diff = r.difference[1] if r.difference else "-"
            out.rec("pair", i, "equal" if r.equal else "unequal",
                    "yields-equal" if r.yields_equal else "yields-differ", diff)
        else:
            out.head(f"pair {i}")
            for line in str(r).splitlines():
                out.line("  " + line)
    if len(left) != len(right):
        msg = f"{len(left)} feature-based vs {len(right)} multi-component derivations"
        out.say("count", msg)
    out.say("compare", "equal" if equal else "unequal", "equal" if equal else "not equal")
    return EXIT_OK if equal else EXIT_REJECT


def cmd_sample(args, out: _Out) -> int:
    g = _read_grammar(_need(args.grammar, "-g"))
    max_len = _need(args.max_len, "--max-len")
    a = language_sample(g, max_len, args.max_trees)
    if args.mc_grammar is None:
        for s in sorted(a):
            out.say("string", " ".join(s))
        return EXIT_OK
    b = language_sample(_read_grammar(args.mc_grammar), max_len, args.max_trees)
    only_a, only_b = sorted(a - b), sorted(b - a)
    if out.records:
        out.rec("sizes", len(a), len(b))
        for s in only_a:
            out.rec("only-feature-based", " ".join(s))
        for s in only_b:
            out.rec("only-multi-component", " ".join(s))
    else:
        out.line(f"feature-based: {len(a)} strings, multi-component: {len(b)} strings")
        for s in only_a:
            out.line(f"  only feature-based: {' '.join(s)}")
        for s in only_b:
            out.line(f"  only multi-component: {' '.join(s)}")
        out.line("identical" if not (only_a or only_b) else "different")
    return EXIT_REJECT if only_a or only_b else EXIT_OK


COMMANDS = {
    "parse": cmd_parse,
    "validate": cmd_validate,
    "lint-extraction": cmd_lint,
    "derive": cmd_derive,
    "compare": cmd_compare,
    "sample": cmd_sample,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ftag", description="Feature-based TAG engine.")
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("-g", "--grammar", help="grammar file (or a bundled grammar name)")
    p.add_argument("-m", "--mc-grammar", help="multi-component grammar file")
    p.add_argument("-s", "--sentence", help="sentence, tokenized by the parser")
    p.add_argument("--tokens", help="comma-separated tokens, used as given")
    p.add_argument("-d", "--derivation", help="derivation for the derive command")
    p.add_argument("--show-features", action="store_true")
    p.add_argument("--explain", action="store_true", help="list rejected candidates")
    p.add_argument("--max-trees", type=int)
    p.add_argument("--max-len", type=int)
    p.add_argument("--triple", nargs="+", metavar="ROLE=TREE",
                   help="eps=NAME filler=NAME host=NAME")
    p.add_argument("--format", choices=("pretty", "records"), default="pretty")
    return p


def main(argv: Optional[List[str]] = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, _Out(stdout, args.format))
    except UsageError as exc:
        stderr.write(f"ftag: {exc}\n")
    except (GrammarSyntaxError, GrammarValidationError, CompositionError, OSError) as exc:
        stderr.write(f"ftag: {exc}\n")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
