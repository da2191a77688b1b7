"""Command line: ``parse``, ``lint`` and ``enumerate``.

Exit codes: 0 success, 1 no parse / lint failures, 2 usage, lexicon or
unknown-word errors.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .avm import AvmSyntaxError, pretty_avm
from .grammar import LpMode, Reject, combine, Derivation, LEXICAL
from .lexicon import LexiconError, builtin_lexicon, check_lexicon, load_lexicon
from .parser import ParseError, enumerate_orders, parse, tokenize
from .ulf import extract_ulf, print_ulf

SHOW_CHOICES = ("tree", "avm", "ulf")
CHAIN_VERBS = ("laten", "helpen")


class UsageError(Exception):
    pass


def _show(value: str) -> list[str]:
    items = [s.strip() for s in value.split(",") if s.strip()]
    bad = [s for s in items if s not in SHOW_CHOICES]
    if not items or bad:
        raise argparse.ArgumentTypeError(
            f"--show takes a comma list of {', '.join(SHOW_CHOICES)}"
        )
    return items


def build_arg_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="verbcluster",
        description="Parse Dutch and German verb clusters with argument composition.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="parse a sentence")
    p.add_argument("sentence", nargs="?")
    p.add_argument("--file", type=Path, help="one sentence per line")
    p.add_argument("--lang", choices=["nl", "de"], default="nl")
    p.add_argument("--show", type=_show, default=["tree", "ulf"])
    p.add_argument("--lexicon", type=Path)
    p.add_argument("--explain", action="store_true",
                   help="report rejected unifications on stderr")
    p.add_argument("--ascii", action="store_true", help="use & in ULF output")

    lint = sub.add_parser("lint", help="validate a lexicon file")
    lint.add_argument("lexicon_path", type=Path)

    en = sub.add_parser("enumerate", help="admissible verb orders for a governor chain")
    en.add_argument("depth", type=int)
    en.add_argument("--lexicon", type=Path)
    return ap


def _load(path: Path | None):
    if path is None:
        return builtin_lexicon()
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise UsageError(f"cannot read lexicon {path}: {e.strerror}") from None
    try:
        return load_lexicon(text)
    except (AvmSyntaxError, LexiconError) as e:
        raise UsageError(f"{path}: {e}") from None


def _parse_one(sentence: str, lex, args, out, err) -> int:
    tokens = tokenize(sentence)
    mode = LpMode(args.lang)
    trace = [] if args.explain else None
    derivs = parse(tokens, lex, mode, trace=trace)
    out.write(f"{len(derivs)} parse{'s' if len(derivs) != 1 else ''}: {' '.join(tokens)}\n")
    for i, d in enumerate(derivs, 1):
        if len(derivs) > 1:
            out.write(f"-- parse {i}\n")
        if "tree" in args.show:
            out.write(d.pretty() + "\n")
        if "avm" in args.show:
            out.write(pretty_avm(d.sign) + "\n")
        if "ulf" in args.show:
            out.write("ULF: " + print_ulf(extract_ulf(d.sign), ascii=args.ascii) + "\n")
    if trace:
        for r in trace:
            if r.failure is not None:
                err.write(f"rejected {r.rule}: {r.failure}\n")
    return 0 if derivs else 1


def cmd_parse(args, out, err) -> int:
    lex = _load(args.lexicon)
    if args.file is not None:
        if args.sentence is not None:
            raise UsageError("give a sentence or --file, not both")
        try:
            lines = args.file.read_text(encoding="utf-8").splitlines()
        except OSError as e:
            raise UsageError(f"cannot read {args.file}: {e.strerror}") from None
        sentences = [ln for ln in lines if ln.strip()]
    elif args.sentence is not None:
        sentences = [args.sentence]
    else:
        raise UsageError("no sentence given")

    status = 0
    for i, s in enumerate(sentences):
        if i:
            out.write("\n")
        try:
            rc = _parse_one(s, lex, args, out, err)
        except ParseError as e:
            err.write(f"error: {e}\n")
            rc = 2
        status = max(status, rc)
    return status


def cmd_lint(args, out, err) -> int:
    try:
        text = args.lexicon_path.read_text(encoding="utf-8")
    except OSError as e:
        err.write(f"error: cannot read {args.lexicon_path}: {e.strerror}\n")
        return 2
    try:
        _, reports = check_lexicon(text)
    except AvmSyntaxError as e:
        out.write(f"FAIL syntax: {e}\n")
        return 1
    if not reports:
        err.write("warning: no entries\n")
    failed = 0
    for r in reports:
        if r.ok:
            out.write(f"ok   {r.form} (line {r.line})\n")
        else:
            failed += 1
            out.write(f"FAIL {r.form} (line {r.line}): {'; '.join(r.problems)}\n")
    out.write(f"{len(reports)} entries, {failed} failed\n")
    return 1 if failed else 0


def governor_chain(depth: int, lex) -> Derivation:
    """zag governing laten/helpen ... governing voeren, built in NL order."""
    if not 1 <= depth <= 4:
        raise UsageError("depth must be between 1 and 4")
    words = ["voeren"]
    if depth >= 2:
        words = ["zag", *CHAIN_VERBS[len(CHAIN_VERBS) - (depth - 2):], "voeren"]
    leaves = []
    for w in words:
        signs = lex.lookup(w)
        if not signs:
            raise UsageError(f"lexicon has no entry for {w!r}")
        leaves.append(Derivation(signs[0], LEXICAL))
    d = leaves[-1]
    for leaf in reversed(leaves[:-1]):
        d = combine("cluster_schema", [leaf, d], LpMode.NL)
    return d


def cmd_enumerate(args, out, err) -> int:
    lex = _load(args.lexicon)
    try:
        chain = governor_chain(args.depth, lex)
    except Reject as r:
        err.write(f"error: cannot build chain: {r}\n")
        return 2
    nl = [" ".join(o) for o in enumerate_orders(chain, LpMode.NL)]
    de = [" ".join(o) for o in enumerate_orders(chain, LpMode.DE)]
    width = max(len(s) for s in nl + ["NL"])
    out.write(f"depth {args.depth}\n")
    out.write(f"{'NL'.ljust(width)}  | DE\n")
    for a, b in zip(nl + [""] * (len(de) - len(nl)), de + [""] * (len(nl) - len(de))):
        out.write(f"{a.ljust(width)}  | {b}\n")
    return 0


COMMANDS = {"parse": cmd_parse, "lint": cmd_lint, "enumerate": cmd_enumerate}


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    ap = build_arg_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        return COMMANDS[args.command](args, out, err)
    except UsageError as e:
        err.write(f"error: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
