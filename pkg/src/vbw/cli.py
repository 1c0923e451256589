"""Command-line front end: ``vbw {normalize,eval,kb-eq,classify,verify}``.

Every command prints one JSON report on stdout and a short summary on
stderr.  Exit codes: 0 success, 1 verification failure, 2 usage or parse
error, 3 budget exhausted.
"""

from __future__ import annotations

import argparse
import inspect
import json
import sys
import time

from . import __version__, catalog, homsearch, suites
from .kbeq import kb_equal
from .perm import DegreeError
from .vb import to_semidirect
from .words import KBWord, VBWord, WordParseError, parse_sym_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3

# sources above these degrees run only with --stretch
LARGE_SOURCE = {"sym": 6, "vb": 5}


class UsageError(Exception):
    pass


def _element_json(x) -> object:
    return x.to_json()


def cmd_normalize(args) -> tuple[dict, int, str]:
    x = to_semidirect(VBWord.parse(args.word, args.n))
    out = {"kb": str(x.kb), "perm": x.perm.to_json()}
    return out, EXIT_OK, f"{args.word} = ({x.kb}, {x.perm})"


def cmd_eval(args) -> tuple[dict, int, str]:
    try:
        hom = catalog.lookup(args.hom, args.n)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from exc
    if hom.source == "vb":
        word = VBWord.parse(args.word, args.n)
    else:
        word = parse_sym_word(args.word, args.n)
    img = hom.evaluate(word)
    out = {"hom": hom.name, "source": f"{hom.source}{hom.n}", "target": f"{hom.target}{hom.m}",
           "image": _element_json(img)}
    return out, EXIT_OK, f"{hom.name}({args.word}) = {img}"


def cmd_kb_eq(args) -> tuple[dict, int, str]:
    u = KBWord.parse(args.u, args.n)
    v = KBWord.parse(args.v, args.n)
    verdict = kb_equal(u, v, args.budget)
    code = EXIT_BUDGET if verdict.unknown else EXIT_OK
    return verdict.to_json(), code, f"{verdict.outcome} (tier {verdict.tier})"


def _degree(text: str, prefixes: tuple[str, ...]) -> tuple[str, int]:
    for p in prefixes:
        if text.startswith(p) and text[len(p):].isdigit():
            return p, int(text[len(p):])
    raise UsageError(f"expected one of {'/'.join(p + 'K' for p in prefixes)}, got {text!r}")


def cmd_classify(args) -> tuple[dict, int, str]:
    kind, n = _degree(args.source, ("sym", "vb"))
    _, m = _degree(args.target, ("sym",))
    if n < 2 or m < 1:
        raise UsageError("degrees must be at least 2 (source) and 1 (target)")
    if (n > LARGE_SOURCE[kind] or m > LARGE_SOURCE[kind]) and not args.stretch:
        raise UsageError(f"{args.source} -> {args.target} is a long run; pass --stretch to allow it")
    rep = homsearch.classify(args.source, m, args.jobs)
    out = rep.to_json()
    out.pop("timing")
    code = EXIT_FAIL if rep.catalog_match is False else EXIT_OK
    tags = ", ".join(sorted(set(rep.tags())))
    return out, code, (f"{len(rep.classes)} classes ({rep.raw_count} homomorphisms), "
                       f"catalog match: {rep.catalog_match}; tags: {tags}")


def cmd_verify(args) -> tuple[dict, int, str]:
    fn = suites.SUITES[args.suite]
    kwargs = {}
    if args.budget is not None and "budget" in inspect.signature(fn).parameters:
        kwargs["budget"] = args.budget
    rep = fn(**kwargs)
    out = rep.to_json()
    out.pop("timing")
    if rep.passed:
        code = EXIT_OK
    elif rep.count("fail"):
        code = EXIT_FAIL
    else:
        code = EXIT_BUDGET
    return out, code, rep.summary()


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vbw", description="Exact computations in virtual braid groups.")
    parser.add_argument("--version", action="version", version=f"vbw {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", help="fold a VB_n word into (KB_n word, permutation)")
    p.add_argument("--n", type=int, required=True, help="number of strands")
    p.add_argument("word", help='VB word, e.g. "t1 s1 s2\'"')
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("eval", help="evaluate a catalog homomorphism on a word")
    p.add_argument("--hom", required=True, help="name such as piP, zeta1 or nu6.piK")
    p.add_argument("--n", type=int, required=True, help="degree of the source group")
    p.add_argument("word")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("kb-eq", help="decide equality of two KB_n words")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--budget", type=int, default=None, help="node budget (default: VBW_BUDGET or 10000)")
    p.add_argument("u")
    p.add_argument("v")
    p.set_defaults(func=cmd_kb_eq)

    p = sub.add_parser("classify", help="classify homomorphisms symK/vbK -> symM up to conjugacy")
    p.add_argument("--from", dest="source", required=True, help="symK or vbK")
    p.add_argument("--to", dest="target", required=True, help="symM")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--stretch", action="store_true", help="allow sources or targets beyond sym6/vb5")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("--suite", required=True, choices=sorted(suites.SUITES))
    p.add_argument("--budget", type=int, default=None)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    t0 = time.perf_counter()
    try:
        outputs, code, summary = args.func(args)
    except (UsageError, WordParseError, DegreeError, ValueError) as exc:
        print(f"vbw: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = {
        "command": args.command,
        "inputs": {k: v for k, v in sorted(vars(args).items()) if k not in ("func", "command")},
        "outputs": outputs,
        "verdict": {EXIT_OK: "ok", EXIT_FAIL: "verification_failure", EXIT_BUDGET: "unknown"}[code],
        "timing": {"seconds": round(time.perf_counter() - t0, 3)},
        "version": __version__,
    }
    print(json.dumps(report))
    print(summary, file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
