"""Command-line front end.

Exit status: 0 on success, 1 if any verdict failed, 2 on bad usage or input.
"""

import argparse
import json
import sys
import time
from pathlib import Path

from . import checks
from .errors import BudgetExceeded, CharvarError, ParseError
from .exactcore import Matrix
from .qinv import pfaffian, q4_tau, q_torus
from .sl2trace import reduce_trace
from .spin4 import phi
from .words import module_generator_words, parse_word
from .zerosum import (
    WeightedGenerator,
    davenport,
    davenport_bounds,
    minimal_zero_sum_multisets,
    synthesize_generators,
)


class UsageError(CharvarError):
    pass


def parse_matrix(text):
    """A matrix from JSON (``[[1, 1], [0, 1]]``) or rows split by ``;`` and ``,``."""
    text = text.strip()
    if text.startswith("["):
        try:
            rows = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad JSON matrix: {exc.msg}", text, exc.pos) from None
    else:
        rows = [[cell.strip() for cell in row.split(",")] for row in text.split(";")]
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise UsageError("matrix rows must have equal length")
    return Matrix([[str(x) if not isinstance(x, str) else x for x in r] for r in rows])


def _cmd_reduce(args):
    p = reduce_trace(parse_word(args.word), args.copy)
    return str(p), {"word": args.word, "trace": str(p)}, True


def _cmd_phi(args):
    m = phi(parse_matrix(args.a), parse_matrix(args.b))
    return str(m), {"phi": m.to_json()}, True


def _cmd_q4(args):
    p = q4_tau(parse_word(args.w1), parse_word(args.w2))
    return str(p), {"w1": args.w1, "w2": args.w2, "q4": str(p)}, True


def _cmd_pfaffian(args):
    try:
        rows = json.loads(Path(args.file).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc.msg}", "", exc.pos) from None
    value = pfaffian(Matrix([[str(x) for x in r] for r in rows]))
    return str(value), {"pfaffian": str(value)}, True


def _cmd_torus(args):
    p = q_torus(args.n, args.k)
    return str(p), {"n": args.n, "k": args.k, "q": str(p)}, True


def _cmd_words(args):
    words = [str(w) for w in module_generator_words(args.N, args.nu)]
    return "\n".join(words), {"N": args.N, "nu": args.nu, "words": words}, True


def _cmd_zerosum(args):
    found = minimal_zero_sum_multisets(args.m, args.N)
    if args.figures:
        from .plotting import plot_zero_sum_lengths

        plot_zero_sum_lengths(found, Path(args.figures) / f"zerosum_{args.m}_{args.N}.png",
                              f"minimal zero-sum multisets of (Z/{args.m})^{args.N}")
    lines = ["{" + ", ".join("(" + ",".join(map(str, v)) + ")" for v in ms) + "}" for ms in found]
    data = {"m": args.m, "N": args.N, "count": len(found),
            "multisets": [[list(v) for v in ms] for ms in found]}
    return "\n".join(lines), data, True


def _cmd_davenport(args):
    d = davenport(args.m, args.N)
    lo, hi = davenport_bounds(args.m, args.N)
    return str(d), {"m": args.m, "N": args.N, "d": d, "lower": lo, "upper": hi}, lo <= d <= hi


def _cmd_synth(args):
    try:
        spec = json.loads(Path(args.spec).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {args.spec}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"bad JSON: {exc.msg}", "", exc.pos) from None
    try:
        m = int(spec["m"])
        gens = [WeightedGenerator(g["name"], tuple(g["weight"]), g.get("kind", "trace"))
                for g in spec["generators"]]
    except (KeyError, TypeError) as exc:
        raise UsageError(f"synth spec needs 'm' and 'generators' with name and weight ({exc})") from None
    products = synthesize_generators(gens, m)
    text = "\n".join(format_product(p) for p in products)
    return text, {"m": m, "products": [list(p) for p in products]}, True


def format_product(names):
    """``("t1", "t1", "t2")`` -> ``t1^2*t2``."""
    parts = []
    for name in dict.fromkeys(names):
        e = names.count(name)
        parts.append(name if e == 1 else f"{name}^{e}")
    return "*".join(parts)


def _write_verify_figures(suite, args):
    from . import presentation as pres
    from .plotting import plot_completeness, plot_davenport

    out = Path(args.figures)
    if suite in ("completeness", "all"):
        cert = pres.completeness_certificate(pres.so4_generator_map(), pres.so4_relations(), args.degree)
        plot_completeness(cert, out / "completeness_so4.png", "SO(4) relations: span vs kernel")
    if suite in ("zerosum", "all"):
        rows = []
        for m, n in [(m, 2) for m in range(2, 7)] + [(2, 3), (3, 3)]:
            lo, hi = davenport_bounds(m, n)
            rows.append({"m": m, "N": n, "d": davenport(m, n), "lower": lo, "upper": hi})
        plot_davenport(rows, out / "davenport.png")


def _verify(suite, args):
    start = time.perf_counter()
    items = checks.run_suite(suite, args.seed, args.degree)
    elapsed = round(time.perf_counter() - start, 3) if args.timing else None
    if args.figures:
        _write_verify_figures(suite, args)
    ok = all(i.ok for i in items)
    lines = []
    for i in items:
        line = f"{'ok  ' if i.ok else 'FAIL'} {i.name}"
        if i.residual:
            line += f"  residual: {i.residual}"
        lines.append(line)
    lines.append(f"{sum(i.ok for i in items)}/{len(items)} passed")
    data = {"suite": suite, "items": [i.to_json() for i in items], "elapsed": elapsed}
    return "\n".join(lines), data, ok


def _cmd_verify(args):
    return _verify(args.suite, args)


def _cmd_all(args):
    return _verify("all", args)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--out", help="write the report to this file instead of stdout")
    common.add_argument("--seed", type=int, default=checks.DEFAULT_SEED, help="seed for sampled checks")
    common.add_argument("--figures", metavar="DIR", help="also render figures into DIR")
    common.add_argument("--timing", action="store_true", help="record elapsed time in JSON reports")

    parser = argparse.ArgumentParser(prog="charvar", description="Exact computations on SO(4) and SL(2) character varieties of F_2.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("reduce", parents=[common], help="trace of a word as a Fricke polynomial")
    p.add_argument("word")
    p.add_argument("--copy", type=int, choices=(1, 2))
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("phi", parents=[common], help="spin map of a pair of 2x2 matrices")
    p.add_argument("--a", required=True)
    p.add_argument("--b", required=True)
    p.set_defaults(func=_cmd_phi)

    p = sub.add_parser("q4", parents=[common], help="Q4(w1, w2) in the copy-indexed Fricke coordinates")
    p.add_argument("--w1", required=True)
    p.add_argument("--w2", required=True)
    p.set_defaults(func=_cmd_q4)

    p = sub.add_parser("pfaffian", parents=[common], help="Pfaffian of a skew matrix in a JSON file")
    p.add_argument("--file", required=True)
    p.set_defaults(func=_cmd_pfaffian)

    p = sub.add_parser("torus", parents=[common], help="Q on the k-th power of the generic torus element")
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-k", type=int, required=True)
    p.set_defaults(func=_cmd_torus)

    p = sub.add_parser("words", parents=[common], help="words of length < nu with at most half inverted letters")
    p.add_argument("-N", type=int, default=2)
    p.add_argument("--nu", type=int, required=True, help="word-length parameter; not computed here")
    p.set_defaults(func=_cmd_words)

    p = sub.add_parser("zerosum", parents=[common], help="minimal zero-sum multisets of (Z/m)^N")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-N", type=int, required=True)
    p.set_defaults(func=_cmd_zerosum)

    p = sub.add_parser("davenport", parents=[common], help="Davenport constant of (Z/m)^N")
    p.add_argument("-m", type=int, required=True)
    p.add_argument("-N", type=int, required=True)
    p.set_defaults(func=_cmd_davenport)

    p = sub.add_parser("synth", parents=[common], help="invariant products from weighted generators")
    p.add_argument("--spec", required=True, help='JSON: {"m": 2, "generators": [{"name", "weight", "kind"}]}')
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", default="all", choices=["all", *checks.SUITES])
    p.add_argument("--degree", type=int, default=checks.DEFAULT_DEGREE)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("all", parents=[common], help="run every verification suite")
    p.add_argument("--degree", type=int, default=checks.DEFAULT_DEGREE)
    p.set_defaults(func=_cmd_all)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text, data, ok = args.func(args)
    except ParseError as exc:
        print(f"charvar: {exc}", file=sys.stderr)
        if exc.text:
            print(exc.pointer(), file=sys.stderr)
        return 2
    except (UsageError, BudgetExceeded, ValueError) as exc:
        print(f"charvar: {exc}", file=sys.stderr)
        return 2
    report = json.dumps(data, indent=2, sort_keys=True) if args.json else text
    if args.out:
        Path(args.out).write_text(report + "\n")
    else:
        print(report)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
