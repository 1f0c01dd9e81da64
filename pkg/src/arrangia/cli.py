"""Command-line interface.

Subcommands: stats, bijection, count, distribution, series, verify,
export.  Output is plain UTF-8 text and byte-deterministic for fixed
inputs.  Exit codes: 0 on success, 1 when a verification check fails,
2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from typing import Sequence

from . import algebra, bijections, core, patterns, stats, verify
from .patterns import ClassSpec

_CLASS_HELP = (
    "class tag: S (permutations), D (derangements), A<k> (arrangements), "
    "P<k> (permutation forms), D<k> (derangement forms), dyck"
)


@dataclass(frozen=True)
class Config:
    """Runtime configuration; output is always deterministic."""

    max_objects: int = patterns.DEFAULT_MAX_OBJECTS
    default_order: int = 8
    output_format: str = "csv"
    deterministic: bool = True

    def __post_init__(self) -> None:
        if self.max_objects < 1:
            raise ValueError("object cap must be at least 1")
        if self.default_order < 0:
            raise ValueError("default order must be nonnegative")

    @classmethod
    def from_env(cls) -> "Config":
        cap = os.environ.get("ARRANGIA_MAX_OBJECTS")
        return cls(max_objects=int(cap)) if cap else cls()


def _parse_class(tag: str, n: int, pattern: tuple[int, ...] | None = None) -> ClassSpec:
    if tag == "S":
        return ClassSpec("perms", n, pattern=pattern)
    if tag == "D":
        return ClassSpec("derangements", n, pattern=pattern)
    if tag == "dyck":
        return ClassSpec("dyck", n, pattern=pattern)
    if len(tag) >= 2 and tag[0] in ("A", "P", "D") and tag[1:].isdigit():
        family = {"A": "arrangements", "P": "permForms", "D": "derForms"}[tag[0]]
        return ClassSpec(family, n, k=int(tag[1:]), pattern=pattern)
    raise ValueError(f"unknown class tag {tag!r}")


def _parse_pattern(text: str) -> tuple[int, ...]:
    if text.isdigit():
        return core.check_permutation(int(ch) for ch in text)
    return core.check_permutation(core.parse_word(text))


def _print_distribution(dist, fmt: str) -> None:
    if fmt == "poly":
        print(dist.poly_string())
    else:
        for line in dist.csv_lines():
            print(line)


def _cmd_stats(args) -> int:
    names = tuple(name.strip() for name in args.stats.split(",") if name.strip())
    if not names:
        raise ValueError("no statistics requested")
    if args.word is not None:
        word = core.parse_word(args.word)
        for name in names:
            print(f"{name},{stats.statistic(name, word)}")
        return 0
    if args.klass is None or args.n is None:
        raise ValueError("need either --word or --class and --n")
    pattern = _parse_pattern(args.pattern) if args.pattern else None
    spec = _parse_class(args.klass, args.n, pattern)
    dist = patterns.class_distribution(spec, names)
    _print_distribution(dist, args.format)
    return 0


def _word_text(args) -> str:
    if args.word is not None:
        return args.word
    if getattr(args, "file", None):
        with open(args.file, encoding="utf-8") as handle:
            return handle.read().strip()
    raise ValueError("need --word or --file")


def _bijection_psi(args) -> int:
    word = core.parse_word(_word_text(args))
    arr = core.from_derangement_form(word, args.k)
    image = bijections.slot_swap(arr)
    print(core.format_word(core.derangement_form(image)))
    if args.roundtrip:
        back = bijections.slot_swap(image)
        if back != arr:
            print("involution: FAILED", file=sys.stderr)
            return 1
        print("involution: ok")
    return 0


def _parse_nonneg_word(text: str) -> tuple[int, ...]:
    # words for the standardization live over {0, 1, ...}: zero is allowed
    letters = tuple(int(tok) for tok in text.split())
    if any(v < 0 for v in letters):
        raise ValueError("letters must be nonnegative")
    return letters


def _bijection_gr_forward(args) -> int:
    word = _parse_nonneg_word(_word_text(args))
    pair = bijections.gr_forward(word)
    print("sigma:", core.format_word(pair.sigma))
    print("c:", core.format_word(pair.c) if pair.c else "")
    if args.roundtrip:
        if bijections.gr_inverse(pair) != word:
            print("roundtrip: FAILED", file=sys.stderr)
            return 1
        print("roundtrip: ok")
    return 0


def _bijection_gr_inverse(args) -> int:
    if args.sigma is None or args.c is None:
        raise ValueError("gr-inverse needs --sigma and --c")
    sigma = core.check_permutation(core.parse_word(args.sigma))
    cvec = _parse_nonneg_word(args.c)
    pair = bijections.GRPair(sigma, cvec)
    word = bijections.gr_inverse(pair)
    print(core.format_word(word))
    if args.roundtrip:
        if bijections.gr_forward(word) != pair:
            print("roundtrip: FAILED", file=sys.stderr)
            return 1
        print("roundtrip: ok")
    return 0


def _bijection_krattenthaler(args) -> int:
    if args.heights is None:
        raise ValueError("krattenthaler needs --heights")
    heights = tuple(int(tok) for tok in args.heights.split())
    print(core.format_word(bijections.krattenthaler(heights)))
    return 0


def _bijection_lyndon(args) -> int:
    word = _parse_nonneg_word(_word_text(args))
    factors = bijections.lyndon_factorize(word)
    print(" | ".join(core.format_word(f) for f in factors))
    return 0


_BIJECTIONS = {
    "psi": _bijection_psi,
    "gr-forward": _bijection_gr_forward,
    "gr-inverse": _bijection_gr_inverse,
    "krattenthaler": _bijection_krattenthaler,
    "lyndon": _bijection_lyndon,
}


def _cmd_bijection(args) -> int:
    try:
        handler = _BIJECTIONS[args.map]
    except KeyError:
        raise ValueError(f"unknown map {args.map!r}") from None
    return handler(args)


def _cmd_count(args) -> int:
    pattern = _parse_pattern(args.pattern) if args.pattern else None
    lo = args.n_min if args.n_min is not None else args.n
    hi = args.n
    for n in range(lo, hi + 1):
        spec = _parse_class(args.klass, n, pattern)
        count = patterns.class_size(spec)
        if args.oeis or lo != hi:
            print(f"{n} {count}")
        else:
            print(count)
    return 0


def _cmd_distribution(args) -> int:
    names = tuple(name.strip() for name in args.stats.split(",") if name.strip())
    pattern = _parse_pattern(args.pattern) if args.pattern else None
    spec = _parse_class(args.klass, args.n, pattern)
    dist = patterns.class_distribution(spec, names)
    _print_distribution(dist, args.format)
    return 0


def _cmd_series(args) -> int:
    if args.action != "expand":
        raise ValueError(f"unknown series action {args.action!r}")
    series = algebra.expand_closed_form(args.catalog_id, args.order)
    if args.format == "csv":
        for i, c in enumerate(series.coeffs):
            print(f"{i},{c}")
        return 0
    if all(isinstance(c, int) or getattr(c, "is_constant", lambda: False)() for c in series.coeffs):
        print(",".join(str(c) for c in series.coeffs))
    else:
        for i, c in enumerate(series.coeffs):
            print(f"{series.var}^{i}: {c}")
    return 0


def _cmd_verify(args) -> int:
    if args.check:
        params = (verify.FULL_PARAMS if args.profile == "full" else verify.QUICK_PARAMS)[
            args.check
        ]
        results = [verify.run_check(args.check, **params)]
    else:
        results = verify.run_all(args.profile)
    all_pass = True
    for res in results:
        if args.json:
            print(res.to_json())
        else:
            line = f"{res.check_id}: {res.status} ({res.seconds:.2f}s)"
            if res.witness:
                line += f" [{res.witness}]"
            print(line)
        all_pass = all_pass and res.passed
    return 0 if all_pass else 1


def _cmd_export(args) -> int:
    pattern = _parse_pattern(args.pattern) if args.pattern else None
    for n in range(1, args.n_max + 1):
        spec = _parse_class(args.klass, n, pattern)
        print(f"{n} {patterns.class_size(spec)}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="arrangia",
        description=(
            "Colored permutations: statistics, bijections, pattern counting, "
            "and exact generating-function verification."
        ),
    )
    sub = parser.add_subparsers(dest="command")

    p_stats = sub.add_parser("stats", help="evaluate statistics or distributions")
    p_stats.add_argument("--word", help="signed word, e.g. '4 1 -1 5 2'")
    p_stats.add_argument("--class", dest="klass", help=_CLASS_HELP)
    p_stats.add_argument("--n", type=int)
    p_stats.add_argument("--pattern")
    p_stats.add_argument("--stats", required=True, help="comma-separated names")
    p_stats.add_argument("--format", choices=("csv", "poly"), default="csv")
    p_stats.set_defaults(handler=_cmd_stats)

    p_bij = sub.add_parser("bijection", help="apply a named map")
    p_bij.add_argument("map", choices=sorted(_BIJECTIONS))
    p_bij.add_argument("--k", type=int, default=1)
    p_bij.add_argument("--word")
    p_bij.add_argument("--file", help="read the word from a file instead")
    p_bij.add_argument("--sigma")
    p_bij.add_argument("--c")
    p_bij.add_argument("--heights")
    p_bij.add_argument("--roundtrip", action="store_true")
    p_bij.set_defaults(handler=_cmd_bijection)

    p_count = sub.add_parser("count", help="count objects, optionally avoiders")
    p_count.add_argument("--class", dest="klass", required=True, help=_CLASS_HELP)
    p_count.add_argument("--pattern")
    p_count.add_argument("--n", type=int, required=True)
    p_count.add_argument("--n-min", type=int)
    p_count.add_argument("--oeis", action="store_true", help="print 'n a(n)' lines")
    p_count.set_defaults(handler=_cmd_count)

    p_dist = sub.add_parser("distribution", help="joint statistic distribution")
    p_dist.add_argument("--class", dest="klass", required=True, help=_CLASS_HELP)
    p_dist.add_argument("--pattern")
    p_dist.add_argument("--n", type=int, required=True)
    p_dist.add_argument("--stats", required=True)
    p_dist.add_argument("--format", choices=("csv", "poly"), default="csv")
    p_dist.set_defaults(handler=_cmd_distribution)

    p_series = sub.add_parser("series", help="expand a catalog closed form")
    p_series.add_argument("action", choices=("expand",))
    p_series.add_argument("catalog_id", choices=algebra.CATALOG_IDS, metavar="CATALOG-ID")
    p_series.add_argument("--order", type=int, required=True)
    p_series.add_argument("--format", choices=("csv", "poly"), default="poly")
    p_series.set_defaults(handler=_cmd_series)

    p_verify = sub.add_parser("verify", help="run verification checks")
    p_verify.add_argument("--profile", choices=("quick", "full"), default="quick")
    p_verify.add_argument("--check", choices=sorted(verify.CHECKS), metavar="ID")
    p_verify.add_argument("--json", action="store_true")
    p_verify.set_defaults(handler=_cmd_verify)

    p_export = sub.add_parser("export", help="emit b-file style 'n a(n)' lines")
    p_export.add_argument("--class", dest="klass", required=True, help=_CLASS_HELP)
    p_export.add_argument("--pattern")
    p_export.add_argument("--n-max", type=int, required=True)
    p_export.set_defaults(handler=_cmd_export)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        Config.from_env()
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not getattr(args, "handler", None):
        parser.print_help()
        return 0
    try:
        return args.handler(args)
    except (ValueError, patterns.ResourceLimitError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
