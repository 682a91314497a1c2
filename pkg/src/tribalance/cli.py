"""Command-line surface: generation, profiles, discrepancy tables, the
numeration codec, spectral constants, special-factor reports, and the
claim-verification suite.

Exit codes: 0 success, 1 claim failure, 2 usage error, 3 resource or
saturation failure.  Data (CSV, digit strings) goes to --out or stdout;
progress and summaries go to stderr so piped output stays clean.  Real
numbers are printed with 12 significant digits, deterministically.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from contextlib import contextmanager

from . import abelian, numeration, special, spectral, verify
from .errors import BufferLimitError, SaturationError, TribalanceError
from .factors import SaturationRule
from .words import (
    DEFAULT_MAX_SYMBOLS,
    WordBuffer,
    fixed_point_prefix,
    mbonacci_morphism,
    word_to_text,
)

EXIT_OK = 0
EXIT_CLAIM_FAILURE = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _fmt(x: float) -> str:
    return f"{x:.12g}"


def _progress(message: str) -> None:
    print(message, file=sys.stderr, flush=True)


@contextmanager
def _open_out(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", newline="") as handle:
            yield handle


def _make_buffer(spec: str, parser: argparse.ArgumentParser, max_symbols: int) -> WordBuffer:
    if spec == "tribonacci":
        m = 3
    elif spec.startswith("mbonacci:"):
        try:
            m = int(spec.split(":", 1)[1])
        except ValueError:
            m = 0
        if m < 2:
            parser.error(f"bad word spec {spec!r}: m-bonacci order must be an integer >= 2")
    else:
        parser.error(f"word spec must be 'tribonacci' or 'mbonacci:<m>', got {spec!r}")
    return fixed_point_prefix(mbonacci_morphism(m), 0, 1, max_symbols=max_symbols)


def _rule(args) -> SaturationRule:
    return SaturationRule(position_cap=args.scan_cap)


def cmd_generate(args, parser) -> int:
    if args.length < 1:
        parser.error(f"length must be >= 1, got {args.length}")
    buf = _make_buffer(args.word_spec, parser, args.max_buffer)
    buf.ensure(args.length)
    with _open_out(args.out) as out:
        out.write(word_to_text(buf.slice(0, args.length)))
        out.write("\n")
    return EXIT_OK


def cmd_rho(args, parser) -> int:
    if args.n_from < 1 or args.n_to < args.n_from:
        parser.error(f"bad length range [{args.n_from}, {args.n_to}]")
    buf = _make_buffer(args.word_spec, parser, args.max_buffer)
    if args.n_to > 1000:
        _progress(f"certifying factor sets up to length {args.n_to}")
    rows = abelian.abelian_profile(buf, args.n_from, args.n_to, _rule(args),
                                   threads=args.threads)
    with _open_out(args.out) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["n", "rho"])
        for row in rows:
            writer.writerow([row.n, row.rho])
    return EXIT_OK


def cmd_balance(args, parser) -> int:
    if args.max_len < 1:
        parser.error(f"max length must be >= 1, got {args.max_len}")
    buf = _make_buffer(args.word_spec, parser, args.max_buffer)
    rule = _rule(args)
    if args.max_len > 1000:
        _progress(f"certifying factor sets up to length {args.max_len}")
    rows = abelian.balance_profile(buf, args.max_len, rule, threads=args.threads)
    m = buf.alphabet_size
    with _open_out(args.out) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["n", "rho"] + [f"max_imbalance_{a}" for a in range(m)])
        for row in rows:
            writer.writerow([row.n, row.rho] + list(row.max_imbalance))
    global_max = max(max(row.max_imbalance) for row in rows)
    print(f"global maximum imbalance: {global_max}", file=sys.stderr)
    if global_max >= 3:
        # The word is not 2-balanced in the scanned range; exhibit the
        # first witness in wire form letter,length,pos_u,pos_v,count_u,count_v.
        n, letter = next(
            (row.n, a) for row in rows for a in range(m) if row.max_imbalance[a] >= 3
        )
        w = abelian.imbalance_witness_search(buf, letter, 3, n, rule=rule)
        print(
            f"imbalance witness: {w.letter},{w.length},{w.pos_u},{w.pos_v},"
            f"{w.count_u},{w.count_v}",
            file=sys.stderr,
        )
    return EXIT_OK


def cmd_discrepancy(args, parser) -> int:
    if args.letter not in (0, 1, 2):
        parser.error(f"letter must be 0, 1 or 2, got {args.letter}")
    if args.n_max < 0:
        parser.error(f"n_max must be >= 0, got {args.n_max}")
    sd = spectral.compute_spectral_data()
    buf = _make_buffer("tribonacci", parser, args.max_buffer)
    if args.n_max > 100_000:
        _progress(f"tabulating {args.n_max + 1} prefix discrepancies")
    buf.ensure(max(args.n_max, 1))
    freq = sd.frequency(args.letter)
    pc = buf.prefix_counts[args.letter]
    with _open_out(args.out) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["N", "discrepancy"])
        for n in range(args.n_max + 1):
            writer.writerow([n, _fmt(pc[n] - n * freq)])
    lo, hi = spectral.discrepancy_extremes(buf, args.n_max, args.letter, sd)
    t_lo, t_hi = spectral.TARGET_INTERVALS[args.letter]
    contained = t_lo < lo and hi < t_hi
    print(
        f"letter {args.letter}: observed [{_fmt(lo)}, {_fmt(hi)}], "
        f"certified interval ({t_lo}, {t_hi}), contained: {contained}",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_zeckendorf(args, parser) -> int:
    if args.n < 0:
        parser.error(f"N must be >= 0, got {args.n}")
    print(str(numeration.zeckendorf_encode(args.n)))
    return EXIT_OK


def cmd_constants(args, parser) -> int:
    sd = spectral.compute_spectral_data()
    values = {
        "beta": sd.beta,
        "abs_alpha": sd.abs_alpha,
        "abs_a_alpha": sd.abs_coeff_alpha,
        "factor_i0": abs(sd.mixing_factor(0)),
        "factor_i1": abs(sd.mixing_factor(1)),
        "factor_i2": abs(sd.mixing_factor(2)),
    }
    with _open_out(args.out) as out:
        for name, value in values.items():
            out.write(f"{name}={_fmt(value)}\n")
    return EXIT_OK


def cmd_special(args, parser) -> int:
    if args.n_from < 1 or args.n_to < args.n_from:
        parser.error(f"bad length range [{args.n_from}, {args.n_to}]")
    buf = _make_buffer(args.word_spec, parser, args.max_buffer)
    rule = _rule(args)
    with _open_out(args.out) as out:
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(
            ["n", "right_special_word", "i", "j", "k", "bispecial", "rho", "rho3_closed_form"]
        )
        for n in range(args.n_from, args.n_to + 1):
            record = special.right_special_factor(buf, n - 1, rule)
            rho = abelian.abelian_complexity(buf, n, rule)
            writer.writerow([
                n,
                word_to_text(record.word),
                *record.parikh,
                int(record.is_bispecial),
                rho,
                int(special.is_min_complexity_length(n)),
            ])
    return EXIT_OK


def cmd_verify(args, parser) -> int:
    config = verify.SuiteConfig(
        seed=args.seed,
        threads=args.threads,
        max_buffer=args.max_buffer,
        scan_cap=args.scan_cap,
        progress=_progress,
    )
    report = verify.run_suite(args.suite, config)
    for claim in report.claims:
        print(f"{claim.status.upper():7s} {claim.claim_id} ({claim.runtime_ms:.0f} ms): "
              f"{claim.description}")
    if args.json:
        with open(args.json, "w") as handle:
            handle.write(report.to_json())
            handle.write("\n")
    passed = sum(c.status == "pass" for c in report.claims)
    print(f"{passed}/{len(report.claims)} claims passed", file=sys.stderr)
    return EXIT_OK if report.all_passed else EXIT_CLAIM_FAILURE


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tribalance",
        description="Balance and abelian-complexity analysis of m-bonacci words.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser, out: bool = True):
        if out:
            p.add_argument("--out", metavar="PATH", help="write data output to PATH instead of stdout")
        p.add_argument("--threads", type=int, default=os.cpu_count() or 1,
                       help="parallelism cap for per-length analyses")
        p.add_argument("--seed", type=int, default=0, help="seed for randomized spot checks")
        p.add_argument("--max-buffer", type=int, default=DEFAULT_MAX_SYMBOLS,
                       help="hard cap on materialized symbols")
        p.add_argument("--scan-cap", type=int, default=None,
                       help="fixed position cap for factor scans (default 64n + 4096)")

    p = sub.add_parser("generate", help="write a prefix of a word")
    p.add_argument("word_spec", help="'tribonacci' or 'mbonacci:<m>'")
    p.add_argument("length", type=int)
    common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("rho", help="abelian complexity over a length range (CSV)")
    p.add_argument("word_spec")
    p.add_argument("n_from", type=int)
    p.add_argument("n_to", type=int)
    common(p)
    p.set_defaults(func=cmd_rho)

    p = sub.add_parser("balance", help="per-letter imbalance profile (CSV)")
    p.add_argument("word_spec")
    p.add_argument("max_len", type=int)
    common(p)
    p.set_defaults(func=cmd_balance)

    p = sub.add_parser("discrepancy", help="prefix discrepancy table for one letter (CSV)")
    p.add_argument("letter", type=int)
    p.add_argument("n_max", type=int)
    common(p)
    p.set_defaults(func=cmd_discrepancy)

    p = sub.add_parser("zeckendorf", help="Tribonacci-numeration digits of N (LSB first)")
    p.add_argument("n", type=int)
    common(p, out=False)
    p.set_defaults(func=cmd_zeckendorf)

    p = sub.add_parser("constants", help="spectral constants, 12 significant digits")
    common(p)
    p.set_defaults(func=cmd_constants)

    p = sub.add_parser("special", help="right-special factor report (CSV)")
    p.add_argument("word_spec")
    p.add_argument("n_from", type=int)
    p.add_argument("n_to", type=int)
    common(p)
    p.set_defaults(func=cmd_special)

    p = sub.add_parser("verify", help="run the claim-verification suite")
    p.add_argument("--suite", default="paper", choices=["paper"])
    p.add_argument("--json", metavar="PATH", help="write the JSON report to PATH")
    common(p, out=False)
    p.set_defaults(func=cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, parser)
    except (SaturationError, BufferLimitError) as err:
        print(f"resource failure: {err}", file=sys.stderr)
        return EXIT_RESOURCE
    except TribalanceError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_CLAIM_FAILURE


if __name__ == "__main__":
    sys.exit(main())
