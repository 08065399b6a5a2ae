"""Command-line front end: ``lzbg factorize|verify|bench|gen``."""

import argparse
import csv
import io
import json
import sys
import time
from pathlib import Path

import numpy as np

from . import codec
from . import factorizer as fz
from ._oracle import OracleLimitError
from .corpus import RNG_NAME, CorpusSpec, compute_stats
from .neighbors import psv_nsv_stack
from .report import RunReport
from .suffix_array import build_sa

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3

CLI_VARIANTS = ("bgs", "bgl", "bgt", "ibgs", "ibgl", "ibgt", "naive", "lpf-oracle")
CSV_COLUMNS = (
    "file", "variant", "N", "n", "avg_len", "s_max", "comparisons",
    "modeled_bytes", "post_sa_seconds_mean",
)
EXTRA_COLUMNS = (
    "alphabet_count", "sa_build_seconds", "actual_peak_bytes", "repeats", "rng",
)


class InputError(Exception):
    pass


def _read_input(arg, seed=None):
    """Raw bytes from a path, or from a generator spec such as ``fib:13``."""
    if ":" in arg and not Path(arg).exists():
        try:
            spec = CorpusSpec.parse(arg)
        except ValueError as e:
            raise InputError(str(e)) from None
        if spec.kind == "random" and seed is not None and arg.count(":") == 2:
            spec = CorpusSpec("random", spec.target_length, spec.alphabet_size, seed)
        try:
            return spec.name, spec.generate()
        except OSError as e:
            raise InputError(f"cannot read {spec.path}: {e}") from None
    try:
        return Path(arg).name, Path(arg).read_bytes()
    except OSError as e:
        raise InputError(f"cannot read {arg}: {e}") from None


def run_variant(text, variant, oracle_cap=None):
    """Factorize with a CLI variant name, returning (Factorization, RunReport)."""
    if variant == "naive":
        counter = np.zeros(1, dtype=np.int64)
        start = time.perf_counter()
        fact = fz.factorize_naive(text, cap=oracle_cap, counter=counter)
        elapsed = time.perf_counter() - start
        return fact, RunReport("naive", len(text), len(fact), None, int(counter[0]),
                               None, None, 0.0, elapsed)
    if variant == "lpf-oracle":
        start = time.perf_counter()
        fact = fz.lz_from_lpf(text, fz.lpf_brute_force(text, cap=oracle_cap))
        elapsed = time.perf_counter() - start
        return fact, RunReport("lpf-oracle", len(text), len(fact), None, 0,
                               None, None, 0.0, elapsed)
    return fz.factorize_run(text, variant)


def cmd_factorize(args):
    _, text = _read_input(args.input)
    fact, report = run_variant(text, args.variant, args.oracle_cap)
    if args.format == "text":
        payload = codec.to_text_format(fact).encode()
    else:
        payload = codec.encode(fact, len(text))
    if args.output:
        try:
            Path(args.output).write_bytes(payload)
        except OSError as e:
            raise InputError(f"cannot write {args.output}: {e}") from None
        print(report.summary())
    else:
        sys.stdout.buffer.write(payload)
        sys.stdout.flush()
        print(report.summary(), file=sys.stderr)
    return EXIT_OK


def verify_text(text, oracle_cap=None):
    """Run every consistency check on ``text``; returns [(name, status, detail)]."""
    results = []
    bundle = build_sa(text)
    facts = {v: fz.factorize_run(text, v, bundle)[0] for v in fz.VARIANTS}
    ref = facts["BGS"]

    def check(name, ok, detail=""):
        results.append((name, "PASS" if ok else "FAIL", detail))

    mismatched = [v for v, f in facts.items() if f.pairs() != ref.pairs()]
    check("variant-agreement", not mismatched, ", ".join(mismatched))
    for v, f in facts.items():
        bad = fz.invalid_witnesses(text, f)
        check(f"witnesses-{v}", not bad, f"{len(bad)} invalid" if bad else "")
    check("length-sum", int(np.maximum(ref.lengths, 1).sum()) == len(text))
    try:
        ok = codec.decode(codec.encode(ref, len(text))) == text
    except codec.DecodeError:
        ok = False
    check("round-trip-binary", ok)
    ok = codec.expand(codec.from_text_format(codec.to_text_format(ref))) == text
    check("round-trip-text", ok)
    try:
        naive = fz.factorize_naive(text, cap=oracle_cap)
        check("oracle-naive", naive.length_sequence() == ref.length_sequence())
        lpf = fz.lz_from_lpf(text, fz.lpf_brute_force(text, cap=oracle_cap))
        check("oracle-lpf", lpf.length_sequence() == ref.length_sequence())
    except OracleLimitError as e:
        results.append(("oracles", "SKIP", str(e)))
    return results


def cmd_verify(args):
    _, text = _read_input(args.input)
    results = verify_text(text, args.oracle_cap)
    for name, status, detail in results:
        print(f"{status} {name}" + (f" ({detail})" if detail else ""))
    return EXIT_FAIL if any(s == "FAIL" for _, s, _ in results) else EXIT_OK


def bench_file(name, text, variants, repeats, seed_note=""):
    """One row per variant; the suffix array is built once and shared."""
    start = time.perf_counter()
    bundle = build_sa(text)
    sa_seconds = time.perf_counter() - start
    s_max = psv_nsv_stack(bundle.sa).s_max
    rows = []
    for variant in variants:
        times = []
        for _ in range(repeats):
            fact, report = fz.factorize_run(text, variant, bundle, sa_seconds)
            times.append(report.post_sa_seconds)
        report.post_sa_seconds = float(np.mean(times))
        report.repeats = repeats
        stats = compute_stats(text, fact, s_max)
        rows.append({
            "file": name,
            "variant": report.variant,
            "N": stats.n_text,
            "n": stats.n_factors,
            "avg_len": stats.average_factor_length,
            "s_max": stats.s_max,
            "comparisons": report.comparisons,
            "modeled_bytes": report.modeled_bytes,
            "post_sa_seconds_mean": report.post_sa_seconds,
            "alphabet_count": stats.alphabet_count,
            "sa_build_seconds": sa_seconds,
            "actual_peak_bytes": report.actual_peak_bytes,
            "repeats": repeats,
            "rng": seed_note,
        })
    return rows


def cmd_bench(args):
    variants = [fz.normalize_variant(v) for v in args.variants.split(",")]
    fz.warmup()
    rows = []
    for arg in args.inputs:
        name, text = _read_input(arg, args.seed)
        note = RNG_NAME if arg.startswith(("random:", "rnd:")) else ""
        rows.extend(bench_file(name, text, variants, args.repeats, note))
    out = io.StringIO()
    if args.format == "json":
        json.dump(rows, out, indent=2)
        out.write("\n")
    else:
        writer = csv.DictWriter(out, fieldnames=CSV_COLUMNS + EXTRA_COLUMNS, lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
    _emit(out.getvalue(), args.output)
    return EXIT_OK


def cmd_gen(args):
    try:
        spec = CorpusSpec.parse(args.spec)
    except ValueError as e:
        raise InputError(str(e)) from None
    if spec.kind == "random" and args.seed is not None and args.spec.count(":") == 2:
        spec = CorpusSpec("random", spec.target_length, spec.alphabet_size, args.seed)
    data = spec.generate()
    try:
        Path(args.output).write_bytes(data)
    except OSError as e:
        raise InputError(f"cannot write {args.output}: {e}") from None
    print(f"wrote {len(data)} bytes to {args.output}")
    return EXIT_OK


def _emit(text, output):
    if output:
        try:
            Path(output).write_text(text)
        except OSError as e:
            raise InputError(f"cannot write {output}: {e}") from None
    else:
        sys.stdout.write(text)


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--oracle-cap", type=int, default=None,
                        help="size limit for quadratic oracles (env LZFACT_ORACLE_CAP)")
    parser = argparse.ArgumentParser(prog="lzbg", description="LZ77 factorization via PSV/NSV arrays")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("factorize", parents=[common], help="factorize a file")
    p.add_argument("input")
    p.add_argument("--variant", choices=CLI_VARIANTS, default="ibgs", type=str.lower)
    p.add_argument("-o", "--output")
    p.add_argument("--format", choices=("binary", "text"), default="binary")
    p.set_defaults(func=cmd_factorize)

    p = sub.add_parser("verify", parents=[common], help="cross-check all variants and the round trip")
    p.add_argument("input")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", parents=[common], help="time variants on files or generated inputs")
    p.add_argument("inputs", nargs="+", help="paths or specs: fib:LEN, random:LEN:ALPHA[:SEED]")
    p.add_argument("--variants", default="bgs,ibgs,bgl,ibgl,bgt,ibgt")
    p.add_argument("--repeats", type=int, default=10)
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("gen", parents=[common], help="write a generated corpus file")
    p.add_argument("spec", help="fib:LEN or random:LEN:ALPHA[:SEED]")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--seed", type=int, default=None)
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "repeats", 1) < 1:
            parser.error("--repeats must be >= 1")
        if args.command == "bench":
            for v in args.variants.split(","):
                if v.lower() not in CLI_VARIANTS[:6]:
                    parser.error(f"unknown variant {v!r}")
        return args.func(args)
    except InputError as e:
        print(f"lzbg: {e}", file=sys.stderr)
        return EXIT_IO
    except OracleLimitError as e:
        print(f"lzbg: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
