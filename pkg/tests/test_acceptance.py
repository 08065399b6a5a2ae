"""Exit criteria. Each test prints one PASS/FAIL line, repeated in the summary."""

import time
import warnings

import numpy as np
import pytest

from lzbg import codec
from lzbg import neighbors as nb
from lzbg.cli import bench_file
from lzbg.corpus import FIB_TABLE_LENGTHS, compute_stats, gen_fibonacci, gen_random
from lzbg.factorizer import (
    VARIANTS,
    factorize,
    factorize_naive,
    factorize_run,
    invalid_witnesses,
    lpf_brute_force,
    lz_from_lpf,
)
from lzbg.report import modeled_bytes
from lzbg.suffix_array import build_sa

from conftest import GOLDEN, random_texts

MIB = 1 << 20
PAPER_PAIRS = [(0, ord("a")), (0, ord("b")), (1, 1), (3, 1), (4, 5), (4, 10), (1, 2), (5, 5)]
FIB_FACTORS = [31, 32, 33, 34, 35]
FIB_S_MAX = [16, 16, 17, 17, 18]


@pytest.fixture(scope="module")
def fib_corpus():
    return {L: gen_fibonacci(L) for L in FIB_TABLE_LENGTHS}


@pytest.fixture(scope="module")
def random_8mib():
    return gen_random(8 * MIB, 2, 2012)


@pytest.mark.parametrize("variant", VARIANTS)
def test_c1_golden_example(variant, criterion):
    bundle = build_sa(GOLDEN)
    start = time.perf_counter()
    fact = factorize(GOLDEN, variant, bundle)
    elapsed = time.perf_counter() - start
    got = fact.pairs()
    diffs = [f"#{k + 1} {g} != {e}" for k, (g, e) in enumerate(zip(got, PAPER_PAIRS)) if g != e]
    ok = got == PAPER_PAIRS and elapsed < 1e-3
    criterion(1, f"golden example, {variant}", ok,
              f"{len(got)} factors, {elapsed * 1e3:.3f} ms" + (f"; {'; '.join(diffs)}" if diffs else ""))
    assert got == PAPER_PAIRS
    assert elapsed < 1e-3


def test_c2_fibonacci_rows(fib_corpus, criterion):
    start = time.perf_counter()
    counts, s_maxes, problems = [], [], []
    for L, text in fib_corpus.items():
        bundle = build_sa(text)
        per_variant = {}
        for v in VARIANTS:
            _, report = factorize_run(text, v, bundle)
            per_variant[v] = report
        ns = {r.n_factors for r in per_variant.values()}
        if len(ns) != 1:
            problems.append(f"N={L}: variants disagree {ns}")
        counts.append(per_variant["BGS"].n_factors)
        s_maxes.append(per_variant["BGS"].s_max)
        assert per_variant["iBGS"].s_max == per_variant["BGS"].s_max
    elapsed = time.perf_counter() - start
    ok = counts == FIB_FACTORS and s_maxes == FIB_S_MAX and not problems and elapsed < 30
    criterion(2, "Fibonacci rows of Table 2", ok,
              f"n={counts} s_max={s_maxes} in {elapsed:.1f}s")
    assert not problems
    assert counts == FIB_FACTORS
    assert s_maxes == FIB_S_MAX
    assert elapsed < 30


def test_c2_average_length(fib_corpus):
    text = fib_corpus[2178309]
    fact = factorize(text, "iBGT")
    stats = compute_stats(text, fact)
    assert stats.average_factor_length == pytest.approx(70268.00, abs=0.1)


def test_c3_oracle_equivalence(criterion):
    texts = list(random_texts(1000, 2000, seed=2024))
    texts += [GOLDEN, b"banana", b"a", b"aaaa", b"", gen_fibonacci(1000), b"ab" * 700]
    mismatches = 0
    bad_witnesses = 0
    for text in texts:
        bundle = build_sa(text)
        facts = [factorize(text, v, bundle) for v in VARIANTS]
        lengths = facts[0].length_sequence()
        seqs = [f.length_sequence() for f in facts]
        seqs.append(factorize_naive(text).length_sequence())
        seqs.append(lz_from_lpf(text, lpf_brute_force(text)).length_sequence())
        mismatches += sum(s != lengths for s in seqs)
        bad_witnesses += sum(len(invalid_witnesses(text, f)) for f in facts)
    ok = mismatches == 0 and bad_witnesses == 0
    criterion(3, "oracle equivalence", ok,
              f"{len(texts)} texts, {mismatches} mismatches, {bad_witnesses} bad witnesses")
    assert mismatches == 0
    assert bad_witnesses == 0


def test_c4_psv_nsv_correctness(criterion):
    mismatches = 0
    identity_failures = 0
    count = 0
    for text in random_texts(1000, 5000, seed=4048):
        sa = build_sa(text).sa
        brute = nb.psv_nsv_brute(sa)
        stack = nb.psv_nsv_stack(sa)
        peak = nb.psv_nsv_peak_lex(sa)
        for got in (stack, peak):
            mismatches += not (np.array_equal(got.psv, brute.psv) and np.array_equal(got.nsv, brute.nsv))
        text_order = nb.psv_nsv_peak_text(text, sa)
        padded = np.concatenate(([0], sa))
        # psv_text[sa[i]] == sa[psv_lex[i]], with 0 mapping to 0
        identity_failures += int(np.count_nonzero(text_order.psv[sa - 1] != padded[brute.psv]))
        identity_failures += int(np.count_nonzero(text_order.nsv[sa - 1] != padded[brute.nsv]))
        count += 1
    ok = mismatches == 0 and identity_failures == 0
    criterion(4, "PSV/NSV correctness", ok,
              f"{count} inputs, {mismatches} method mismatches, {identity_failures} identity failures")
    assert mismatches == 0
    assert identity_failures == 0


def test_c5_linearity(random_8mib, criterion):
    start = time.perf_counter()
    worst = []
    for text in (b"a" * 10**6, random_8mib):
        bundle = build_sa(text)
        for v in VARIANTS:
            _, report = factorize_run(text, v, bundle)
            worst.append((report.comparisons, 4 * len(text) + 4, v, len(text)))
    elapsed = time.perf_counter() - start
    violations = [w for w in worst if w[0] > w[1]]
    ok = not violations and elapsed < 10
    ratio = max(c / b for c, b, _, _ in worst)
    criterion(5, "comparisons <= 4N+4", ok, f"max ratio to bound {ratio:.3f}, {elapsed:.1f}s")
    assert not violations
    assert elapsed < 10


def test_c6_space_model(criterion):
    rows = []
    for text in (gen_fibonacci(100_000), gen_random(200_000, 4, 6), GOLDEN, b""):
        rows += bench_file("x", text, list(VARIANTS), 1)
    wrong = []
    for row in rows:
        n, s_max = row["N"], row["s_max"]
        expected = {"S": 17 * n + 4 * s_max, "L": 17 * n, "T": 13 * n}[row["variant"][-1]]
        if row["modeled_bytes"] != expected or modeled_bytes(row["variant"], n, s_max) != expected:
            wrong.append(row)
    criterion(6, "space model", not wrong, f"{len(rows)} rows, {len(wrong)} wrong")
    assert not wrong


def test_c7_round_trip(fib_corpus, criterion):
    failures = 0
    cases = 0
    for text in random_texts(10_000, 300, seed=77):
        fact = factorize(text, VARIANTS[cases % 6])
        failures += codec.decode(codec.encode(fact, len(text))) != text
        cases += 1
    corpus = list(fib_corpus.values())
    corpus += [gen_random(4 * MIB, a, 7) for a in (2, 21, 255)]
    for text in corpus:
        fact = factorize(text, "iBGT")
        failures += codec.decode(codec.encode(fact, len(text))) != text
        cases += 1
    criterion(7, "round trip", failures == 0, f"{cases} cases, {failures} failures")
    assert failures == 0


def _mean_post_sa(text, bundle, variant, repeats):
    return float(np.mean([factorize_run(text, variant, bundle)[1].post_sa_seconds
                          for _ in range(repeats)]))


def test_c8_relative_performance(random_8mib, criterion):
    repeats = 5
    big = random_8mib
    small = big[:4 * MIB]
    big_bundle = build_sa(big)
    small_bundle = build_sa(small)
    t8 = {v: _mean_post_sa(big, big_bundle, v, repeats) for v in VARIANTS}
    t4 = {v: _mean_post_sa(small, small_bundle, v, repeats) for v in VARIANTS}
    ratios = {v: t8[v] / t4[v] for v in VARIANTS}

    soft = []
    if t8["iBGS"] > 1.15 * t8["BGS"]:
        soft.append(f"iBGS {t8['iBGS']:.3f}s > 1.15 x BGS {t8['BGS']:.3f}s")
    fastest = min(t8.values())
    slow = [v for v in VARIANTS if t8[v] > 5 * fastest]
    if slow:
        soft.append(f"outside 5x of fastest: {slow}")
    for message in soft:
        warnings.warn(message)

    nonlinear = {v: r for v, r in ratios.items() if r > 3.0}
    timing = " ".join(f"{v}={t8[v]:.3f}s" for v in VARIANTS)
    detail = f"{timing}; 8/4 MiB ratios max {max(ratios.values()):.2f}"
    if soft:
        detail += "; warnings: " + "; ".join(soft)
    criterion(8, "relative performance and linear scaling", not nonlinear, detail)
    assert not nonlinear
