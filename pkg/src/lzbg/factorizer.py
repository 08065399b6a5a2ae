"""LZ77 s-factorization from PSV/NSV candidates, plus quadratic baselines.

A factor is the pair ``(length, ref)``: a copy of ``length >= 1`` bytes from
1-indexed position ``ref``, or a literal ``(0, byte)``.
"""

import time
from dataclasses import dataclass
from typing import Iterator, NamedTuple, Optional

import numpy as np
from numba import njit

from . import neighbors as nb
from ._oracle import check_cap
from .report import RunReport, modeled_bytes
from .suffix_array import INDEX_DTYPE, SuffixArrayBundle, as_array, build_sa

VARIANTS = ("BGS", "BGL", "BGT", "iBGS", "iBGL", "iBGT")


class Factor(NamedTuple):
    length: int
    ref: int

    @property
    def is_literal(self) -> bool:
        return self.length == 0

    @property
    def span(self) -> int:
        return max(1, self.length)


@dataclass(frozen=True)
class Factorization:
    lengths: np.ndarray
    refs: np.ndarray
    n_text: int

    def __len__(self):
        return len(self.lengths)

    def __iter__(self) -> Iterator[Factor]:
        for length, ref in zip(self.lengths.tolist(), self.refs.tolist()):
            yield Factor(length, ref)

    def __getitem__(self, k) -> Factor:
        return Factor(int(self.lengths[k]), int(self.refs[k]))

    def pairs(self):
        return [tuple(f) for f in self]

    def starts(self) -> np.ndarray:
        """1-indexed start position of every factor."""
        spans = np.maximum(self.lengths, 1)
        return np.concatenate(([1], 1 + np.cumsum(spans)[:-1])) if len(spans) else spans

    def length_sequence(self):
        return self.lengths.tolist()

    @classmethod
    def from_pairs(cls, pairs, n_text=None):
        lengths = np.array([p[0] for p in pairs], dtype=np.int64)
        refs = np.array([p[1] for p in pairs], dtype=np.int64)
        if n_text is None:
            n_text = int(np.maximum(lengths, 1).sum())
        return cls(lengths, refs, n_text)


@dataclass
class LpfArrays:
    lpf: np.ndarray
    prevocc: np.ndarray


def normalize_variant(variant: str) -> str:
    for v in VARIANTS:
        if v.lower() == variant.lower():
            return v
    raise ValueError(f"unknown variant {variant!r}; expected one of {', '.join(VARIANTS)}")


# --- kernels -----------------------------------------------------------------


@njit(cache=True)
def _lcp(t, j, p, counter):
    n = len(t)
    length = 0
    while p + length <= n:
        counter[0] += 1
        if t[j + length - 1] != t[p + length - 1]:
            break
        length += 1
    return length


@njit(cache=True)
def _factor_loop(t, lex, sa, isa, parr, poff, narr, noff, stride, p, out_len, out_ref, counter):
    """Fill out_len/out_ref from position p; returns (next p, factors written)."""
    n = len(t)
    k = 0
    cap = len(out_len)
    while p <= n and k < cap:
        if lex:
            r = isa[p - 1]
            a = parr[(r - 1) * stride + poff]
            b = narr[(r - 1) * stride + noff]
            a = sa[a - 1] if a > 0 else 0
            b = sa[b - 1] if b > 0 else 0
        else:
            a = parr[(p - 1) * stride + poff]
            b = narr[(p - 1) * stride + noff]
        best = 0
        src = 0
        if a > 0:
            length = _lcp(t, a, p, counter)
            if length > best:
                best = length
                src = a
        if b > 0:
            length = _lcp(t, b, p, counter)
            if length > best:
                best = length
                src = b
        if best > 0:
            out_len[k] = best
            out_ref[k] = src
            p += best
        else:
            out_len[k] = 0
            out_ref[k] = t[p - 1]
            p += 1
        k += 1
    return p, k


@njit(cache=True)
def _naive_loop(t, out_len, out_ref, counter):
    n = len(t)
    p = 1
    k = 0
    while p <= n:
        best = 0
        src = 0
        for j in range(1, p):
            length = _lcp(t, j, p, counter)
            if length > best:
                best = length
                src = j
        if best > 0:
            out_len[k] = best
            out_ref[k] = src
            p += best
        else:
            out_len[k] = 0
            out_ref[k] = t[p - 1]
            p += 1
        k += 1
    return k


@njit(cache=True)
def _lpf_brute(t, lpf, prevocc):
    n = len(t)
    for i in range(1, n + 1):
        best = 0
        src = -1
        for j in range(1, i):
            length = 0
            while i + length <= n and t[j + length - 1] == t[i + length - 1]:
                length += 1
            if length > best:
                best = length
                src = j
        lpf[i - 1] = best
        prevocc[i - 1] = src


@njit(cache=True)
def _from_lpf(t, lpf, prevocc, out_len, out_ref):
    n = len(t)
    p = 1
    k = 0
    while p <= n:
        if lpf[p - 1] == 0:
            out_len[k] = 0
            out_ref[k] = t[p - 1]
        else:
            out_len[k] = lpf[p - 1]
            out_ref[k] = prevocc[p - 1]
        p += max(1, lpf[p - 1])
        k += 1
    return k


# --- public API ----------------------------------------------------------------


def lcp_extend(text, j: int, p: int, counter=None) -> int:
    """Length of the common prefix of the suffixes at 1-indexed j < p.

    ``counter`` is an optional one-element int64 array incremented once per
    character comparison.
    """
    t = as_array(text)
    if not 1 <= j < p <= len(t):
        raise ValueError("lcp_extend requires 1 <= j < p <= N")
    if counter is None:
        counter = np.zeros(1, dtype=np.int64)
    return int(_lcp(t, j, p, counter))


def factorize_with(text, sa: SuffixArrayBundle, arrays: nb.NeighborArrays, counter=None) -> Factorization:
    """Main loop: two candidates per factor, taken from the neighbor arrays."""
    t = as_array(text)
    n = len(t)
    if counter is None:
        counter = np.zeros(1, dtype=np.int64)
    lex = arrays.order == nb.LEX
    parts = arrays._parts()
    if lex:
        sa_arr, isa_arr = sa.sa, sa.isa
    else:
        sa_arr = isa_arr = np.empty(0, dtype=INDEX_DTYPE)
    chunk = max(16, min(n, 1 << 16))
    lens, refs = [], []
    p = 1
    while p <= n:
        out_len = np.empty(chunk, dtype=np.int64)
        out_ref = np.empty(chunk, dtype=np.int64)
        p, k = _factor_loop(t, lex, sa_arr, isa_arr, *parts, p, out_len, out_ref, counter)
        lens.append(out_len[:k])
        refs.append(out_ref[:k])
        chunk = min(chunk * 2, 1 << 22)
    if not lens:
        return Factorization(np.empty(0, np.int64), np.empty(0, np.int64), n)
    return Factorization(np.concatenate(lens), np.concatenate(refs), n)


def compute_neighbors(text, bundle: SuffixArrayBundle, variant: str, consume_sa=None):
    """Neighbor arrays for ``variant``.

    BGT overwrites a suffix array buffer with its PSV values. Pass a writable
    copy in ``consume_sa`` to have it consumed; otherwise one is made.
    """
    variant = normalize_variant(variant)
    layout = nb.INTERLEAVED if variant.startswith("i") else nb.PLAIN
    kind = variant[-1]
    if kind == "S":
        return nb.psv_nsv_stack(bundle.sa, layout)
    if kind == "L":
        return nb.psv_nsv_peak_lex(bundle.sa, layout)
    if layout == nb.PLAIN:
        buf = consume_sa if consume_sa is not None else bundle.sa.copy()
        return nb.psv_nsv_peak_text(text, buf, layout, reuse_sa=True)
    return nb.psv_nsv_peak_text(text, bundle.sa, layout)


def _resident_bytes(t, bundle, arrays, variant):
    total = t.nbytes + arrays.nbytes
    if variant[-1] in "SL":
        total += bundle.sa.nbytes + bundle.isa.nbytes
        if arrays.s_max is not None:
            total += 4 * arrays.s_max
    else:
        # phi plus the PSV/NSV storage; BGT's PSV lives in the former SA buffer
        total += 4 * len(t)
    return total


def factorize_run(text, variant: str, bundle: Optional[SuffixArrayBundle] = None,
                  sa_build_seconds: float = 0.0):
    """Factorize with one of the six variants, returning (Factorization, RunReport).

    The reported post-SA time covers neighbor computation and the main loop.
    """
    variant = normalize_variant(variant)
    t = as_array(text)
    n = len(t)
    consume = None
    if bundle is None:
        start = time.perf_counter()
        bundle = build_sa(t)
        sa_build_seconds = time.perf_counter() - start
    if variant == "BGT":
        consume = bundle.sa.copy()
    counter = np.zeros(1, dtype=np.int64)
    start = time.perf_counter()
    arrays = compute_neighbors(t, bundle, variant, consume_sa=consume)
    fact = factorize_with(t, bundle, arrays, counter)
    elapsed = time.perf_counter() - start
    report = RunReport(
        variant=variant,
        n_text=n,
        n_factors=len(fact),
        s_max=arrays.s_max,
        comparisons=int(counter[0]),
        modeled_bytes=modeled_bytes(variant, n, arrays.s_max),
        actual_peak_bytes=_resident_bytes(t, bundle, arrays, variant),
        sa_build_seconds=sa_build_seconds,
        post_sa_seconds=elapsed,
        pushes=arrays.pushes,
        eliminations=arrays.eliminations,
    )
    return fact, report


def factorize(text, variant: str = "iBGS", bundle: Optional[SuffixArrayBundle] = None) -> Factorization:
    return factorize_run(text, variant, bundle)[0]


def factorize_naive(text, cap=None, counter=None) -> Factorization:
    """Compare every earlier position against each factor start. Quadratic."""
    t = as_array(text)
    check_cap("factorize_naive", len(t), cap)
    if counter is None:
        counter = np.zeros(1, dtype=np.int64)
    out_len = np.empty(len(t), dtype=np.int64)
    out_ref = np.empty(len(t), dtype=np.int64)
    k = _naive_loop(t, out_len, out_ref, counter)
    return Factorization(out_len[:k].copy(), out_ref[:k].copy(), len(t))


def lpf_brute_force(text, cap=None) -> LpfArrays:
    """LPF and PrevOcc for every position; PrevOcc is the smallest witness."""
    t = as_array(text)
    check_cap("lpf_brute_force", len(t), cap)
    lpf = np.empty(len(t), dtype=np.int64)
    prevocc = np.empty(len(t), dtype=np.int64)
    _lpf_brute(t, lpf, prevocc)
    return LpfArrays(lpf, prevocc)


def lz_from_lpf(text, arrays: LpfArrays) -> Factorization:
    t = as_array(text)
    out_len = np.empty(len(t), dtype=np.int64)
    out_ref = np.empty(len(t), dtype=np.int64)
    k = _from_lpf(t, np.asarray(arrays.lpf, dtype=np.int64),
                  np.asarray(arrays.prevocc, dtype=np.int64), out_len, out_ref)
    return Factorization(out_len[:k].copy(), out_ref[:k].copy(), len(t))


# --- validation ----------------------------------------------------------------


def invalid_witnesses(text, fact: Factorization):
    """Indices of copy factors whose source does not reproduce the text."""
    t = bytes(text)
    bad = []
    for k, (f, start) in enumerate(zip(fact, fact.starts().tolist())):
        if f.is_literal:
            if t[start - 1] != f.ref:
                bad.append(k)
            continue
        src, length = f.ref, f.length
        if not 1 <= src < start or start + length - 1 > len(t):
            bad.append(k)
        elif t[src - 1:src - 1 + length] != t[start - 1:start - 1 + length]:
            bad.append(k)
    return bad


def greedy_violations(text, fact: Factorization):
    """Indices of factors that an earlier occurrence could have extended (quadratic)."""
    t = bytes(text)
    bad = []
    for k, (f, start) in enumerate(zip(fact, fact.starts().tolist())):
        p = start - 1
        if f.is_literal:
            if t[p] in t[:p]:
                bad.append(k)
            continue
        end = p + f.length
        if end < len(t) and t.find(t[p:end + 1], 0, end) != -1:
            bad.append(k)
    return bad


def warmup():
    """Load or compile every kernel so that later timings exclude JIT work."""
    from . import codec

    sample = b"abaabababaaaaabbabab"
    bundle = build_sa(sample)
    for v in VARIANTS:
        fact = factorize_run(sample, v, bundle)[0]
    codec.decode(codec.encode(fact))
    factorize_naive(sample)
    lz_from_lpf(sample, lpf_brute_force(sample))
    nb.psv_nsv_brute(bundle.sa)
