"""Suffix array construction (SA-IS), inverse suffix array and the Phi array.

All public arrays hold 1-indexed text positions / ranks stored in ordinary
0-based numpy arrays: ``sa[0]`` is the position of the smallest suffix.
The value 0 means "no such position".
"""

from dataclasses import dataclass
from functools import cmp_to_key
from typing import Optional

import numpy as np
from numba import njit

from ._oracle import check_cap

INDEX_DTYPE = np.int32
MAX_LENGTH = np.iinfo(INDEX_DTYPE).max - 2


def as_array(text) -> np.ndarray:
    """Read-only uint8 view of a bytes-like text."""
    if isinstance(text, np.ndarray):
        arr = text.astype(np.uint8, copy=False)
    else:
        arr = np.frombuffer(bytes(text), dtype=np.uint8)
    if len(arr) > MAX_LENGTH:
        raise ValueError(f"text of length {len(arr)} exceeds 32-bit index range")
    return arr


@dataclass(frozen=True)
class SuffixArrayBundle:
    sa: np.ndarray
    isa: np.ndarray
    phi: Optional[np.ndarray] = None

    def __len__(self):
        return len(self.sa)

    def with_phi(self) -> "SuffixArrayBundle":
        if self.phi is not None:
            return self
        return SuffixArrayBundle(self.sa, self.isa, _frozen(build_phi(self.sa)))

    def to_csv(self, fh):
        """Debug dump: one row per rank (rank, sa, isa-of-sa, phi-of-sa)."""
        phi = self.phi if self.phi is not None else build_phi(self.sa)
        fh.write("rank,sa,isa,phi\n")
        for rank, pos in enumerate(self.sa, start=1):
            fh.write(f"{rank},{pos},{self.isa[pos - 1]},{phi[pos - 1]}\n")


def _frozen(arr):
    arr.flags.writeable = False
    return arr


# --- SA-IS kernels -----------------------------------------------------------
# Internal strings carry a unique smallest sentinel (0) as their last symbol.


@njit(cache=True)
def _classify(s):
    n = len(s)
    stype = np.zeros(n, dtype=np.bool_)
    stype[n - 1] = True
    for i in range(n - 2, -1, -1):
        if s[i] < s[i + 1] or (s[i] == s[i + 1] and stype[i + 1]):
            stype[i] = True
    return stype


@njit(cache=True)
def _is_lms(stype, i):
    return i > 0 and stype[i] and not stype[i - 1]


@njit(cache=True)
def _buckets(s, k, tails):
    counts = np.zeros(k, dtype=np.int64)
    for c in s:
        counts[c] += 1
    out = np.empty(k, dtype=np.int64)
    total = 0
    for c in range(k):
        total += counts[c]
        out[c] = total if tails else total - counts[c]
    return out


@njit(cache=True)
def _induce(s, stype, sa, k):
    n = len(s)
    heads = _buckets(s, k, False)
    for i in range(n):
        j = sa[i] - 1
        if sa[i] > 0 and not stype[j]:
            sa[heads[s[j]]] = j
            heads[s[j]] += 1
    tails = _buckets(s, k, True)
    for i in range(n - 1, -1, -1):
        j = sa[i] - 1
        if sa[i] > 0 and stype[j]:
            tails[s[j]] -= 1
            sa[tails[s[j]]] = j


@njit(cache=True)
def _lms_equal(s, stype, a, b):
    n = len(s)
    if a == n - 1 or b == n - 1:
        return False
    d = 0
    while True:
        if s[a + d] != s[b + d] or stype[a + d] != stype[b + d]:
            return False
        if d > 0:
            la = _is_lms(stype, a + d)
            lb = _is_lms(stype, b + d)
            if la and lb:
                return True
            if la or lb:
                return False
        d += 1


@njit(cache=True)
def _sort_lms(s, stype, k):
    """Induce-sort LMS substrings; returns (sa, reduced string, name count, lms positions)."""
    n = len(s)
    sa = np.full(n, -1, dtype=np.int32)
    tails = _buckets(s, k, True)
    for i in range(1, n):
        if _is_lms(stype, i):
            tails[s[i]] -= 1
            sa[tails[s[i]]] = i
    _induce(s, stype, sa, k)

    m = 0
    for i in range(n):
        if _is_lms(stype, sa[i]):
            sa[m] = sa[i]
            m += 1
    names = np.full(n // 2 + 1, -1, dtype=np.int32)
    name = 0
    prev = -1
    for i in range(m):
        pos = sa[i]
        if prev < 0 or not _lms_equal(s, stype, prev, pos):
            name += 1
            prev = pos
        names[pos // 2] = name - 1

    reduced = np.empty(m, dtype=np.int32)
    lms = np.empty(m, dtype=np.int32)
    j = 0
    for i in range(1, n):
        if _is_lms(stype, i):
            lms[j] = i
            reduced[j] = names[i // 2]
            j += 1
    return reduced, name, lms


@njit(cache=True)
def _place_sorted_lms(s, stype, k, sorted_lms):
    n = len(s)
    sa = np.full(n, -1, dtype=np.int32)
    tails = _buckets(s, k, True)
    for i in range(len(sorted_lms) - 1, -1, -1):
        j = sorted_lms[i]
        tails[s[j]] -= 1
        sa[tails[s[j]]] = j
    _induce(s, stype, sa, k)
    return sa


@njit(cache=True)
def _direct_order(reduced):
    out = np.empty(len(reduced), dtype=np.int32)
    for i in range(len(reduced)):
        out[reduced[i]] = i
    return out


def _sais(s: np.ndarray, k: int) -> np.ndarray:
    if len(s) == 1:
        return np.zeros(1, dtype=np.int32)
    stype = _classify(s)
    reduced, names, lms = _sort_lms(s, stype, k)
    if names < len(reduced):
        order = _sais(reduced, names)
    else:
        order = _direct_order(reduced)
    return _place_sorted_lms(s, stype, k, lms[order])


@njit(cache=True)
def _inverse(sa):
    isa = np.empty(len(sa), dtype=np.int32)
    for i in range(len(sa)):
        isa[sa[i] - 1] = i + 1
    return isa


@njit(cache=True)
def _phi(sa):
    phi = np.empty(len(sa), dtype=np.int32)
    if len(sa) == 0:
        return phi
    phi[sa[0] - 1] = 0
    for i in range(1, len(sa)):
        phi[sa[i] - 1] = sa[i - 1]
    return phi


# --- public API --------------------------------------------------------------


def suffix_array(text) -> np.ndarray:
    """1-indexed suffix array of ``text`` as a writable int32 array."""
    t = as_array(text)
    if len(t) == 0:
        return np.empty(0, dtype=INDEX_DTYPE)
    s = np.empty(len(t) + 1, dtype=np.int32)
    s[:-1] = t
    s[:-1] += 1
    s[-1] = 0
    sa = _sais(s, 257)
    # drop the sentinel suffix (always first) and shift to 1-indexed positions
    return sa[1:] + 1


def build_sa(text) -> SuffixArrayBundle:
    sa = suffix_array(text)
    return SuffixArrayBundle(_frozen(sa), _frozen(_inverse(sa)))


def inverse(sa: np.ndarray) -> np.ndarray:
    return _inverse(np.asarray(sa, dtype=INDEX_DTYPE))


def build_phi(sa: np.ndarray) -> np.ndarray:
    """phi[sa[i]] = sa[i-1]; the lexicographically smallest suffix maps to 0."""
    return _phi(np.asarray(sa, dtype=INDEX_DTYPE))


def build_sa_naive(text, cap=None) -> np.ndarray:
    """Sort suffixes by direct comparison. Quadratic; guarded by the oracle cap."""
    t = bytes(text)
    check_cap("build_sa_naive", len(t), cap)

    def cmp(a, b):
        x, y = t[a:], t[b:]
        return -1 if x < y else (1 if x > y else 0)

    order = sorted(range(len(t)), key=cmp_to_key(cmp))
    return np.array([i + 1 for i in order], dtype=INDEX_DTYPE)
