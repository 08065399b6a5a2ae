"""Previous/next smaller values over the suffix array.

Lexicographic order (indexed by rank):
    psv[i] = nearest rank j < i with sa[j] < sa[i], else 0
    nsv[i] = nearest rank j > i with sa[j] < sa[i], else 0
Text order (indexed by text position): psv_text[sa[i]] = sa[psv[i]] and
likewise for nsv, with 0 mapping to 0.

Every kernel writes through ``(array, offset, stride)`` triples so the same
code fills either two plain arrays or one interleaved array where
``pnsv[2i] = psv[i]`` and ``pnsv[2i + 1] = nsv[i]`` (1-indexed ``i``).
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from ._oracle import check_cap
from .suffix_array import INDEX_DTYPE, build_phi

LEX = "lex"
TEXT = "text"
PLAIN = "plain"
INTERLEAVED = "interleaved"

BRUTE_CAP = 10_000


@dataclass
class NeighborArrays:
    order: str
    layout: str
    psv: Optional[np.ndarray] = None
    nsv: Optional[np.ndarray] = None
    pnsv: Optional[np.ndarray] = None
    s_max: Optional[int] = None
    pushes: int = 0
    eliminations: int = 0

    def __len__(self):
        if self.layout == INTERLEAVED:
            return len(self.pnsv) // 2
        return len(self.psv)

    def _parts(self):
        if self.layout == INTERLEAVED:
            return self.pnsv, 0, self.pnsv, 1, 2
        return self.psv, 0, self.nsv, 0, 1

    def get_psv(self, i: int) -> int:
        arr, off, _, _, stride = self._parts()
        return int(arr[(i - 1) * stride + off])

    def get_nsv(self, i: int) -> int:
        _, _, arr, off, stride = self._parts()
        return int(arr[(i - 1) * stride + off])

    def plain(self) -> "NeighborArrays":
        if self.layout == PLAIN:
            return self
        return NeighborArrays(
            self.order, PLAIN, psv=self.pnsv[0::2].copy(), nsv=self.pnsv[1::2].copy(),
            s_max=self.s_max, pushes=self.pushes, eliminations=self.eliminations,
        )

    @property
    def nbytes(self) -> int:
        arrays = (self.pnsv,) if self.layout == INTERLEAVED else (self.psv, self.nsv)
        return sum(a.nbytes for a in arrays)

    def to_csv(self, fh, sa=None):
        """Debug dump (i, sa[i], psv[i], nsv[i]); the sa column is blank when not given."""
        p = self.plain()
        fh.write("i,sa,psv,nsv\n")
        for i in range(len(p.psv)):
            s = "" if sa is None else int(sa[i])
            fh.write(f"{i + 1},{s},{p.psv[i]},{p.nsv[i]}\n")


def _alloc(n, layout, fill=0):
    if layout == INTERLEAVED:
        pnsv = np.full(2 * n, fill, dtype=INDEX_DTYPE)
        return (pnsv, 0, pnsv, 1, 2), {"pnsv": pnsv}
    psv = np.full(n, fill, dtype=INDEX_DTYPE)
    nsv = np.full(n, fill, dtype=INDEX_DTYPE)
    return (psv, 0, nsv, 0, 1), {"psv": psv, "nsv": nsv}


def _check_layout(layout):
    if layout not in (PLAIN, INTERLEAVED):
        raise ValueError(f"unknown layout {layout!r}")


# --- stack scan ----------------------------------------------------------------


@njit(cache=True)
def _stack_scan(sa, parr, poff, narr, noff, stride):
    n = len(sa)
    stack = np.empty(min(n, 1024) if n > 0 else 1, dtype=np.int32)
    top = 0
    s_max = 0
    pushes = 0
    for i in range(1, n + 1):
        x = sa[i - 1]
        while top > 0 and sa[stack[top - 1] - 1] > x:
            narr[(stack[top - 1] - 1) * stride + noff] = i
            top -= 1
        parr[(i - 1) * stride + poff] = stack[top - 1] if top > 0 else 0
        if top == len(stack):
            grown = np.empty(2 * len(stack), dtype=np.int32)
            grown[:top] = stack[:top]
            stack = grown
        stack[top] = i
        top += 1
        pushes += 1
        if top > s_max:
            s_max = top
    while top > 0:
        narr[(stack[top - 1] - 1) * stride + noff] = 0
        top -= 1
    return s_max, pushes


def psv_nsv_stack(sa, layout=PLAIN) -> NeighborArrays:
    """Single left-to-right scan with an explicit stack; records the peak stack depth."""
    _check_layout(layout)
    sa = np.asarray(sa, dtype=INDEX_DTYPE)
    parts, arrays = _alloc(len(sa), layout)
    s_max, pushes = _stack_scan(sa, *parts)
    return NeighborArrays(LEX, layout, s_max=int(s_max), pushes=int(pushes), **arrays)


# --- peak elimination, lexicographic order --------------------------------------


@njit(cache=True)
def _peak_lex(sa, parr, poff, narr, noff, stride):
    n = len(sa)
    eliminated = 0
    if n == 0:
        return eliminated
    for i in range(1, n + 1):
        narr[(i - 1) * stride + noff] = 0
    parr[poff] = 0
    for i in range(2, n + 1):
        j = i - 1
        x = sa[i - 1]
        while True:
            if j == 0 or sa[j - 1] < x:
                parr[(i - 1) * stride + poff] = j
                break
            # j is a peak: its NSV is i, continue with its PSV
            narr[(j - 1) * stride + noff] = i
            j = parr[(j - 1) * stride + poff]
            eliminated += 1
    return eliminated


def psv_nsv_peak_lex(sa, layout=PLAIN) -> NeighborArrays:
    _check_layout(layout)
    sa = np.asarray(sa, dtype=INDEX_DTYPE)
    parts, arrays = _alloc(len(sa), layout)
    eliminated = _peak_lex(sa, *parts)
    return NeighborArrays(LEX, layout, eliminations=int(eliminated), **arrays)


# --- peak elimination, text order ----------------------------------------------


@njit(cache=True)
def _peak_text(phi, parr, poff, narr, noff, stride, undefined):
    n = len(phi)
    eliminated = 0
    for i0 in range(1, n + 1):
        j = phi[i0 - 1]
        i = i0
        while True:
            if j < i:
                parr[(i - 1) * stride + poff] = j
                nxt = narr[(i - 1) * stride + noff]
                if nxt == undefined:
                    break
                i = nxt  # i was a peak
            else:
                narr[(j - 1) * stride + noff] = i
                prv = parr[(j - 1) * stride + poff]
                if prv == undefined:
                    break
                j = prv  # j was a peak
            eliminated += 1
    # entries never resolved have no smaller neighbour on that side
    for i in range(n):
        if parr[i * stride + poff] == undefined:
            parr[i * stride + poff] = 0
        if narr[i * stride + noff] == undefined:
            narr[i * stride + noff] = 0
    return eliminated


def psv_nsv_peak_text(text, sa, layout=PLAIN, reuse_sa=False) -> NeighborArrays:
    """Text-order PSV/NSV via the Phi array.

    With ``reuse_sa=True`` (plain layout only) the caller's ``sa`` buffer is
    consumed: it is overwritten with the text-order PSV values and returned as
    ``psv``. It must be a writable int32 array.
    """
    _check_layout(layout)
    n = len(text)
    if len(sa) != n:
        raise ValueError("suffix array length does not match text")
    undefined = n + 2
    if reuse_sa:
        if layout != PLAIN:
            raise ValueError("SA storage reuse applies to the plain layout only")
        if not (isinstance(sa, np.ndarray) and sa.dtype == INDEX_DTYPE and sa.flags.writeable):
            raise ValueError("reuse_sa requires a writable int32 suffix array")
        phi = build_phi(sa)
        psv = sa
        psv.fill(undefined)
        nsv = np.full(n, undefined, dtype=INDEX_DTYPE)
        parts, arrays = (psv, 0, nsv, 0, 1), {"psv": psv, "nsv": nsv}
    else:
        phi = build_phi(sa)
        parts, arrays = _alloc(n, layout, fill=undefined)
    eliminated = _peak_text(phi, *parts, undefined)
    return NeighborArrays(TEXT, layout, eliminations=int(eliminated), **arrays)


# --- layout conversion and oracles ----------------------------------------------


def interleave(arrays: NeighborArrays) -> NeighborArrays:
    """Reference conversion from plain to interleaved layout."""
    if arrays.layout != PLAIN:
        raise ValueError("input must use the plain layout")
    pnsv = np.empty(2 * len(arrays.psv), dtype=INDEX_DTYPE)
    pnsv[0::2] = arrays.psv
    pnsv[1::2] = arrays.nsv
    return NeighborArrays(
        arrays.order, INTERLEAVED, pnsv=pnsv, s_max=arrays.s_max,
        pushes=arrays.pushes, eliminations=arrays.eliminations,
    )


@njit(cache=True)
def _brute(sa, psv, nsv):
    n = len(sa)
    for i in range(n):
        psv[i] = 0
        for j in range(i - 1, -1, -1):
            if sa[j] < sa[i]:
                psv[i] = j + 1
                break
        nsv[i] = 0
        for j in range(i + 1, n):
            if sa[j] < sa[i]:
                nsv[i] = j + 1
                break


def psv_nsv_brute(sa, cap=None) -> NeighborArrays:
    """Direct evaluation of the nearest-smaller definitions (quadratic)."""
    sa = np.asarray(sa, dtype=INDEX_DTYPE)
    check_cap("psv_nsv_brute", len(sa), cap, default=BRUTE_CAP)
    psv = np.empty(len(sa), dtype=INDEX_DTYPE)
    nsv = np.empty(len(sa), dtype=INDEX_DTYPE)
    _brute(sa, psv, nsv)
    return NeighborArrays(LEX, PLAIN, psv=psv, nsv=nsv)


def lex_to_text(sa, arrays: NeighborArrays) -> NeighborArrays:
    """Map lexicographic-order arrays to text order (0 stays 0)."""
    sa = np.asarray(sa, dtype=INDEX_DTYPE)
    p = arrays.plain()
    padded = np.concatenate(([0], sa)).astype(INDEX_DTYPE)
    psv = np.empty(len(sa), dtype=INDEX_DTYPE)
    nsv = np.empty(len(sa), dtype=INDEX_DTYPE)
    psv[sa - 1] = padded[p.psv]
    nsv[sa - 1] = padded[p.nsv]
    return NeighborArrays(TEXT, PLAIN, psv=psv, nsv=nsv)


def visible_chain_max(psv) -> int:
    """Longest chain i, psv[i], psv[psv[i]], ... over all ranks."""
    psv = np.asarray(psv)
    depth = np.zeros(len(psv) + 1, dtype=np.int64)
    for i in range(1, len(psv) + 1):
        depth[i] = depth[psv[i - 1]] + 1
    return int(depth.max()) if len(psv) else 0
