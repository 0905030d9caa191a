"""Array kernels for product filtering and Cayley tables.

Each kernel has a numba ``@njit`` body and a vectorised numpy twin. The numba
path runs when numba imports and ``OIE_DISABLE_NUMBA`` is unset (or ``0``);
:func:`set_backend` switches at runtime. Times reach the kernels as int64
after scaling every rational by a common denominator, so comparisons stay
exact. When scaled values would not fit in int64 the arrays are ``object``
dtype holding Fractions and only the numpy twin can run.
"""
from __future__ import annotations

import math
import os
from contextlib import contextmanager
from fractions import Fraction

import numpy as np

try:
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    HAVE_NUMBA = False

_INT_LIMIT = 2 ** 62


def _env_disabled() -> bool:
    return os.environ.get("OIE_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")


_backend = "numba" if HAVE_NUMBA and not _env_disabled() else "numpy"


def get_backend() -> str:
    return _backend


def set_backend(name: str) -> None:
    global _backend
    if name not in ("numba", "numpy"):
        raise ValueError(f"unknown backend {name!r}")
    if name == "numba" and not HAVE_NUMBA:
        raise RuntimeError("numba is not importable")
    _backend = name


@contextmanager
def use_backend(name: str):
    previous = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(previous)


def _jit(fn):
    if not HAVE_NUMBA:
        return fn
    return njit(cache=True, nogil=True)(fn)


class TimeCodec:
    """Maps rationals onto a shared integer grid, or onto Fractions if too wide."""

    def __init__(self, values):
        values = list(values)
        scale = 1
        for v in values:
            scale = math.lcm(scale, v.denominator)
        widest = max((abs(v.numerator) * (scale // v.denominator) for v in values), default=0)
        self.exact_int = widest < _INT_LIMIT
        self.scale = scale

    @property
    def dtype(self):
        return np.int64 if self.exact_int else object

    def encode(self, value: Fraction):
        if self.exact_int:
            return value.numerator * (self.scale // value.denominator)
        return value

    def encode_many(self, values) -> np.ndarray:
        return np.array([self.encode(v) for v in values], dtype=self.dtype)


def _use_numba(*arrays) -> bool:
    return _backend == "numba" and all(a.dtype != object for a in arrays)


# -- product enumeration ---------------------------------------------------

def product_choices(sizes) -> np.ndarray:
    """Row-major choice indices for the product of factors of ``sizes``.

    Row order equals ``itertools.product`` order, so if every factor is
    sorted the rows come out lexicographically sorted.
    """
    sizes = [int(s) for s in sizes]
    if not sizes or any(s == 0 for s in sizes):
        return np.zeros((0, len(sizes)), dtype=np.int64)
    grids = np.indices(sizes, dtype=np.int64)
    return grids.reshape(len(sizes), -1).T.copy()


# -- forbidden patterns ------------------------------------------------------

@_jit
def _pattern_hits_nb(choices, patterns):
    m, n = choices.shape
    out = np.zeros(m, dtype=np.bool_)
    for r in range(m):
        for p in range(patterns.shape[0]):
            hit = True
            for k in range(n):
                want = patterns[p, k]
                if want >= 0 and choices[r, k] != want:
                    hit = False
                    break
            if hit:
                out[r] = True
                break
    return out


def _pattern_hits_np(choices, patterns):
    out = np.zeros(choices.shape[0], dtype=bool)
    for pattern in patterns:
        cols = np.nonzero(pattern >= 0)[0]
        out |= np.all(choices[:, cols] == pattern[cols], axis=1)
    return out


def pattern_hits(choices: np.ndarray, patterns: np.ndarray) -> np.ndarray:
    """Rows of ``choices`` matching any pattern row (``-1`` is a wildcard)."""
    if patterns.shape[0] == 0 or choices.shape[0] == 0:
        return np.zeros(choices.shape[0], dtype=bool)
    if _backend == "numba":
        return _pattern_hits_nb(choices, patterns)
    return _pattern_hits_np(choices, patterns)


# -- built-in rules ----------------------------------------------------------

@_jit
def _overlap_hits_nb(starts, ends, positions):
    m = starts.shape[0]
    q = positions.shape[0]
    out = np.zeros(m, dtype=np.bool_)
    for r in range(m):
        for a in range(q):
            i = positions[a]
            for b in range(a + 1, q):
                j = positions[b]
                if starts[r, i] < ends[r, j] and starts[r, j] < ends[r, i]:
                    out[r] = True
                    break
            if out[r]:
                break
    return out


def _overlap_hits_np(starts, ends, positions):
    out = np.zeros(starts.shape[0], dtype=bool)
    for a, i in enumerate(positions):
        for j in positions[a + 1:]:
            hit = (starts[:, i] < ends[:, j]) & (starts[:, j] < ends[:, i])
            out |= np.asarray(hit, dtype=bool)
    return out


def overlap_hits(starts, ends, positions) -> np.ndarray:
    """Rows where any two of the given columns overlap (half-open)."""
    positions = np.asarray(positions, dtype=np.int64)
    if _use_numba(starts, ends):
        return _overlap_hits_nb(starts, ends, positions)
    return _overlap_hits_np(starts, ends, positions)


@_jit
def _gap_hits_nb(starts, ends, i, j, gap):
    m = starts.shape[0]
    out = np.zeros(m, dtype=np.bool_)
    for r in range(m):
        after = starts[r, j] - ends[r, i] >= gap
        before = starts[r, i] - ends[r, j] >= gap
        out[r] = not (after or before)
    return out


def _gap_hits_np(starts, ends, i, j, gap):
    after = (starts[:, j] - ends[:, i]) >= gap
    before = (starts[:, i] - ends[:, j]) >= gap
    return ~np.asarray(after | before, dtype=bool)


def gap_hits(starts, ends, i: int, j: int, gap) -> np.ndarray:
    """Rows where columns ``i`` and ``j`` are separated by less than ``gap``."""
    if _use_numba(starts, ends) and not isinstance(gap, Fraction):
        return _gap_hits_nb(starts, ends, i, j, np.int64(gap))
    return _gap_hits_np(starts, ends, i, j, gap)


# -- domain filter -----------------------------------------------------------

@_jit
def _window_mask_nb(starts, ends, alpha, beta):
    m, n = starts.shape
    out = np.ones(m, dtype=np.bool_)
    for r in range(m):
        for k in range(n):
            if starts[r, k] < alpha or ends[r, k] > beta:
                out[r] = False
                break
    return out


def _window_mask_np(starts, ends, alpha, beta):
    inside = np.asarray(starts >= alpha, dtype=bool) & np.asarray(ends <= beta, dtype=bool)
    return np.all(inside, axis=1)


def window_mask(starts, ends, alpha, beta) -> np.ndarray:
    if starts.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    if _use_numba(starts, ends):
        return _window_mask_nb(starts, ends, alpha, beta)
    return _window_mask_np(starts, ends, alpha, beta)


@_jit
def _touches_bounds_nb(starts, ends, keep, alpha, beta):
    m, n = starts.shape
    for k in range(n):
        left = False
        right = False
        for r in range(m):
            if keep[r]:
                if starts[r, k] == alpha:
                    left = True
                if ends[r, k] == beta:
                    right = True
                if left and right:
                    break
        if not (left and right):
            return False
    return True


def _touches_bounds_np(starts, ends, keep, alpha, beta):
    if not keep.any():
        return False
    left = np.asarray(starts[keep] == alpha, dtype=bool).any(axis=0)
    right = np.asarray(ends[keep] == beta, dtype=bool).any(axis=0)
    return bool(left.all() and right.all())


def touches_bounds(starts, ends, keep, alpha, beta) -> bool:
    """Every column has a kept row starting at ``alpha`` and one ending at ``beta``."""
    if _use_numba(starts, ends):
        return bool(_touches_bounds_nb(starts, ends, keep, alpha, beta))
    return _touches_bounds_np(starts, ends, keep, alpha, beta)


# -- ascending filter --------------------------------------------------------

@_jit
def _ascending_mask_nb(starts, ends):
    m, n = starts.shape
    out = np.ones(m, dtype=np.bool_)
    for r in range(m):
        for i in range(n):
            for j in range(i + 1, n):
                if ends[r, i] > starts[r, j]:
                    out[r] = False
                    break
            if not out[r]:
                break
    return out


def _ascending_mask_np(starts, ends):
    # all pairs i < j with end_i <= start_j  <=>  running max of ends never passes the next start
    if starts.shape[1] < 2:
        return np.ones(starts.shape[0], dtype=bool)
    running = np.maximum.accumulate(ends, axis=1)
    return np.all(np.asarray(running[:, :-1] <= starts[:, 1:], dtype=bool), axis=1)


def ascending_mask(starts, ends) -> np.ndarray:
    if starts.shape[0] == 0:
        return np.zeros(0, dtype=bool)
    if _use_numba(starts, ends):
        return _ascending_mask_nb(starts, ends)
    return _ascending_mask_np(starts, ends)


# -- Cayley table ------------------------------------------------------------

@_jit
def _cayley_nb(masks, lookup):
    size = masks.shape[0]
    out = np.zeros((size, size), dtype=np.int64)
    for i in range(size):
        a = masks[i]
        for j in range(size):
            b = masks[j]
            if a != 0 and b != 0 and (a & b) == 0:
                out[i, j] = lookup[a | b]
    return out


def _cayley_np(masks, lookup):
    a = masks[:, None]
    b = masks[None, :]
    live = (a != 0) & (b != 0) & ((a & b) == 0)
    return np.where(live, lookup[a | b], 0).astype(np.int64)


def cayley_cells(masks: np.ndarray, lookup: np.ndarray) -> np.ndarray:
    """Index table of ``order[i] * order[j]`` for bitmask-encoded elements.

    ``lookup[mask]`` is the position of that element in ``masks``; index 0
    must be the absorbing element (mask 0).
    """
    if _backend == "numba":
        return _cayley_nb(masks, lookup)
    return _cayley_np(masks, lookup)
