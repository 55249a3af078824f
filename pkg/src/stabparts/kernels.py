"""Hot kernels for exhaustive subset scans.

Two implementations are provided for each kernel: a numba @njit version and
a pure-numpy fallback.  Set STABPARTS_NO_NUMBA=1 to force the numpy path
(the fallback is also used automatically when numba is unavailable).
benchmarks/bench_kernels.py compares the two.

Subsets of {0..n-1} are encoded as integer bit masks, point i -> bit 2^i.
"""

from __future__ import annotations

import os

import numpy as np

_FORCE_NUMPY = os.environ.get("STABPARTS_NO_NUMBA", "") not in ("", "0")

if not _FORCE_NUMPY:
    try:
        from numba import njit, prange

        HAVE_NUMBA = True
    except ImportError:  # pragma: no cover
        HAVE_NUMBA = False
else:
    HAVE_NUMBA = False

USING_NUMBA = HAVE_NUMBA

MAX_SCAN_BITS = 22


def stabilizer_counts_numpy(elems: np.ndarray, n: int) -> np.ndarray:
    """|Stab(S)| for every subset mask S in 0..2^n-1.

    elems is the (m, n) image array of all group elements.  For each element
    the image of every mask is built with n shifted ORs; equality marks the
    masks that element stabilizes.
    """
    total = np.int64(1) << n
    masks = np.arange(total, dtype=np.int64)
    counts = np.zeros(total, dtype=np.int64)
    for row in elems:
        img = np.zeros(total, dtype=np.int64)
        for j in range(n):
            img |= ((masks >> j) & 1) << np.int64(row[j])
        counts += img == masks
    return counts


if HAVE_NUMBA:

    @njit(parallel=True, cache=True)
    def _stabilizer_counts_numba(elems, n):  # pragma: no cover - jit
        m = elems.shape[0]
        total = np.int64(1) << n
        counts = np.zeros(total, dtype=np.int64)
        for mask in prange(total):
            c = 0
            for e in range(m):
                img = np.int64(0)
                for j in range(n):
                    if (mask >> j) & 1:
                        img |= np.int64(1) << elems[e, j]
                if img == mask:
                    c += 1
            counts[mask] = c
        return counts

    def stabilizer_counts_numba(elems: np.ndarray, n: int) -> np.ndarray:
        return _stabilizer_counts_numba(np.ascontiguousarray(elems, np.int64), n)


def stabilizer_counts(elems: np.ndarray, n: int) -> np.ndarray:
    if n > MAX_SCAN_BITS:
        raise ValueError(f"degree {n} exceeds exhaustive scan bound {MAX_SCAN_BITS}")
    if USING_NUMBA:
        return stabilizer_counts_numba(elems, n)
    return stabilizer_counts_numpy(elems, n)


def orbit_union_masks(orbit_masks: list[int]) -> np.ndarray:
    """All 2^r unions of the given orbit masks, by doubling."""
    arr = np.zeros(1, dtype=np.int64)
    for om in orbit_masks:
        arr = np.concatenate([arr, arr | np.int64(om)])
    return arr


def mark_orbit_unions_numpy(covered: np.ndarray, orbit_masks: list[int]) -> None:
    covered[orbit_union_masks(orbit_masks)] = True


if HAVE_NUMBA:

    @njit(cache=True)
    def _mark_orbit_unions_numba(covered, masks):  # pragma: no cover - jit
        r = masks.shape[0]
        total = 1 << r
        for s in range(total):
            u = np.int64(0)
            for j in range(r):
                if (s >> j) & 1:
                    u |= masks[j]
            covered[u] = True

    def mark_orbit_unions_numba(covered: np.ndarray, orbit_masks: list[int]) -> None:
        _mark_orbit_unions_numba(covered, np.asarray(orbit_masks, dtype=np.int64))


def mark_orbit_unions(covered: np.ndarray, orbit_masks: list[int]) -> None:
    """Set covered[u] for every union u of the given orbit masks."""
    if USING_NUMBA:
        mark_orbit_unions_numba(covered, orbit_masks)
    else:
        mark_orbit_unions_numpy(covered, orbit_masks)
