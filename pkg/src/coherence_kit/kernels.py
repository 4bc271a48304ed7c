"""Hot numeric kernels, each in a jitted and a pure-numpy variant.

The jitted variants are the default; ``COHERENCE_KIT_NO_NUMBA=1`` selects the
numpy fallbacks (see :mod:`coherence_kit._accel`).  Both variants of a kernel
must agree exactly on verdicts and to rounding on values; the test suite and
``benchmarks/bench_kernels.py`` exercise the pairing.
"""

from __future__ import annotations

import numpy as np

from ._accel import NUMBA_ENABLED, njit

# Largest modulus whose shifted-square exponents |(j+x mod d)^2 - j^2| <= d^2 - 1
# still fit in int64.
MAX_SAFE_DIM = 3_037_000_499


def _injectivity_scan_np(d: int) -> tuple[int, int, int]:
    """Find a colliding pair of shifted-square exponents, one shift at a time.

    Returns (x, i, j) with i < j and (j+x)^2 - j^2 == (i+x)^2 - i^2 over the
    lifted integers, or (-1, -1, -1) when every shift has pairwise distinct
    exponents.
    """
    j = np.arange(d, dtype=np.int64)
    for x in range(1, d):
        expo = ((j + x) % d) ** 2 - j**2
        order = np.argsort(expo, kind="mergesort")
        vals = expo[order]
        dup = np.nonzero(vals[1:] == vals[:-1])[0]
        if dup.size:
            t = int(dup[0])
            i1, j1 = int(order[t]), int(order[t + 1])
            return x, min(i1, j1), max(i1, j1)
    return -1, -1, -1


@njit(cache=True)
def _injectivity_scan_jit(d):  # pragma: no cover - compiled twin of the scan above
    for x in range(1, d):
        expo = np.empty(d, dtype=np.int64)
        for j in range(d):
            jx = j + x
            if jx >= d:
                jx -= d
            expo[j] = jx * jx - j * j
        order = np.argsort(expo, kind="mergesort")
        for t in range(d - 1):
            a = order[t]
            b = order[t + 1]
            if expo[a] == expo[b]:
                if a < b:
                    return x, a, b
                return x, b, a
    return -1, -1, -1


def injectivity_counterexample(d: int) -> tuple[int, int, int] | None:
    """Exhaustively search Z_d for a shift x != 0 with a repeated exponent.

    Returns None when the exponent map j -> (j+x)^2 - j^2 (computed in Z after
    lifting) is injective for every nonzero shift, otherwise the offending
    (x, i, j) triple.
    """
    if d < 2:
        raise ValueError(f"modulus must be at least 2, got {d}")
    if d > MAX_SAFE_DIM:
        raise ValueError(f"modulus {d} exceeds the int64-safe bound {MAX_SAFE_DIM}")
    scan = _injectivity_scan_jit if NUMBA_ENABLED else _injectivity_scan_np
    x, i, j = scan(d)
    if x < 0:
        return None
    return int(x), int(i), int(j)


def _derivative_grid_np(sym, anti, phases, p, q, grid, rate):
    """Directional-derivative surface over a 2-d phase grid, vectorized.

    Entry (a, b) is the coherence derivative evaluated with phase p set to
    grid[a], phase q set to grid[b], and the remaining phases fixed.
    """
    d = phases.shape[0]
    n = grid.shape[0]
    col = grid[:, None]
    row = grid[None, :]
    out = np.zeros((n, n))
    for pp in range(d):
        php = col if pp == p else (row if pp == q else phases[pp])
        for qq in range(pp):
            phq = col if qq == p else (row if qq == q else phases[qq])
            diff = php - phq
            term = sym[pp, qq] * np.cos(diff) + anti[pp, qq] * np.sin(diff)
            out = out + term
    return 2.0 * rate / d * out


@njit(cache=True)
def _derivative_grid_jit(sym, anti, phases, p, q, grid, rate):  # pragma: no cover
    d = phases.shape[0]
    n = grid.shape[0]
    out = np.empty((n, n))
    for a in range(n):
        for b in range(n):
            acc = 0.0
            for pp in range(d):
                if pp == p:
                    php = grid[a]
                elif pp == q:
                    php = grid[b]
                else:
                    php = phases[pp]
                for qq in range(pp):
                    if qq == p:
                        phq = grid[a]
                    elif qq == q:
                        phq = grid[b]
                    else:
                        phq = phases[qq]
                    diff = php - phq
                    acc += sym[pp, qq] * np.cos(diff) + anti[pp, qq] * np.sin(diff)
            out[a, b] = 2.0 * rate / d * acc
    return out


def derivative_grid(sym, anti, phases, p, q, grid, rate):
    """Dispatch the derivative-surface kernel to the active implementation."""
    kernel = _derivative_grid_jit if NUMBA_ENABLED else _derivative_grid_np
    return kernel(
        np.ascontiguousarray(sym, dtype=np.float64),
        np.ascontiguousarray(anti, dtype=np.float64),
        np.ascontiguousarray(phases, dtype=np.float64),
        int(p),
        int(q),
        np.ascontiguousarray(grid, dtype=np.float64),
        float(rate),
    )
