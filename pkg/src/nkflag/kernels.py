"""Hot numeric kernels: dense residual scans over the unit-norm charts.

The classification oracle sweeps millions of points over the constraint
surfaces, which dominates the runtime of a full verification run.  The scan
kernels therefore come in two interchangeable flavors: a numba ``@njit``
version (default when numba imports) and a pure-numpy fallback.  Set
``NKFLAG_NO_NUMBA=1`` to force the numpy path; ``benchmarks/bench_kernels.py``
times both.

Charts
------
Amplitude triples (a, b, c) >= 0 on the unit-norm surfaces are parametrized
by two angles/rapidities (p, q):

* chart 0 (compact form): a = cos p, b = sin p cos q, c = sin p sin q
* chart 1 (split form, norm +1): a = cosh p, b = sinh p cos q, c = sinh p sin q
* chart 2 (split form, norm -1): a = sinh p, b = cosh p cos q, c = cosh p sin q

The positive octant suffices: the three residual polynomials are odd or
even under each sign flip of a, b, c, so their zero set is sign-symmetric,
and representatives are canonicalized afterwards anyway.
"""

import math
import os
from dataclasses import dataclass

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - numba is a declared dependency
    numba = None
    HAVE_NUMBA = False

CHART_SPHERE = 0
CHART_SPLIT_POSITIVE = 1
CHART_SPLIT_NEGATIVE = 2

_HIT_CAPACITY = 400_000


def numba_enabled() -> bool:
    return HAVE_NUMBA and os.environ.get("NKFLAG_NO_NUMBA", "") not in ("1", "true", "yes")


def active_backend() -> str:
    return "numba" if numba_enabled() else "numpy"


def chart_point(chart: int, p: float, q: float) -> tuple[float, float, float]:
    """Amplitudes (a, b, c) of the chart parameters (p, q)."""
    if chart == CHART_SPHERE:
        return math.cos(p), math.sin(p) * math.cos(q), math.sin(p) * math.sin(q)
    if chart == CHART_SPLIT_POSITIVE:
        return math.cosh(p), math.sinh(p) * math.cos(q), math.sinh(p) * math.sin(q)
    if chart == CHART_SPLIT_NEGATIVE:
        return math.sinh(p), math.cosh(p) * math.cos(q), math.cosh(p) * math.sin(q)
    raise ValueError(f"unknown chart {chart!r}")


def residual_linf(a, b, c, eps: int):
    """Largest magnitude among the three tangency polynomials (vectorized)."""
    r1 = a * (a * a - eps * b * b) * b
    r2 = a * (a * a - eps * c * c) * c
    r3 = b * (c * c - b * b) * c
    return np.maximum(np.abs(r1), np.maximum(np.abs(r2), np.abs(r3)))


@dataclass(frozen=True)
class ScanResult:
    chart: int
    eps: int
    hits: np.ndarray          # (n_hits, 5): p, q, a, b, c
    hit_residuals: np.ndarray
    interior_min: float       # min residual where min(a,b,c) >= margin
    interior_argmin: tuple[float, float, float]
    points: int


def _scan_chart_py(chart, epsf, n_p, n_q, p_max, q_max, hit_thresh, margin,
                   hits, hit_res):
    """Reference scan loop; numba compiles this same body."""
    n_hits = 0
    interior_min = 1e300
    ia = ib = ic = 0.0
    dp = p_max / (n_p - 1)
    dq = q_max / (n_q - 1)
    for ip in range(n_p):
        p = ip * dp
        if chart == 0:
            ca, sa = math.cos(p), math.sin(p)
        elif chart == 1:
            ca, sa = math.cosh(p), math.sinh(p)
        else:
            ca, sa = math.sinh(p), math.cosh(p)
        for iq in range(n_q):
            q = iq * dq
            a = ca
            b = sa * math.cos(q)
            c = sa * math.sin(q)
            r1 = a * (a * a - epsf * b * b) * b
            r2 = a * (a * a - epsf * c * c) * c
            r3 = b * (c * c - b * b) * c
            res = max(abs(r1), max(abs(r2), abs(r3)))
            if res < hit_thresh:
                if n_hits < hits.shape[0]:
                    hits[n_hits, 0] = p
                    hits[n_hits, 1] = q
                    hits[n_hits, 2] = a
                    hits[n_hits, 3] = b
                    hits[n_hits, 4] = c
                    hit_res[n_hits] = res
                n_hits += 1
            if a >= margin and b >= margin and c >= margin and res < interior_min:
                interior_min = res
                ia, ib, ic = a, b, c
    return n_hits, interior_min, ia, ib, ic


if HAVE_NUMBA:
    _scan_chart_numba = numba.njit(cache=True)(_scan_chart_py)
else:  # pragma: no cover
    _scan_chart_numba = None


def _scan_chart_numpy(chart, epsf, n_p, n_q, p_max, q_max, hit_thresh, margin,
                      hits, hit_res):
    """Vectorized fallback with the same contract as the jitted loop."""
    dp = p_max / (n_p - 1)
    dq = q_max / (n_q - 1)
    q = np.arange(n_q) * dq
    cq, sq = np.cos(q), np.sin(q)
    n_hits = 0
    interior_min = np.inf
    ia = ib = ic = 0.0
    block = 256
    for start in range(0, n_p, block):
        p = (np.arange(start, min(start + block, n_p)) * dp)[:, None]
        if chart == CHART_SPHERE:
            a = np.broadcast_to(np.cos(p), (p.shape[0], n_q))
            sa = np.sin(p)
        elif chart == CHART_SPLIT_POSITIVE:
            a = np.broadcast_to(np.cosh(p), (p.shape[0], n_q))
            sa = np.sinh(p)
        else:
            a = np.broadcast_to(np.sinh(p), (p.shape[0], n_q))
            sa = np.cosh(p)
        b = sa * cq[None, :]
        c = sa * sq[None, :]
        res = residual_linf(a, b, c, epsf)
        mask = res < hit_thresh
        idx = np.nonzero(mask)
        for ip, iq in zip(*idx):
            if n_hits < hits.shape[0]:
                hits[n_hits] = (p[ip, 0], q[iq], a[ip, iq], b[ip, iq], c[ip, iq])
                hit_res[n_hits] = res[ip, iq]
            n_hits += 1
        interior = (a >= margin) & (b >= margin) & (c >= margin)
        if interior.any():
            masked = np.where(interior, res, np.inf)
            k = np.unravel_index(np.argmin(masked), masked.shape)
            if masked[k] < interior_min:
                interior_min = float(masked[k])
                ia, ib, ic = float(a[k]), float(b[k]), float(c[k])
    return n_hits, interior_min, ia, ib, ic


def chart_domain(chart: int, extent: float) -> tuple[float, float]:
    """(p_max, q_max) for a chart; extent bounds the rapidity charts."""
    if chart == CHART_SPHERE:
        return math.pi / 2.0, math.pi / 2.0
    return extent, math.pi / 2.0


def scan_chart(chart: int, eps: int, step: float, *, hit_thresh: float,
               margin: float, extent: float, backend: str | None = None) -> ScanResult:
    """Dense residual scan of one chart at the given parameter resolution."""
    p_max, q_max = chart_domain(chart, extent)
    n_p = int(math.ceil(p_max / step)) + 1
    n_q = int(math.ceil(q_max / step)) + 1
    hits = np.empty((_HIT_CAPACITY, 5))
    hit_res = np.empty(_HIT_CAPACITY)
    if backend is None:
        backend = active_backend()
    if backend == "numba":
        fn = _scan_chart_numba
        if fn is None:  # pragma: no cover
            raise RuntimeError("numba backend requested but numba is unavailable")
    elif backend == "numpy":
        fn = _scan_chart_numpy
    else:
        raise ValueError(f"unknown backend {backend!r}")
    n_hits, interior_min, ia, ib, ic = fn(
        chart, float(eps), n_p, n_q, p_max, q_max, hit_thresh, margin, hits, hit_res)
    if n_hits > _HIT_CAPACITY:
        raise RuntimeError(
            f"scan produced {n_hits} hits, over capacity {_HIT_CAPACITY}; "
            "raise the threshold or the capacity")
    return ScanResult(
        chart=chart,
        eps=eps,
        hits=hits[:n_hits].copy(),
        hit_residuals=hit_res[:n_hits].copy(),
        interior_min=float(interior_min),
        interior_argmin=(ia, ib, ic),
        points=n_p * n_q,
    )


def refine_candidate(chart: int, eps: int, p0: float, q0: float,
                     half_width: float, extent: float,
                     iterations: int = 50) -> tuple[float, float, float, float]:
    """Shrinking-box bisection on the residual around a scan hit.

    Each round samples a 5x5 sub-grid of the current box, recenters on the
    argmin and halves the box; the residual grows linearly away from the
    simple zeros, so the amplitudes converge well below 1e-10.
    """
    p_max, q_max = chart_domain(chart, extent)
    p, q = p0, q0
    w = half_width
    for _ in range(iterations):
        ps = np.clip(np.linspace(p - w, p + w, 5), 0.0, p_max)
        qs = np.clip(np.linspace(q - w, q + w, 5), 0.0, q_max)
        best = (np.inf, p, q)
        for pp in ps:
            for qq in qs:
                a, b, c = chart_point(chart, pp, qq)
                r = float(residual_linf(a, b, c, eps))
                if r < best[0]:
                    best = (r, pp, qq)
        _, p, q = best
        w *= 0.5
    a, b, c = chart_point(chart, p, q)
    return a, b, c, float(residual_linf(a, b, c, eps))
