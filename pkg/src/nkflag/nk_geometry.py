"""The nearly Kahler package at the base point of the quotient.

Tangent vectors are six-coordinate arrays in the order (m1, ..., m6).
The four invariant almost complex structures are cached 6x6 sign tables;
the connection at the base point is minus half the m-part of the bracket.
Derived tensors (the structure tensor G, the covariant derivatives of the
auxiliary complex structures, the curvature) all come from that one recipe,
with the convention fixed by G(m1, m2) = +m6.

The curvature tensor is computed along two independent routes: nested
brackets of the reductive decomposition, and a closed tensorial expression
in the metric and the four almost complex structures.  Their agreement on
all basis triples is the headline check of the whole artifact.
"""

import dataclasses
import functools

import numpy as np

from . import constants, lie_structure
from .lie_structure import (
    H_SLICE,
    M_SLICE,
    check_signature,
    gram_diagonal,
    structure_constants,
)
from .report import CheckReport

__all__ = [
    "ACS_KINDS",
    "acs_matrix",
    "apply_acs",
    "metric_m",
    "metric_family",
    "nabla",
    "g_tensor",
    "nabla_ji",
    "curvature_lie",
    "curvature_tensorial",
    "identity_suite",
    "random_tangent",
    "distribution_parts",
    "distribution_amplitudes",
]

ACS_KINDS = ("J", "J1", "J2", "J3")

# signs of the image of (m1, m2, m3) under each structure; the image of
# m_{i+3} is forced by squaring to minus the identity
_ACS_SIGNS = {
    "J": (1.0, 1.0, -1.0),
    "J1": (1.0, -1.0, 1.0),
    "J2": (-1.0, -1.0, -1.0),
    "J3": (-1.0, 1.0, 1.0),
}

#: distribution membership of the six tangent slots
DISTRIBUTION_OF_SLOT = (0, 1, 2, 0, 1, 2)


@functools.lru_cache(maxsize=None)
def acs_matrix(kind: str) -> np.ndarray:
    """6x6 matrix of one almost complex structure (signature independent)."""
    if kind not in _ACS_SIGNS:
        raise ValueError(f"unknown almost complex structure {kind!r}")
    signs = _ACS_SIGNS[kind]
    j = np.zeros((6, 6))
    for i, s in enumerate(signs):
        j[i + 3, i] = s
        j[i, i + 3] = -s
    j.setflags(write=False)
    return j


def apply_acs(kind: str, x) -> np.ndarray:
    return np.asarray(x, dtype=float) @ acs_matrix(kind).T


@dataclasses.dataclass(frozen=True)
class _Tables:
    bracket_mm: np.ndarray   # (6, 6, 8) full bracket of tangent slots
    bracket_hm: np.ndarray   # (2, 6, 8) bracket of isotropy with tangent slots
    nabla: np.ndarray        # (6, 6, 6) connection coefficients at the base point
    gram_m: np.ndarray       # (6,) diagonal tangent Gram


@functools.lru_cache(maxsize=None)
def _tables(eps: int) -> _Tables:
    check_signature(eps)
    sc = structure_constants(eps)
    bracket_mm = sc[M_SLICE, M_SLICE, :].copy()
    bracket_hm = sc[H_SLICE, M_SLICE, :].copy()
    nab = -0.5 * bracket_mm[:, :, M_SLICE].copy()
    gram_m = gram_diagonal(eps)[M_SLICE].copy()
    for a in (bracket_mm, bracket_hm, nab, gram_m):
        a.setflags(write=False)
    return _Tables(bracket_mm, bracket_hm, nab, gram_m)


def metric_m(x, y, eps: int) -> float | np.ndarray:
    """Submersion metric on tangent coordinates (batched over leading axes)."""
    t = _tables(eps)
    out = np.einsum("...i,...i,i->...", np.asarray(x, float), np.asarray(y, float), t.gram_m)
    return float(out) if out.ndim == 0 else out


def metric_family(lam, x, y, eps: int) -> float | np.ndarray:
    """Three-parameter family of invariant metrics: one weight per distribution."""
    lam = tuple(float(v) for v in lam)
    if len(lam) != 3 or any(v <= 0.0 for v in lam):
        raise ValueError(f"metric weights must be three positive numbers, got {lam!r}")
    t = _tables(eps)
    w = np.array([lam[d] for d in DISTRIBUTION_OF_SLOT]) * t.gram_m
    out = np.einsum("...i,...i,i->...", np.asarray(x, float), np.asarray(y, float), w)
    return float(out) if out.ndim == 0 else out


def nabla(x, y, eps: int) -> np.ndarray:
    """Connection at the base point: minus half the tangent part of the bracket."""
    return np.einsum("...i,...j,ijk->...k", np.asarray(x, float), np.asarray(y, float), _tables(eps).nabla)


def g_tensor(x, y, eps: int) -> np.ndarray:
    """Structure tensor: derivative of J fed through the connection recipe."""
    j = acs_matrix("J")
    return nabla(x, np.asarray(y, float) @ j.T, eps) - nabla(x, y, eps) @ j.T


def nabla_ji(i: int, x, y, eps: int) -> np.ndarray:
    """Covariant derivative of the i-th auxiliary complex structure (i in 1..3)."""
    if i not in (1, 2, 3):
        raise ValueError(f"auxiliary structure index must be 1, 2 or 3, got {i!r}")
    ji = acs_matrix(f"J{i}")
    return nabla(x, np.asarray(y, float) @ ji.T, eps) - nabla(x, y, eps) @ ji.T


def _bracket_mm(x, y, t: _Tables) -> np.ndarray:
    return np.einsum("...i,...j,ijk->...k", x, y, t.bracket_mm)


def curvature_lie(x, y, z, eps: int) -> np.ndarray:
    """Curvature from nested brackets of the reductive decomposition."""
    t = _tables(eps)
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    z = np.asarray(z, float)
    byz_m = _bracket_mm(y, z, t)[..., M_SLICE]
    bxz_m = _bracket_mm(x, z, t)[..., M_SLICE]
    bxy = _bracket_mm(x, y, t)
    t1 = _bracket_mm(x, byz_m, t)[..., M_SLICE]
    t2 = _bracket_mm(y, bxz_m, t)[..., M_SLICE]
    t3 = _bracket_mm(bxy[..., M_SLICE], z, t)[..., M_SLICE]
    t4 = np.einsum("...a,...j,ajk->...k", bxy[..., H_SLICE], z, t.bracket_hm)[..., M_SLICE]
    return 0.25 * t1 - 0.25 * t2 - 0.5 * t3 - t4


def curvature_tensorial(x, y, z, eps: int) -> np.ndarray:
    """Curvature from the closed expression in the metric and the four
    almost complex structures; must agree with :func:`curvature_lie`."""
    x = np.asarray(x, float)
    y = np.asarray(y, float)
    z = np.asarray(z, float)

    def g(u, v):
        return np.asarray(metric_m(u, v, eps))[..., None]

    acc = 0.25 * (g(y, z) * x - g(x, z) * y)
    j = acs_matrix("J")
    jx, jy, jz = x @ j.T, y @ j.T, z @ j.T
    acc = acc - 0.25 * (g(jy, z) * jx - g(jx, z) * jy + 2.0 * g(x, jy) * jz)
    for kind in ("J1", "J2", "J3"):
        ji = acs_matrix(kind)
        jix, jiy, jiz = x @ ji.T, y @ ji.T, z @ ji.T
        acc = acc + 0.5 * (g(jiy, z) * jix - g(jix, z) * jiy + 2.0 * g(x, jiy) * jiz)
    return acc


def random_tangent(rng: np.random.Generator, n: int | None = None) -> np.ndarray:
    """Uniform samples from the [-1, 1]^6 coordinate box."""
    shape = (6,) if n is None else (n, 6)
    return rng.uniform(-1.0, 1.0, size=shape)


def distribution_parts(x) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Projections of a tangent vector onto V1, V2, V3 (batched)."""
    x = np.asarray(x, dtype=float)
    parts = []
    for d in range(3):
        p = np.zeros_like(x)
        p[..., d] = x[..., d]
        p[..., d + 3] = x[..., d + 3]
        parts.append(p)
    return tuple(parts)


def distribution_amplitudes(x, eps: int) -> np.ndarray:
    """Norms of the three distribution projections, shape (..., 3)."""
    parts = distribution_parts(x)
    amps = [np.sqrt(np.abs(np.asarray(metric_m(p, p, eps)))) for p in parts]
    return np.stack(amps, axis=-1)


# ---------------------------------------------------------------------------
# identity suite
# ---------------------------------------------------------------------------

def _basis_vectors() -> np.ndarray:
    return np.eye(6)


def identity_suite(eps: int, seed: int = constants.DEFAULT_SEED,
                   samples: int = 1000) -> list[CheckReport]:
    """Evaluate every structural identity on all basis pairs plus random pairs.

    Returns one report per identity with the worst error observed.
    """
    check_signature(eps)
    rng = np.random.default_rng(seed)
    e6 = _basis_vectors()
    xs = np.vstack([np.repeat(e6, 6, axis=0), random_tangent(rng, samples)])
    ys = np.vstack([np.tile(e6, (6, 1)), random_tangent(rng, samples)])
    n = xs.shape[0]
    reports: list[CheckReport] = []

    def add(name: str, err: float, tol: float, count: int = n):
        reports.append(CheckReport(name, float(err), tol, count))

    j = acs_matrix("J")
    jmats = {k: acs_matrix(k) for k in ACS_KINDS}

    # algebraic relations between the four structures
    for kind in ACS_KINDS:
        m = jmats[kind]
        add(f"acs_square_{kind}", np.max(np.abs(m @ m + np.eye(6))), constants.TOL_EXACT, 36)
    add("acs_sum_relation",
        np.max(np.abs(j + jmats["J1"] + jmats["J2"] + jmats["J3"])), constants.TOL_EXACT, 36)
    add("acs_triple_product",
        np.max(np.abs(j + jmats["J1"] @ jmats["J2"] @ jmats["J3"])), constants.TOL_EXACT, 36)
    comm_err = 0.0
    for a in ACS_KINDS:
        for b in ACS_KINDS:
            comm_err = max(comm_err, np.max(np.abs(jmats[a] @ jmats[b] - jmats[b] @ jmats[a])))
    add("acs_commutativity", comm_err, constants.TOL_EXACT, 36)

    # compatibility of every structure with every metric in the family
    compat_err = 0.0
    for _ in range(8):
        lam = tuple(rng.uniform(0.2, 3.0, size=3))
        for kind in ACS_KINDS:
            jx = xs @ jmats[kind].T
            jy = ys @ jmats[kind].T
            compat_err = max(compat_err, np.max(np.abs(
                metric_family(lam, jx, jy, eps) - metric_family(lam, xs, ys, eps))))
    add("acs_metric_compatibility", compat_err, constants.TOL_EXACT)

    # structure tensor
    gxy = g_tensor(xs, ys, eps)
    add("g_skew_symmetry", np.max(np.abs(gxy + g_tensor(ys, xs, eps))), constants.TOL_EXACT)
    add("g_vanishing_on_diagonal", np.max(np.abs(g_tensor(xs, xs, eps))), constants.TOL_EXACT)
    add("g_anticommutes_with_j",
        np.max(np.abs(g_tensor(xs, ys @ j.T, eps) + gxy @ j.T)), constants.TOL_EXACT)
    add("g_output_orthogonality",
        max(np.max(np.abs(metric_m(gxy, xs, eps))), np.max(np.abs(metric_m(gxy, ys, eps)))),
        constants.TOL_EXACT)

    # compatibility identities tying each auxiliary structure to G
    for i in (1, 2, 3):
        ji = jmats[f"J{i}"]
        lhs = gxy @ ji.T
        rhs = (g_tensor(xs @ ji.T, ys, eps) + g_tensor(xs, ys @ ji.T, eps)
               + g_tensor(xs, ys @ j.T, eps))
        add(f"g_compatibility_J{i}", np.max(np.abs(lhs - rhs)), constants.TOL_EXACT)

    # summed compatibility identity
    lhs = sum(g_tensor(xs, ys @ jmats[f"J{i}"].T, eps) for i in (1, 2, 3))
    rhs = sum(g_tensor(xs @ jmats[f"J{i}"].T, ys, eps) for i in (1, 2, 3))
    add("g_sum_identity", np.max(np.abs(lhs - rhs)), constants.TOL_EXACT)

    # covariant derivatives of the auxiliary structures
    for i in (1, 2, 3):
        ji = jmats[f"J{i}"]
        lhs = nabla_ji(i, xs, ys, eps)
        rhs = -0.5 * gxy - 0.5 * g_tensor(xs @ ji.T, ys, eps) @ j.T
        add(f"nabla_J{i}_identity", np.max(np.abs(lhs - rhs)), constants.TOL_EXACT)

    # constant-type identity (unit constant); quartic in the inputs
    lhs = metric_m(gxy, gxy, eps)
    rhs = (metric_m(xs, xs, eps) * metric_m(ys, ys, eps)
           - metric_m(xs, ys, eps) ** 2 - metric_m(xs, ys @ j.T, eps) ** 2)
    add("constant_type_identity", np.max(np.abs(lhs - rhs)), constants.TOL_ALPHA)

    return reports
