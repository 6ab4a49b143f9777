"""The two ambient Lie algebras in a fixed ordered basis.

The basis order is (h1, h2, m1, m2, m3, m4, m5, m6) everywhere, including
reports; a single indexing convention prevents silent transposition bugs.
``epsilon = +1`` selects the compact algebra of special unitary matrices,
``epsilon = -1`` the split form preserving diag(+1, +1, -1).  The isotropy
part is span(h1, h2); its complement m carries the tangent space of the
quotient at the base point, split into three rank-two distributions
V1 = span(m1, m4), V2 = span(m2, m5), V3 = span(m3, m6).

Structure constants are computed once from matrix commutators and cached;
they are never hand-entered.  Coefficient extraction goes through the
metric Gram matrix so that both signatures are handled uniformly.
"""

import functools
import math

import numpy as np

from .matrix_core import adjoint, commutator

__all__ = [
    "RIEMANNIAN",
    "PSEUDO",
    "SIGNATURES",
    "SIGNATURE_NAMES",
    "H1", "H2", "M1", "M2", "M3", "M4", "M5", "M6",
    "BASIS_NAMES",
    "IMINUS",
    "check_signature",
    "signature_label",
    "basis",
    "metric",
    "killing_form",
    "gram_diagonal",
    "coefficients",
    "from_coefficients",
    "project_m",
    "project_h",
    "m_part",
    "h_part",
    "tangent_matrix",
    "ad_H",
    "structure_constants",
    "bracket_coefficients",
    "biinvariant_D",
    "biinvariant_R",
    "group_defect",
]

RIEMANNIAN = +1
PSEUDO = -1
SIGNATURES = (RIEMANNIAN, PSEUDO)
SIGNATURE_NAMES = {RIEMANNIAN: "riemannian", PSEUDO: "pseudo"}

# basis slots
H1, H2, M1, M2, M3, M4, M5, M6 = range(8)
BASIS_NAMES = ("h1", "h2", "m1", "m2", "m3", "m4", "m5", "m6")
M_SLICE = slice(2, 8)
H_SLICE = slice(0, 2)

_SQ3 = math.sqrt(3.0)

IMINUS = np.diag([1.0, 1.0, -1.0]).astype(np.complex128)
IMINUS.setflags(write=False)


def check_signature(eps: int) -> int:
    if eps not in SIGNATURES:
        raise ValueError(f"signature must be +1 or -1, got {eps!r}")
    return eps


def signature_label(eps: int) -> str:
    return SIGNATURE_NAMES[check_signature(eps)]


def _frozen(a: np.ndarray) -> np.ndarray:
    a.setflags(write=False)
    return a


@functools.lru_cache(maxsize=None)
def basis(eps: int) -> np.ndarray:
    """The eight ordered basis matrices, shape (8, 3, 3)."""
    check_signature(eps)
    h1 = [[-1j, 0, 0], [0, 0, 0], [0, 0, 1j]]
    h2 = [[1j / _SQ3, 0, 0], [0, -2j / _SQ3, 0], [0, 0, 1j / _SQ3]]
    m1 = [[0, -1, 0], [1, 0, 0], [0, 0, 0]]
    m4 = [[0, 1j, 0], [1j, 0, 0], [0, 0, 0]]
    if eps == RIEMANNIAN:
        m2 = [[0, 0, 0], [0, 0, -1], [0, 1, 0]]
        m3 = [[0, 0, -1], [0, 0, 0], [1, 0, 0]]
        m5 = [[0, 0, 0], [0, 0, 1j], [0, 1j, 0]]
        m6 = [[0, 0, 1j], [0, 0, 0], [1j, 0, 0]]
    else:
        m2 = [[0, 0, 0], [0, 0, 1], [0, 1, 0]]
        m3 = [[0, 0, 1], [0, 0, 0], [1, 0, 0]]
        m5 = [[0, 0, 0], [0, 0, -1j], [0, 1j, 0]]
        m6 = [[0, 0, -1j], [0, 0, 0], [1j, 0, 0]]
    return _frozen(np.array([h1, h2, m1, m2, m3, m4, m5, m6], dtype=np.complex128))


def metric(x: np.ndarray, y: np.ndarray, eps: int) -> float:
    """Bi-invariant trace-form metric; signature-twisted for the split form."""
    check_signature(eps)
    xh = adjoint(x)
    if eps == PSEUDO:
        xh = IMINUS @ xh @ IMINUS
    return float(0.5 * np.trace(xh @ y).real)


def killing_form(x: np.ndarray, y: np.ndarray) -> float:
    """Trace form Re tr(x^H y) on the compact algebra; equals twice the metric."""
    return float(np.trace(adjoint(x) @ y).real)


@functools.lru_cache(maxsize=None)
def _gram(eps: int) -> np.ndarray:
    b = basis(eps)
    g = np.empty((8, 8))
    for i in range(8):
        for j in range(8):
            g[i, j] = metric(b[i], b[j], eps)
    return _frozen(g)


@functools.lru_cache(maxsize=None)
def gram_diagonal(eps: int) -> np.ndarray:
    """Diagonal of the basis Gram matrix (the basis is orthogonal in both forms)."""
    g = _gram(eps)
    off = g - np.diag(np.diag(g))
    if np.max(np.abs(off)) > 1e-14:
        raise RuntimeError("basis Gram matrix is not diagonal")
    return _frozen(np.diag(g).copy())


@functools.lru_cache(maxsize=None)
def _dual(eps: int) -> np.ndarray:
    """Extraction tensor: coefficients(x)[i] = Re sum_jk dual[i,j,k] * x[k,j]."""
    b = basis(eps)
    d = np.empty((8, 3, 3), dtype=np.complex128)
    diag = gram_diagonal(eps)
    for i in range(8):
        bi = adjoint(b[i])
        if eps == PSEUDO:
            bi = IMINUS @ bi @ IMINUS
        d[i] = 0.5 * bi / diag[i]
    return _frozen(d)


def coefficients(x: np.ndarray, eps: int) -> np.ndarray:
    """Coordinates of an algebra element (batched over leading axes)."""
    return np.einsum("ijk,...kj->...i", _dual(eps), np.asarray(x)).real


def from_coefficients(c, eps: int) -> np.ndarray:
    """Inverse of :func:`coefficients` (batched over leading axes)."""
    return np.einsum("...i,ijk->...jk", np.asarray(c, dtype=float), basis(eps))


def m_part(x: np.ndarray, eps: int) -> np.ndarray:
    """The six tangent coordinates, order (m1, ..., m6)."""
    return coefficients(x, eps)[..., M_SLICE]


def h_part(x: np.ndarray, eps: int) -> np.ndarray:
    return coefficients(x, eps)[..., H_SLICE]


def project_m(x: np.ndarray, eps: int) -> np.ndarray:
    c = coefficients(x, eps)
    c[..., H_SLICE] = 0.0
    return from_coefficients(c, eps)


def project_h(x: np.ndarray, eps: int) -> np.ndarray:
    c = coefficients(x, eps)
    c[..., M_SLICE] = 0.0
    return from_coefficients(c, eps)


def tangent_matrix(v, eps: int) -> np.ndarray:
    """Matrix realization of a six-coordinate tangent vector."""
    v = np.asarray(v, dtype=float)
    return np.einsum("...i,ijk->...jk", v, basis(eps)[M_SLICE])


def ad_H(s: float, t: float, x: np.ndarray) -> np.ndarray:
    """Conjugation by the isotropy torus element parametrized by (s, t).

    The element is the same diagonal unitary in both forms, so no signature
    argument is needed; it preserves each distribution V1, V2, V3.
    """
    phases = np.exp(1j * np.array([
        (_SQ3 * s - 3.0 * t) / 3.0,
        -2.0 * s / _SQ3,
        (_SQ3 * s + 3.0 * t) / 3.0,
    ]))
    return (phases[:, None] * x) * np.conj(phases)[None, :]


@functools.lru_cache(maxsize=None)
def structure_constants(eps: int) -> np.ndarray:
    """c[i, j, k] with [b_i, b_j] = sum_k c[i, j, k] b_k, shape (8, 8, 8)."""
    b = basis(eps)
    c = np.empty((8, 8, 8))
    for i in range(8):
        for j in range(8):
            br = commutator(b[i], b[j])
            c[i, j] = coefficients(br, eps)
            # guard against drift out of the algebra
            if np.max(np.abs(from_coefficients(c[i, j], eps) - br)) > 1e-12:
                raise RuntimeError(f"bracket [{BASIS_NAMES[i]}, {BASIS_NAMES[j]}] left the algebra")
    return _frozen(c)


def bracket_coefficients(cx, cy, eps: int) -> np.ndarray:
    """Bracket in coordinates (batched over leading axes)."""
    return np.einsum("...i,...j,ijk->...k", np.asarray(cx, float), np.asarray(cy, float), structure_constants(eps))


def biinvariant_D(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Connection of the bi-invariant metric on the group: half the bracket."""
    return 0.5 * commutator(x, y)


def biinvariant_R(x: np.ndarray, y: np.ndarray, z: np.ndarray) -> np.ndarray:
    """Curvature of the bi-invariant connection: quarter nested bracket."""
    return 0.25 * commutator(z, commutator(x, y))


def group_defect(g: np.ndarray, eps: int) -> float:
    """How far g is from the structure group: max of the metric-preservation
    and unit-determinant defects."""
    m = np.eye(3, dtype=np.complex128) if eps == RIEMANNIAN else IMINUS
    pres = np.max(np.abs(adjoint(g) @ m @ g - m))
    det = abs(np.linalg.det(g) - 1.0)
    return float(max(pres, det))
