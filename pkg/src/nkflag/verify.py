"""Composed verification suites across all structural layers.

``run_verification`` evaluates, for one signature, the algebra-level
invariants (Jacobi, reductivity, invariance of the metric), the exponential
contracts, the connection table, the identity suite, and the dual-route
curvature checks.  It returns plain reports; pass/fail policy lives in the
tolerances.  ``corruption_self_test`` flips one basis sign and confirms the
curvature cross-check notices: a meta-check that the suite has teeth.
"""

import itertools

import numpy as np

from . import constants, lie_structure, nk_geometry
from .lie_structure import (
    IMINUS,
    M5,
    PSEUDO,
    RIEMANNIAN,
    adjoint,
    basis,
    coefficients,
    from_coefficients,
    gram_diagonal,
    killing_form,
    metric,
    signature_label,
    structure_constants,
)
from .matrix_core import commutator, expm, identity, max_abs
from .nk_geometry import curvature_lie, curvature_tensorial, random_tangent
from .report import CheckReport

__all__ = [
    "run_verification",
    "connection_table",
    "expected_connection_table",
    "corruption_self_test",
    "curvature_cross_check",
]

# the 24 nonzero connection coefficients of the compact form, as
# (source slot, argument slot) -> (image slot, coefficient) with slots 1..6
_CONNECTION_TABLE_COMPACT = {
    (1, 2): (3, +0.5), (2, 3): (1, +0.5), (3, 1): (2, +0.5),
    (1, 3): (2, -0.5), (2, 1): (3, -0.5), (3, 2): (1, -0.5),
    (1, 5): (6, +0.5), (2, 6): (4, +0.5), (3, 4): (5, -0.5),
    (1, 6): (5, -0.5), (2, 4): (6, -0.5), (3, 5): (4, +0.5),
    (4, 2): (6, +0.5), (5, 3): (4, -0.5), (6, 1): (5, +0.5),
    (4, 3): (5, +0.5), (5, 1): (6, -0.5), (6, 2): (4, -0.5),
    (4, 5): (3, -0.5), (5, 6): (1, +0.5), (6, 4): (2, +0.5),
    (4, 6): (2, -0.5), (5, 4): (3, +0.5), (6, 5): (1, -0.5),
}

# pairs joining the two negative distributions; the split form flips exactly
# these signs (derived from the matrix brackets, frozen here as a regression
# guard)
_SPLIT_FLIPPED_PAIRS = frozenset({
    (2, 3), (3, 2), (2, 6), (6, 2), (3, 5), (5, 3), (5, 6), (6, 5),
})


def expected_connection_table(eps: int) -> dict:
    if eps == RIEMANNIAN:
        return dict(_CONNECTION_TABLE_COMPACT)
    table = {}
    for pair, (slot, coef) in _CONNECTION_TABLE_COMPACT.items():
        flip = -1.0 if pair in _SPLIT_FLIPPED_PAIRS else 1.0
        table[pair] = (slot, coef * flip)
    return table


def connection_table(eps: int) -> tuple[float, float]:
    """(table error, off-table error): worst deviation of the connection from
    the expected tabulated coefficients, and worst value on pairs that
    should vanish."""
    expected = expected_connection_table(eps)
    e6 = np.eye(6)
    table_err = 0.0
    off_err = 0.0
    for i in range(6):
        for j in range(6):
            v = nk_geometry.nabla(e6[i], e6[j], eps)
            if (i + 1, j + 1) in expected:
                slot, coef = expected[(i + 1, j + 1)]
                want = np.zeros(6)
                want[slot - 1] = coef
                table_err = max(table_err, float(np.max(np.abs(v - want))))
            else:
                off_err = max(off_err, float(np.max(np.abs(v))))
    return table_err, off_err


def curvature_cross_check(eps: int) -> float:
    """Worst difference of the two curvature routes over all basis triples."""
    e6 = np.eye(6)
    worst = 0.0
    for i, j, k in itertools.product(range(6), repeat=3):
        d = curvature_lie(e6[i], e6[j], e6[k], eps) - curvature_tensorial(e6[i], e6[j], e6[k], eps)
        worst = max(worst, float(np.max(np.abs(d))))
    return worst


def _random_algebra(rng, eps, n):
    return from_coefficients(rng.uniform(-1.0, 1.0, size=(n, 8)), eps)


def run_verification(eps: int, seed: int = constants.DEFAULT_SEED,
                     samples: int = 200, tol_exact: float | None = None) -> list[CheckReport]:
    """Full structural suite for one signature; ~45 reports."""
    lie_structure.check_signature(eps)
    tol_exact = constants.TOL_EXACT if tol_exact is None else tol_exact
    rng = np.random.default_rng(seed)
    label = signature_label(eps)
    b = basis(eps)
    reports: list[CheckReport] = []

    def add(name, err, tol, n):
        reports.append(CheckReport(f"{name}[{label}]", float(err), tol, n))

    # --- algebra layer ---
    add("basis_traceless", max(abs(np.trace(m)) for m in b), constants.TOL_TABLE, 8)
    twist = (lambda m: adjoint(m)) if eps == RIEMANNIAN else (lambda m: IMINUS @ adjoint(m) @ IMINUS)
    add("basis_antihermitian", max(max_abs(twist(m) + m) for m in b), constants.TOL_TABLE, 8)

    expected_gram = np.ones(8) if eps == RIEMANNIAN else np.array([1, 1, 1, -1, -1, 1, -1, -1.0])
    add("gram_diagonal", np.max(np.abs(gram_diagonal(eps) - expected_gram)), tol_exact, 8)

    xs = _random_algebra(rng, eps, samples)
    cs = coefficients(xs, eps)
    add("coefficient_roundtrip",
        np.max(np.abs(coefficients(from_coefficients(cs, eps), eps) - cs)),
        constants.TOL_ROUNDTRIP, samples)

    sc = structure_constants(eps)
    add("structure_antisymmetry", np.max(np.abs(sc + np.swapaxes(sc, 0, 1))), constants.TOL_TABLE, 64)

    jac = 0.0
    for i, j, k in itertools.product(range(8), repeat=3):
        s = (commutator(b[i], commutator(b[j], b[k]))
             + commutator(b[j], commutator(b[k], b[i]))
             + commutator(b[k], commutator(b[i], b[j])))
        jac = max(jac, max_abs(s))
    add("jacobi_identity", jac, constants.TOL_TABLE, 512)

    red = 0.0
    for h in b[:2]:
        for m in b[2:]:
            red = max(red, np.max(np.abs(coefficients(commutator(h, m), eps)[:2])))
    add("reductive_bracket", red, constants.TOL_TABLE, 12)

    ad_err = 0.0
    for _ in range(samples):
        s, t = rng.uniform(-3.0, 3.0, size=2)
        x, y = _random_algebra(rng, eps, 2)
        ad_err = max(ad_err, abs(
            metric(lie_structure.ad_H(s, t, x), lie_structure.ad_H(s, t, y), eps)
            - metric(x, y, eps)))
    add("metric_ad_invariance", ad_err, tol_exact, samples)

    dist_err = 0.0
    for _ in range(32):
        s, t = rng.uniform(-3.0, 3.0, size=2)
        for slot, partner in ((2, 5), (3, 6), (4, 7)):
            img = coefficients(lie_structure.ad_H(s, t, b[slot]), eps)
            outside = np.delete(img, [slot, partner])
            dist_err = max(dist_err, np.max(np.abs(outside)))
    add("ad_preserves_distributions", dist_err, tol_exact, 96)

    if eps == RIEMANNIAN:
        k_err = 0.0
        for _ in range(samples):
            x, y = _random_algebra(rng, eps, 2)
            k_err = max(k_err, abs(killing_form(x, y) - 2.0 * metric(x, y, eps)))
        add("killing_form_proportionality", k_err, tol_exact, samples)

    # --- exponential contracts (hyperbolic directions cap the usable norm) ---
    scale = 10.0 if eps == RIEMANNIAN else 2.0
    minv_err = grp_err = 0.0
    for _ in range(64):
        x = _random_algebra(rng, eps, 1)[0]
        x *= scale * rng.uniform(0.1, 1.0) / max(np.linalg.norm(x, 2), 1e-12)
        g = expm(x)
        minv_err = max(minv_err, max_abs(g @ expm(-x) - identity()))
        grp_err = max(grp_err, lie_structure.group_defect(g, eps))
    add("expm_inverse_defect", minv_err, tol_exact, 64)
    add("expm_group_membership", grp_err, tol_exact, 64)

    comm_err = 0.0
    for _ in range(32):
        # commuting pairs: the isotropy plane, and scaled copies of one element
        a1, a2 = rng.uniform(-2.0, 2.0, size=2)
        x = a1 * b[0] + a2 * b[1]
        y = rng.uniform(-2.0, 2.0) * b[0] + rng.uniform(-2.0, 2.0) * b[1]
        comm_err = max(comm_err, max_abs(expm(x + y) - expm(x) @ expm(y)))
        z = _random_algebra(rng, eps, 1)[0]
        comm_err = max(comm_err, max_abs(expm(1.7 * z) - expm(z) @ expm(0.7 * z)))
    add("expm_commuting_product", comm_err, tol_exact, 64)

    # --- connection table ---
    table_err, off_err = connection_table(eps)
    add("connection_table", table_err, constants.TOL_TABLE, 24)
    add("connection_off_table", off_err, constants.TOL_TABLE, 12)

    xs6 = random_tangent(rng, samples)
    add("connection_diagonal", np.max(np.abs(nk_geometry.nabla(xs6, xs6, eps))), tol_exact, samples)

    # --- structure tensor pinned value ---
    e6 = np.eye(6)
    g12 = nk_geometry.g_tensor(e6[0], e6[1], eps)
    add("g_m1_m2_is_m6", np.max(np.abs(g12 - e6[5])), constants.TOL_TABLE, 1)
    g_skew = 0.0
    for i in range(6):
        for j in range(6):
            g_skew = max(g_skew, np.max(np.abs(
                nk_geometry.g_tensor(e6[i], e6[j], eps) + nk_geometry.g_tensor(e6[j], e6[i], eps))))
    add("g_skew_on_basis", g_skew, tol_exact, 36)
    big = random_tangent(rng, 1000)
    add("g_vanishing_diagonal_random", np.max(np.abs(nk_geometry.g_tensor(big, big, eps))), tol_exact, 1000)

    # --- identity suite ---
    reports.extend(
        CheckReport(f"{r.name}[{label}]", r.max_abs_error, r.tolerance, r.samples)
        for r in nk_geometry.identity_suite(eps, seed=seed)
    )

    # --- curvature ---
    add("curvature_lie_vs_tensorial", curvature_cross_check(eps), tol_exact, 216)

    def g(u, v):
        return nk_geometry.metric_m(u, v, eps)

    skew = bianchi = pair_sym = met_comp = 0.0
    for _ in range(samples):
        x, y, z, w = random_tangent(rng, 4)
        rxyz = curvature_tensorial(x, y, z, eps)
        skew = max(skew, np.max(np.abs(rxyz + curvature_tensorial(y, x, z, eps))))
        bianchi = max(bianchi, np.max(np.abs(
            rxyz + curvature_tensorial(y, z, x, eps) + curvature_tensorial(z, x, y, eps))))
        pair_sym = max(pair_sym, abs(
            g(rxyz, w) - g(curvature_tensorial(z, w, x, eps), y)))
        met_comp = max(met_comp, abs(
            g(rxyz, w) + g(curvature_tensorial(x, y, w, eps), z)))
    add("curvature_skew_first_pair", skew, constants.TOL_PROPERTY, samples)
    add("curvature_first_bianchi", bianchi, constants.TOL_PROPERTY, samples)
    add("curvature_pair_symmetry", pair_sym, constants.TOL_PROPERTY, samples)
    add("curvature_metric_compatibility", met_comp, constants.TOL_PROPERTY, samples)

    return reports


def _flipped_nabla_tables(eps: int, flip_slot: int):
    """Bracket tables recomputed after negating one basis matrix; used only
    by the corruption self-test, never cached."""
    b = basis(eps).copy()
    b[flip_slot] = -b[flip_slot]
    diag = gram_diagonal(eps)
    dual = np.empty((8, 3, 3), dtype=np.complex128)
    for i in range(8):
        bi = adjoint(b[i])
        if eps == PSEUDO:
            bi = IMINUS @ bi @ IMINUS
        dual[i] = 0.5 * bi / diag[i]
    sc = np.empty((8, 8, 8))
    for i in range(8):
        for j in range(8):
            sc[i, j] = np.einsum("ajk,kj->a", dual, commutator(b[i], b[j])).real
    return sc


def corruption_self_test(eps: int, flip_slot: int = M5) -> float:
    """Flip one basis sign, rebuild the bracket route only, and measure how
    badly it now disagrees with the (uncorrupted) tensorial route.

    A healthy suite reports an O(1) error here; the negative-control check
    passes when this value is large.
    """
    sc = _flipped_nabla_tables(eps, flip_slot)
    br_mm = sc[2:, 2:, :]
    br_hm = sc[0:2, 2:, :]
    e6 = np.eye(6)

    def corrupted_lie(x, y, z):
        byz = np.einsum("i,j,ijk->k", y, z, br_mm)
        bxz = np.einsum("i,j,ijk->k", x, z, br_mm)
        bxy = np.einsum("i,j,ijk->k", x, y, br_mm)
        t1 = np.einsum("i,j,ijk->k", x, byz[2:], br_mm)[2:]
        t2 = np.einsum("i,j,ijk->k", y, bxz[2:], br_mm)[2:]
        t3 = np.einsum("i,j,ijk->k", bxy[2:], z, br_mm)[2:]
        t4 = np.einsum("a,j,ajk->k", bxy[:2], z, br_hm)[2:]
        return 0.25 * t1 - 0.25 * t2 - 0.5 * t3 - t4

    worst = 0.0
    for i, j, k in itertools.product(range(6), repeat=3):
        d = corrupted_lie(e6[i], e6[j], e6[k]) - curvature_tensorial(e6[i], e6[j], e6[k], eps)
        worst = max(worst, float(np.max(np.abs(d))))
    return worst
