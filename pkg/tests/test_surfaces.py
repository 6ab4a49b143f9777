"""Tests of the six example immersions and the negative control.

The per-surface aggregate numbers (exponential agreement, metric closed
forms, curvature, residuals) run on a 21-point grid here; the acceptance
module repeats them on the full default grids.
"""

import math

import numpy as np
import pytest

from nkflag import constants
from nkflag import surfaces as sf
from nkflag.classification import minor_equations
from nkflag.lie_structure import M1, M4, PSEUDO, RIEMANNIAN
from nkflag.matrix_core import max_abs

SQ3 = math.sqrt(3.0)
GRID = 21


class TestDescriptors:
    def test_ids_and_signatures(self):
        assert sf.SURFACE_IDS == (1, 2, 3, 4, 5, 6)
        assert [sf.get_surface(i).eps for i in sf.SURFACE_IDS] == [
            RIEMANNIAN, RIEMANNIAN, RIEMANNIAN, PSEUDO, PSEUDO, PSEUDO]

    def test_bad_id_rejected(self):
        for bad in (0, 7, "x", None):
            with pytest.raises(ValueError):
                sf.get_surface(bad)

    def test_expected_curvatures(self):
        assert [sf.get_surface(i).expected_K for i in sf.SURFACE_IDS] == [4, 1, 0, 4, 4, 1]


class TestClosedForms:
    def test_identity_at_origin(self):
        for sid in sf.SURFACE_IDS:
            assert max_abs(sf.evaluate(sid, 0.0, 0.0) - np.eye(3)) < 1e-14
        assert max_abs(sf.evaluate(3, 0.0, 0.0) - np.eye(3)) == 0.0

    def test_hyperbolic_disc_formula(self):
        for t in (0.2, 0.9, 1.7):
            for u in (0.0, 1.3):
                ch, sh, ph = math.cosh(t), math.sinh(t), np.exp(1j * u)
                expected = np.array([
                    [1, 0, 0],
                    [0, ch, sh / ph],
                    [0, sh * ph, ch],
                ])
                assert max_abs(sf.evaluate(5, t, u) - expected) < 1e-14

    def test_quarter_turn_value(self):
        expected = np.array([[0, -1, 0], [1, 0, 0], [0, 0, 1]], dtype=complex)
        assert max_abs(sf.evaluate(1, math.pi / 2, 0.0) - expected) < 1e-15

    @pytest.mark.parametrize("sid", sf.SURFACE_IDS)
    def test_matches_exponential(self, sid, summary_cache):
        assert summary_cache(sid, GRID)["expm_defect"] < constants.TOL_EXPM_CLOSED_FORM

    @pytest.mark.parametrize("sid", sf.SURFACE_IDS)
    def test_group_membership(self, sid, summary_cache):
        assert summary_cache(sid, GRID)["group_defect"] < constants.TOL_GROUP_MEMBERSHIP


class TestFrames:
    @pytest.mark.parametrize("sid", sf.SURFACE_IDS)
    def test_analytic_vs_finite_difference(self, sid):
        desc = sf.get_surface(sid)
        t_lo, t_hi = desc.t_range
        for t in np.linspace(t_lo, t_hi, 5):
            for u in (0.3, 2.1, 5.0):
                at, au = sf.frame_matrices(desc, t, u, "analytic")
                ft, fu = sf.frame_matrices(desc, t, u, "fd")
                assert max_abs(at - ft) < constants.TOL_FRAME_AGREEMENT
                assert max_abs(au - fu) < constants.TOL_FRAME_AGREEMENT

    def test_t_derivative_is_generator_direction(self):
        desc = sf.get_surface(1)
        for t, u in ((0.4, 0.9), (1.2, 3.3)):
            fr = sf.frame(desc, t, u)
            want = np.zeros(8)
            want[M1], want[M4] = math.cos(u), math.sin(u)
            np.testing.assert_allclose(fr.omega_t, want, atol=1e-13)

    @pytest.mark.parametrize("sid", sf.SURFACE_IDS)
    def test_t_derivative_horizontal(self, sid, summary_cache):
        assert summary_cache(sid, GRID)["horizontality"] < constants.TOL_HORIZONTAL

    def test_vertical_part_of_u_derivative(self):
        # for the V1 sphere the isotropy component is
        # -(sin^2 t / 2) h1 + (sqrt(3) sin^2 t / 2) h2
        for t, u in ((0.5, 0.0), (1.1, 2.0)):
            fr = sf.frame(1, t, u)
            s2 = math.sin(t) ** 2
            np.testing.assert_allclose(fr.omega_u_v, [-s2 / 2.0, SQ3 * s2 / 2.0], atol=1e-13)

    def test_flat_torus_frames_fully_horizontal(self):
        fr = sf.frame(3, 0.8, 1.9)
        assert np.max(np.abs(fr.omega_u_v)) < 1e-14
        assert np.max(np.abs(fr.omega_t_v)) < 1e-14

    def test_frame_method_validation(self):
        with pytest.raises(ValueError):
            sf.frame_matrices(1, 0.3, 0.3, "symbolic")


class TestAlmostComplex:
    @pytest.mark.parametrize("sid,factor", [
        (1, lambda t: math.sin(t) * math.cos(t)),
        (2, math.sin),
        (3, lambda t: 1.0),
        (4, lambda t: math.sin(t) * math.cos(t)),
        (5, lambda t: math.sinh(t) * math.cosh(t)),
        (6, math.sinh),
    ])
    def test_alignment_and_factor(self, sid, factor):
        for t in (0.3, 0.8, 1.4):
            for u in (0.0, 2.5):
                residual, f = sf.almost_complex_check(sid, t, u)
                assert residual < constants.TOL_AC_RESIDUAL
                assert f == pytest.approx(factor(t), abs=1e-12)

    def test_degenerate_point_returns_zero(self):
        residual, f = sf.almost_complex_check(1, 0.0, 1.0)
        assert residual == 0.0 and f == 0.0

    @pytest.mark.parametrize("sid", sf.SURFACE_IDS)
    def test_max_residual_over_grid(self, sid, summary_cache):
        assert summary_cache(sid, GRID)["ac_residual_max"] < constants.TOL_AC_RESIDUAL


class TestInducedMetric:
    def test_pinned_values(self):
        e, f, g = sf.induced_metric(1, math.pi / 4, 1.7)
        assert (e, f, g) == pytest.approx((1.0, 0.0, 0.25), abs=1e-13)
        e, f, g = sf.induced_metric(3, 0.9, 0.1)
        assert (e, f, g) == pytest.approx((1.0, 0.0, 1.0), abs=1e-13)
        t = 0.8
        e, f, g = sf.induced_metric(6, t, 2.2)
        assert (e, f, g) == pytest.approx((-1.0, 0.0, -math.sinh(t) ** 2), abs=1e-13)

    @pytest.mark.parametrize("sid", sf.SURFACE_IDS)
    def test_matches_closed_form_over_grid(self, sid, summary_cache):
        assert summary_cache(sid, GRID)["metric_closed_form_error"] < constants.TOL_METRIC_CLOSED_FORM

    def test_negative_definite_sign(self):
        t, u = sf.default_grid(5, 11)
        e, f, g = sf.induced_metric(5, t, u)
        assert np.all(e < 0) and np.all(g < 0)


class TestGaussCurvature:
    @pytest.mark.parametrize("sid", sf.SURFACE_IDS)
    def test_constant_curvature(self, sid, summary_cache):
        s = summary_cache(sid, GRID)
        assert s["K_max_deviation"] < constants.TOL_CURVATURE
        assert s["K_mean"] == pytest.approx(s["K_expected"], abs=1e-5)

    def test_degenerate_rejection(self):
        # the V1 spheres close up at t = pi/2 where the u-circle shrinks away
        with pytest.raises(ValueError):
            sf.gauss_curvature(1, math.pi / 2, 0.3)
        k = sf.gauss_curvature_batch(1, [math.pi / 2], [0.3])
        assert math.isnan(k[0])

    def test_single_point_value(self):
        assert sf.gauss_curvature(2, 0.9, 1.0) == pytest.approx(1.0, abs=1e-6)


class TestTotallyGeodesic:
    @pytest.mark.parametrize("sid", sf.SURFACE_IDS)
    def test_residual_over_grid(self, sid, summary_cache):
        assert summary_cache(sid, GRID)["tg_residual_max"] < constants.TOL_TOTALLY_GEODESIC

    def test_single_point(self):
        # numeric surface curvature and ambient holomorphic curvature both 4
        assert sf.gauss_curvature(1, math.pi / 4, 0.0) == pytest.approx(4.0, abs=1e-6)
        assert sf.totally_geodesic_check(1, math.pi / 4, 0.0) < 1e-6

    @pytest.mark.parametrize("sid", sf.SURFACE_IDS)
    def test_amplitudes_constant(self, sid, summary_cache):
        assert summary_cache(sid, GRID)["amplitude_error"] < constants.TOL_AMPLITUDE_CONST


class TestControlSurface:
    def test_minor_residual_large(self):
        ctrl = sf.control_surface(0.6)
        a, b, c = ctrl.expected_amplitudes
        residuals = minor_equations(a, b, c, RIEMANNIAN)
        assert max(abs(r) for r in residuals) > constants.CONTROL_RESIDUAL_MIN

    def test_totally_geodesic_residual_large(self):
        ctrl = sf.control_surface(0.6)
        for t, u in ((0.5, 0.3), (0.9, 2.0)):
            assert sf.totally_geodesic_check(ctrl, t, u, method="fd") > constants.CONTROL_RESIDUAL_MIN

    def test_exponential_is_its_own_closed_form(self):
        ctrl = sf.control_surface(0.6)
        got = ctrl.closed_form(0.7, 0.4)
        from nkflag.matrix_core import expm
        assert max_abs(got - expm(ctrl.generator(0.7, 0.4))) < 1e-14

    def test_no_analytic_frames(self):
        ctrl = sf.control_surface(0.6)
        with pytest.raises(ValueError):
            sf.frame_matrices(ctrl, 0.3, 0.3, "analytic")


class TestExport:
    def test_rows_and_csv(self, tmp_path):
        rows = sf.sample_rows(2, 11)
        assert len(rows) == 121
        assert list(rows[0].keys()) == list(sf.CSV_COLUMNS)
        path = tmp_path / "samples.csv"
        sf.write_csv(path, rows)
        lines = path.read_text().strip().splitlines()
        assert lines[0] == ",".join(sf.CSV_COLUMNS)
        assert len(lines) == 122

    def test_degenerate_rows_are_nan(self):
        rows = sf.sample_rows(1, 11)
        degenerate = [r for r in rows if math.isnan(r["K"])]
        assert degenerate  # the t = pi/2 row
        for r in degenerate:
            assert math.isnan(r["tg_residual"])
            assert abs(r["t"] - math.pi / 2) < 1e-9

    def test_grid_shapes(self):
        t, u = sf.default_grid(1, 11)
        assert t.shape == u.shape == (121,)
        lo, hi = sf.get_surface(1).t_range
        assert t.min() == pytest.approx(lo) and t.max() == pytest.approx(hi)
        assert u.max() < 2 * math.pi

    def test_expm_grid_ranges(self):
        t, _ = sf.expm_grid(1, 11)
        assert t.max() == pytest.approx(2 * math.pi)
        t, _ = sf.expm_grid(5, 11)
        assert t.max() == pytest.approx(2.0)
