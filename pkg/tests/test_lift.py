"""Tests for the minimal-norm Riesz preimage: construction, spectral
verification of the projection, the d = 2 closed-form coefficients, the
minimal-norm identity, homogeneity and first-order optimality."""

import math

import numpy as np
import pytest

from polytorus.constants import INF, conjugate
from polytorus.fourier import FourierSeries, canonical, extract_coefficients
from polytorus.lift import (
    build_lift,
    d2_closed_form_coefficient,
    grid_q_norm,
    minimal_norm_identity,
    verify_projection,
)

LIFT_D2_P4_NORM = 2.0 * 6.0 ** -0.25  # ||psi||_{4/3} = 2 / ||z1+z2||_4


class TestBuildLift:
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_q_two_gives_identity(self, d):
        lift = build_lift(d, 2.0, n=32)
        phi = FourierSeries({(0,) * j + (1,): 1.0 for j in range(d)}, dim=d)
        np.testing.assert_allclose(
            lift.grid.values, phi.sample_grid(32).values, atol=1e-12
        )

    @pytest.mark.parametrize("q", [2.0, 4.0 / 3.0, INF])
    def test_single_variable_is_unimodular(self, q):
        lift = build_lift(1, q, n=64)
        np.testing.assert_allclose(np.abs(lift.grid.values), 1.0, atol=1e-12)

    def test_conjugate_exponent_recorded(self):
        lift = build_lift(2, 4.0 / 3.0, n=32)
        assert lift.p == pytest.approx(4.0, rel=1e-12)
        assert build_lift(2, INF, n=32).p == 1.0

    def test_normalizer_value_d2_p4(self):
        # C = d / ||phi||_p^p with ||z1+z2||_4^4 = 6
        lift = build_lift(2, 4.0 / 3.0, n=64)
        assert lift.normalizer == pytest.approx(2.0 / 6.0, rel=1e-12)

    def test_guards(self):
        with pytest.raises(ValueError):
            build_lift(5, 2.0)
        with pytest.raises(ValueError):
            build_lift(2, 1.0)


class TestVerifyProjection:
    @pytest.mark.parametrize("d", [1, 2, 3])
    @pytest.mark.parametrize("q", [2.0, 4.0 / 3.0, 3.0 / 2.0, 3.0])
    def test_passes_for_all_stated_cases(self, d, q):
        report = verify_projection(build_lift(d, q))
        assert report.ok, (d, q, report)

    def test_q_two_is_exact(self):
        report = verify_projection(build_lift(2, 2.0, n=32))
        assert report.unit_coefficient_error < 1e-12
        assert report.max_analytic_violation < 1e-12

    def test_d2_p4_homogeneity_excludes_degree_two(self):
        lift = build_lift(2, 4.0 / 3.0)
        series = extract_coefficients(lift.grid, 3)
        assert abs(series.terms.get((1, 1), 0j)) < 1e-6

    def test_q_infinity_relaxed_tolerance(self):
        report = verify_projection(build_lift(2, INF))
        assert report.tolerance == 1e-3
        assert report.ok

    def test_report_carries_worst_index(self):
        report = verify_projection(build_lift(2, 4.0 / 3.0))
        assert isinstance(report.worst_index, tuple)
        assert len(report.dominant_nonanalytic) <= 5


class TestClosedFormCoefficients:
    @pytest.mark.parametrize("p", [1.5, 2.0, 4.0, 6.0])
    def test_unit_coefficients(self, p):
        assert d2_closed_form_coefficient(p, 0) == pytest.approx(1.0, rel=1e-12)
        assert d2_closed_form_coefficient(p, 1) == pytest.approx(1.0, rel=1e-12)

    @pytest.mark.parametrize("k", [-3, -1, 2, 4])
    def test_p_two_vanishes_off_units(self, k):
        assert d2_closed_form_coefficient(2.0, k) == 0.0

    def test_derived_one_third(self):
        assert d2_closed_form_coefficient(4.0, 2) == pytest.approx(1.0 / 3.0, rel=1e-12)
        assert d2_closed_form_coefficient(4.0, -1) == pytest.approx(1.0 / 3.0, rel=1e-12)

    def test_against_direct_quadrature(self):
        # independent oracle: (1/2pi) int |1+e^(it)|^(p-2) (1+e^(it)) e^(-ikt) dt
        # normalized by ||1+z||_p^p / 2
        from scipy import integrate

        p, k = 3.0, 2
        num = integrate.quad(
            lambda t: abs(1 + np.exp(1j * t)) ** (p - 2)
            * ((1 + math.cos(t)) * math.cos(k * t) + math.sin(t) * math.sin(k * t)),
            0.0,
            math.pi,
            epsabs=1e-12,
        )[0] / math.pi
        den = integrate.quad(
            lambda t: abs(1 + np.exp(1j * t)) ** p, 0.0, math.pi, epsabs=1e-12
        )[0] / math.pi / 2.0
        assert d2_closed_form_coefficient(p, k) == pytest.approx(num / den, abs=1e-9)

    @pytest.mark.parametrize("p", [3.0, 4.0, 6.0])
    def test_grid_extraction_agreement(self, p):
        lift = build_lift(2, conjugate(p))
        series = extract_coefficients(lift.grid, 6)
        worst = max(
            abs(series.terms.get(canonical((k, 1 - k)), 0j) - d2_closed_form_coefficient(p, k))
            for k in range(-5, 7)
        )
        assert worst < 1e-6

    def test_precondition(self):
        with pytest.raises(ValueError):
            d2_closed_form_coefficient(1.0, 0)


class TestMinimalNormIdentity:
    @pytest.mark.parametrize("d", [1, 2, 3])
    def test_q_two_gives_sqrt_d(self, d):
        lhs, rhs = minimal_norm_identity(build_lift(d, 2.0, n=32))
        assert lhs == pytest.approx(math.sqrt(d), rel=1e-10)
        assert rhs == pytest.approx(math.sqrt(d), rel=1e-10)

    def test_d2_p4_golden_value(self):
        lhs, rhs = minimal_norm_identity(build_lift(2, 4.0 / 3.0))
        assert rhs == pytest.approx(LIFT_D2_P4_NORM, rel=1e-10)
        assert abs(lhs - rhs) / rhs < 1e-6

    @pytest.mark.parametrize("d", [1, 2, 3])
    @pytest.mark.parametrize("q", [2.0, 4.0 / 3.0, 3.0 / 2.0])
    def test_identity_for_p_ge_two(self, d, q):
        lhs, rhs = minimal_norm_identity(build_lift(d, q))
        assert abs(lhs - rhs) / rhs < 1e-6

    def test_identity_q_infinity_relaxed(self):
        lhs, rhs = minimal_norm_identity(build_lift(2, INF))
        assert abs(lhs - rhs) / rhs < 1e-3


class TestHomogeneityAndOptimality:
    @pytest.mark.parametrize("q", [4.0 / 3.0, 3.0 / 2.0, INF])
    def test_one_homogeneous_on_grid(self, q):
        lift = build_lift(2, q, n=32)
        arr = lift.grid.as_array()
        rotated = np.roll(np.roll(arr, -1, axis=0), -1, axis=1)
        np.testing.assert_allclose(
            rotated, arr * np.exp(2j * math.pi / 32), atol=1e-12
        )

    def test_perturbations_never_lower_the_q_norm(self):
        lift = build_lift(2, 4.0 / 3.0)
        base = grid_q_norm(lift, lift.grid.values)
        rng = np.random.Generator(np.random.Philox(9))
        # 1-homogeneous non-analytic directions keep the analytic part of
        # psi intact, so these are admissible competitors
        for _ in range(20):
            eta = FourierSeries.zero()
            for alpha in [(2, -1), (-1, 2)]:
                c = complex(rng.standard_normal(), rng.standard_normal())
                eta = eta + FourierSeries({alpha: c})
            samples = eta.sample_grid(lift.grid.points_per_axis).values
            for t in (1e-2, -1e-2):
                assert grid_q_norm(lift, lift.grid.values + t * samples) >= base - 1e-8
