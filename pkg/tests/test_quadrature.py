import math

import numpy as np
import pytest

from pearcey_boundary.errors import AccuracyError, InvalidKernelError
from pearcey_boundary.quadrature import (
    ExponentPolynomial,
    QuadratureSpec,
    is_hermitian,
    oscillatory_integral,
    truncation_radius,
)

QUARTIC = ExponentPolynomial((0, 0, 0, 0, -0.25))
GAUSS = ExponentPolynomial((0, 0, -0.5))


def trapezoid(p, q, x, L=12.0, n=200_001):
    lam = np.linspace(-L, L, n)
    vals = np.polyval(p[::-1], lam) * np.exp(q(lam) + 1j * lam * x)
    return np.trapezoid(vals, lam) if hasattr(np, "trapezoid") else np.trapz(vals, lam)


class TestExponentPolynomial:
    def test_trailing_zeros_dropped(self):
        assert ExponentPolynomial((0, 0, -1, 0, 0)).degree == 2

    @pytest.mark.parametrize(
        "coeffs",
        [(0, 0, 1), (0, 0, 0, -1), (0, 0, 0, 1j), (0, 0, 0, 0, 0.25), (1,), (0, 0, 0, 0, 0, -1)],
    )
    def test_rejects_non_decaying(self, coeffs):
        with pytest.raises(InvalidKernelError):
            ExponentPolynomial(coeffs)

    def test_cubic_phase_above_decay_degree_is_allowed(self):
        q = ExponentPolynomial((0, 0, -0.5, 1j / 3))
        assert q.decay_degree == 2 and q.degree == 3

    def test_invalid_kernel_is_value_error(self):
        with pytest.raises(ValueError):
            ExponentPolynomial((0, 0, 2))

    def test_hermitian(self):
        assert ExponentPolynomial((0, 0, -0.5, 1j / 3)).is_hermitian()
        assert not ExponentPolynomial((0, 0.5, -0.5)).is_hermitian()
        assert is_hermitian((1, 2j, 3))
        assert not is_hermitian((1j,))

    def test_plus_quadratic(self):
        q = QUARTIC.plus_quadratic(-1.5)
        assert q.coefficients[2] == -1.5 and q.coefficients[4] == -0.25


class TestQuadratureSpec:
    def test_defaults(self):
        s = QuadratureSpec()
        assert (s.truncation_tolerance, s.node_density, s.max_nodes) == (1e-16, 8.0, 200_000)

    @pytest.mark.parametrize(
        "kw", [dict(truncation_tolerance=0), dict(node_density=1.5), dict(max_nodes=10), dict(rule=1)]
    )
    def test_invalid(self, kw):
        with pytest.raises(ValueError):
            QuadratureSpec(**kw)


class TestTruncationRadius:
    def test_quartic(self):
        assert truncation_radius(QUARTIC, log_tol=-2500) == pytest.approx(11.0, rel=1e-12)

    def test_gaussian(self):
        assert truncation_radius(GAUSS, log_tol=-50) == pytest.approx(11.0, rel=1e-12)

    def test_extra_gaussian_decay_shrinks_radius(self):
        r = truncation_radius(ExponentPolynomial((0, 0, -5, 0, -0.25)), log_tol=-2500)
        assert r < 11.0
        # Re q at r/1.1 sits on ln tol
        lam = r / 1.1
        assert -5 * lam**2 - lam**4 / 4 == pytest.approx(-2500, rel=1e-10)

    def test_tail_below_tolerance(self):
        q = ExponentPolynomial((0, 0, -0.3, 0, -0.25))
        r = truncation_radius(q, 1e-16)
        lam = np.linspace(r / 1.1, 3 * r, 500)
        assert np.all(q.real_part(lam) <= math.log(1e-16) + 1e-9)

    def test_requires_positive_tol(self):
        with pytest.raises(ValueError):
            truncation_radius(QUARTIC, 0.0)


class TestOscillatoryIntegral:
    def test_gaussian_at_zero(self):
        r = oscillatory_integral((1,), GAUSS, 0.0)
        assert r.value.real == pytest.approx(math.sqrt(2 * math.pi), rel=1e-14)

    def test_gaussian_shifted(self):
        r = oscillatory_integral((1,), GAUSS, 3.0)
        assert r.value.real == pytest.approx(math.sqrt(2 * math.pi) * math.exp(-4.5), rel=1e-12)

    def test_quartic_gamma_closed_form(self):
        r = oscillatory_integral((1,), QUARTIC, 0.0)
        assert r.value.real == pytest.approx(math.gamma(0.25) / math.sqrt(2), rel=1e-14)

    @pytest.mark.parametrize("x", [0.0, 1.3, -4.0])
    def test_against_trapezoid_oracle(self, x):
        p = (1, 0.5j, -0.25)
        q = ExponentPolynomial((0, 0, -0.7, 0, -0.25))
        r = oscillatory_integral(p, q, x)
        assert abs(r.value - trapezoid(p, q, x)) < 1e-11

    @pytest.mark.parametrize(
        "q, x",
        [(QUARTIC, 0.0), (QUARTIC, 5.0), (GAUSS, 2.0), (ExponentPolynomial((0, 0, -1, 1j / 3)), -3.0)],
    )
    def test_density_doubling_within_error_estimate(self, q, x):
        base = oscillatory_integral((1,), q, x)
        fine = oscillatory_integral((1,), q, x, QuadratureSpec(node_density=16.0))
        assert abs(fine.value - base.value) <= max(base.error, 1e-16 * base.abs_integral)

    def test_hermitian_gives_real_result(self):
        r = oscillatory_integral((1, 2j, -3), ExponentPolynomial((0, 0, -0.5, 0.2j, -0.25)), 2.5)
        assert abs(r.value.imag) < 1e-12 * (1 + abs(r.value))

    def test_linearity(self):
        q = ExponentPolynomial((0, 0, -0.2, 0, -0.25))
        a = oscillatory_integral((1, 0, 2), q, 1.7).value
        b = oscillatory_integral((0, 3j), q, 1.7).value
        ab = oscillatory_integral((1, 3j, 2), q, 1.7).value
        assert abs(ab - (a + b)) <= 1e-12 * abs(ab)

    def test_node_count_grows_with_x(self):
        assert oscillatory_integral((1,), QUARTIC, 30.0).nodes > oscillatory_integral((1,), QUARTIC, 0.0).nodes

    def test_budget_exceeded_carries_best(self):
        with pytest.raises(AccuracyError) as info:
            oscillatory_integral((1,), QUARTIC, 500.0, QuadratureSpec(max_nodes=64))
        assert info.value.best is not None

    def test_abs_tol_unreachable(self):
        with pytest.raises(AccuracyError) as info:
            oscillatory_integral((1,), QUARTIC, 0.0, QuadratureSpec(max_nodes=300), abs_tol=1e-14)
        assert info.value.best.nodes <= 300 and info.value.best.error > 1e-14

    def test_abs_tol_met(self):
        r = oscillatory_integral((1,), QUARTIC, 2.0, abs_tol=1e-12)
        assert r.error <= 1e-12

    def test_rejects_nonfinite_x(self):
        with pytest.raises(ValueError):
            oscillatory_integral((1,), QUARTIC, math.nan)

    def test_accepts_raw_coefficients(self):
        r = oscillatory_integral(1, (0, 0, -0.5), 0.0)
        assert r.value.real == pytest.approx(math.sqrt(2 * math.pi))
