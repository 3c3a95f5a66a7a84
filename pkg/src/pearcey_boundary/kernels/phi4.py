"""The order-4 Airy function phi(x) = (1/2pi) int exp(i lam x - lam^4/4) d lam.

Two independent evaluations: quadrature of the Fourier integral, and the
Maclaurin series generated by phi''' = x phi.
"""

from __future__ import annotations

import math

from ..errors import AccuracyError
from ..quadrature import QuadratureResult, QuadratureSpec, oscillatory_integral
from .symbols import QUARTIC

PHI0 = math.gamma(0.25) / (2.0**1.5 * math.pi)
PHI2_0 = -(math.sqrt(2.0) / 2.0) * math.gamma(0.75) / math.pi

DEFAULT_SPEC = QuadratureSpec()


def phi4_moment_result(x: float, j: int = 0, spec: QuadratureSpec | None = None) -> QuadratureResult:
    """Quadrature of (1/2pi) int (i lam)^j exp(i lam x - lam^4/4) d lam, i.e. phi^(j)(x)."""
    res = oscillatory_integral(QUARTIC.moment_prefactor(j), QUARTIC.exponent_at(0.0), x, spec or DEFAULT_SPEC)
    norm = QUARTIC.normalization
    return QuadratureResult(res.value * norm, res.error * norm, res.nodes, res.radius, res.abs_integral * norm)


def phi4_moment(x: float, j: int = 0, spec: QuadratureSpec | None = None) -> float:
    return phi4_moment_result(x, j, spec).value.real


def phi4(x: float, spec: QuadratureSpec | None = None) -> float:
    return phi4_moment(x, 0, spec)


def phi4_series(x: float, order: int = 120) -> float:
    """Maclaurin sum of phi with ``order`` coefficients.

    a_{k+3} = a_{k-1} / ((k+1)(k+2)(k+3)); a_0 = phi(0), a_1 = 0,
    a_2 = phi''(0)/2, a_3 = 0.
    """
    if order < 40:
        raise ValueError("order must be at least 40")
    if abs(x) > 6:
        raise AccuracyError(f"series not used beyond |x| = 6 (got {x})")
    a = [PHI0, 0.0, 0.5 * PHI2_0, 0.0]
    for k in range(1, order - 3):
        a.append(a[k - 1] / ((k + 1) * (k + 2) * (k + 3)))
    terms = [c * x**n for n, c in enumerate(a)]
    total = math.fsum(terms)
    largest = max(abs(t) for t in terms)
    tail = max(abs(t) for t in terms[-8:])
    if tail > 1e-17 * max(largest, 1.0):
        raise AccuracyError(f"series order {order} too small at x={x}", best=total)
    return total


def phi4_derivative(x: float, j: int, spec: QuadratureSpec | None = None) -> float:
    """phi^(j)(x): moment quadrature for j <= 2, phi''' = x phi for j = 3, and
    phi^(j) = (j-3) phi^(j-4) + x phi^(j-3) above."""
    if j < 0:
        raise ValueError("derivative order must be non-negative")
    cache: dict[int, float] = {}

    def d(k: int) -> float:
        if k not in cache:
            if k <= 2:
                cache[k] = phi4_moment(x, k, spec)
            elif k == 3:
                cache[k] = x * d(0)
            else:
                cache[k] = (k - 3) * d(k - 4) + x * d(k - 3)
        return cache[k]

    return d(j)
