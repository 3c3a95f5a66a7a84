"""Classical Airy function Ai and its derivative.

Three regimes:

* ``-7 <= x <= 2``: Maclaurin series from the recurrence of Ai'' = x Ai.
* ``x > 2``: the cubic-phase integral with the contour moved to Im s = sqrt(x),

      Ai(x) = exp(-zeta)/(2 pi) * int exp(i u^3/3 - sqrt(x) u^2) du,  zeta = 2/3 x^{3/2},

  which has a Gaussian envelope and no cancellation, so it keeps full
  relative accuracy where the series loses digits.
* ``x < -7``: the oscillatory asymptotic expansion, truncated at its
  smallest term.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from ..quadrature import ExponentPolynomial, QuadratureSpec, oscillatory_integral

AI0 = 3.0 ** (-2.0 / 3.0) / math.gamma(2.0 / 3.0)
AIP0 = -(3.0 ** (-1.0 / 3.0)) / math.gamma(1.0 / 3.0)

SERIES_LOWER = -7.0
SERIES_UPPER = 2.0

_DAMPED_SPEC = QuadratureSpec(truncation_tolerance=1e-18, node_density=8.0)


def _series(x: float) -> tuple[float, float]:
    # a_n = a_{n-3} / ((n-1) n), a_0 = Ai(0), a_1 = Ai'(0), a_2 = 0
    a = [AI0, AIP0, 0.0]
    value, deriv = AI0 + AIP0 * x, AIP0
    quiet = 0
    for n in range(3, 400):
        an = a[n - 3] / ((n - 1) * n)
        a.append(an)
        term = an * x**n
        dterm = n * an * x ** (n - 1)
        value += term
        deriv += dterm
        if abs(term) <= 1e-17 * abs(value) and abs(dterm) <= 1e-17 * abs(deriv):
            quiet += 1
            if quiet >= 3:
                break
        else:
            quiet = 0
    return value, deriv


@lru_cache(maxsize=1)
def _asymptotic_coefficients(count: int = 60):
    u = [1.0]
    for k in range(1, count):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k))
    v = [-(6 * k + 1) / (6 * k - 1) * uk for k, uk in enumerate(u)]
    return tuple(u), tuple(v)


def _truncated(coeffs, zeta):
    """Return sums (even part, odd part) of sum (-1)^k c_j / zeta^j, stopping at the smallest term."""
    even = odd = 0.0
    prev = math.inf
    for j, c in enumerate(coeffs):
        term = c / zeta**j
        if abs(term) > prev:
            break
        prev = abs(term)
        sign = -1.0 if (j // 2) % 2 else 1.0
        if j % 2 == 0:
            even += sign * term
        else:
            odd += sign * term
        if abs(term) < 1e-17:
            break
    return even, odd


def _negative_asymptotic(x: float) -> tuple[float, float]:
    z = -x
    zeta = 2.0 / 3.0 * z**1.5
    u, v = _asymptotic_coefficients()
    p, q = _truncated(u, zeta)
    r, s = _truncated(v, zeta)
    theta = zeta - math.pi / 4.0
    c, sn = math.cos(theta), math.sin(theta)
    ai = (c * p + sn * q) / (math.sqrt(math.pi) * z**0.25)
    aip = z**0.25 * (sn * r - c * s) / math.sqrt(math.pi)
    return ai, aip


def _damped_integral(x: float) -> tuple[float, float]:
    root = math.sqrt(x)
    zeta = 2.0 / 3.0 * x * root
    q = ExponentPolynomial((0, 0, -root, 1j / 3))
    scale = math.exp(-zeta) / (2.0 * math.pi)
    ai = oscillatory_integral((1,), q, 0.0, _DAMPED_SPEC).value.real
    aip = oscillatory_integral((-root, 1j), q, 0.0, _DAMPED_SPEC).value.real
    return scale * ai, scale * aip


def airy_pair(x: float) -> tuple[float, float]:
    """(Ai(x), Ai'(x))."""
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    if x > SERIES_UPPER:
        return _damped_integral(x)
    if x < SERIES_LOWER:
        return _negative_asymptotic(x)
    return _series(x)


def airy_ai(x: float) -> float:
    return airy_pair(x)[0]


def airy_ai_prime(x: float) -> float:
    return airy_pair(x)[1]


@lru_cache(maxsize=16)
def _derivative_polynomials(k: int):
    # Ai^(k)(z) = P_k(z) Ai(z) + Q_k(z) Ai'(z)
    P = np.polynomial.Polynomial([1.0])
    Q = np.polynomial.Polynomial([0.0])
    z = np.polynomial.Polynomial([0.0, 1.0])
    for _ in range(k):
        P, Q = P.deriv() + z * Q, P + Q.deriv()
    return P, Q


def airy_derivative(x: float, k: int) -> float:
    """k-th derivative of Ai, reduced to Ai and Ai' through Ai'' = x Ai."""
    if k < 0:
        raise ValueError("derivative order must be non-negative")
    ai, aip = airy_pair(x)
    P, Q = _derivative_polynomials(k)
    return float(P(x) * ai + Q(x) * aip)
