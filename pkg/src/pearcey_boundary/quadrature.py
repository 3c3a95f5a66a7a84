"""Quadrature for integrals of the form

    I(x) = integral over the real line of p(lam) * exp(q(lam) + i*lam*x) d lam

where p is a polynomial and q is a polynomial whose real part decays at both
ends (leading real coefficient negative, even degree). The integrand is
entire, so composite Gauss-Legendre panels on a truncated interval converge
geometrically; panels are sized so that each one covers a fixed amount of
phase plus decay, which keeps the node count proportional to the number of
oscillations actually present.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

import numpy as np

from .errors import AccuracyError, InvalidKernelError

MAX_DEGREE = 4


def _as_coefficients(coefficients) -> tuple[complex, ...]:
    coeffs = [complex(c) for c in coefficients]
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    if not coeffs:
        coeffs = [0j]
    return tuple(coeffs)


def _horner(coeffs, lam):
    out = np.zeros_like(lam, dtype=complex)
    for c in reversed(coeffs):
        out = out * lam + c
    return out


def is_hermitian(coeffs, atol: float = 0.0) -> bool:
    """True when P(-lam) = conj(P(lam)): even coefficients real, odd ones imaginary."""
    for k, c in enumerate(coeffs):
        bad = c.real if k % 2 else c.imag
        if abs(bad) > atol:
            return False
    return True


@dataclass(frozen=True)
class ExponentPolynomial:
    """q(lam) = sum_k c_k lam**k, k <= 4, with decaying real part.

    Only the real parts decide decay; purely imaginary high-order terms (the
    cubic phase of Airy-type symbols) are allowed above the decaying degree.
    """

    coefficients: tuple[complex, ...]

    def __post_init__(self):
        coeffs = _as_coefficients(self.coefficients)
        object.__setattr__(self, "coefficients", coeffs)
        if len(coeffs) - 1 > MAX_DEGREE:
            raise InvalidKernelError(f"exponent degree {len(coeffs) - 1} exceeds {MAX_DEGREE}")
        lead = self.decay_degree
        if lead is None or lead == 0 or lead % 2 or coeffs[lead].real >= 0:
            raise InvalidKernelError(
                f"exponent {coeffs} does not decay: leading real coefficient must be "
                "negative and of even degree"
            )

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def decay_degree(self) -> int | None:
        for k in range(len(self.coefficients) - 1, -1, -1):
            if self.coefficients[k].real != 0:
                return k
        return None

    def __call__(self, lam):
        return _horner(self.coefficients, np.asarray(lam, dtype=float))

    def real_part(self, lam):
        lam = np.asarray(lam, dtype=float)
        return _horner([c.real for c in self.coefficients], lam).real

    def is_hermitian(self, atol: float = 0.0) -> bool:
        return is_hermitian(self.coefficients, atol)

    def plus_quadratic(self, c2: float) -> "ExponentPolynomial":
        """Add ``c2 * lam**2``; with c2 = -t/2 this is heat evolution to time t."""
        coeffs = list(self.coefficients) + [0j] * max(0, 3 - len(self.coefficients))
        coeffs[2] += c2
        return ExponentPolynomial(tuple(coeffs))


@dataclass(frozen=True)
class QuadratureSpec:
    truncation_tolerance: float = 1e-16
    node_density: float = 8.0
    max_nodes: int = 200_000
    rule: int = 16

    def __post_init__(self):
        if not self.truncation_tolerance > 0:
            raise ValueError("truncation_tolerance must be positive")
        if self.node_density < 2:
            raise ValueError("node_density must be at least 2")
        if self.max_nodes < 2 * self.rule or self.max_nodes > 50_000_000:
            raise ValueError("max_nodes out of range")
        if self.rule < 2:
            raise ValueError("rule must be a Gauss-Legendre order >= 2")

    def replace(self, **changes) -> "QuadratureSpec":
        return replace(self, **changes)


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    error: float
    nodes: int
    radius: float
    abs_integral: float  # sum of |w * integrand|; scale for round-off

    @property
    def real(self) -> float:
        return self.value.real


def truncation_radius(q: ExponentPolynomial, tol: float | None = None, *, log_tol: float | None = None) -> float:
    """Smallest R with Re q(lam) <= ln(tol) for all |lam| >= R, inflated by 10%.

    ``log_tol`` may be given instead of ``tol`` for tolerances below the
    double-precision range.
    """
    if log_tol is None:
        if tol is None or not tol > 0:
            raise ValueError("tol must be positive")
        log_tol = math.log(tol)
    if not isinstance(q, ExponentPolynomial):
        q = ExponentPolynomial(tuple(q))

    def g(lam):
        return np.maximum(q.real_part(lam), q.real_part(-np.asarray(lam)))

    real = [c.real for c in q.coefficients[: q.decay_degree + 1]]
    lead = abs(real[-1])
    # Cauchy bound on the critical points of Re q; the tail beyond it is monotone
    hi = max(1.0, 1.0 + max(abs(k * c) / (len(real) - 1) / lead for k, c in enumerate(real)))
    while g(hi) > log_tol:
        hi *= 2.0
    grid = np.linspace(0.0, hi, 4097)
    above = np.nonzero(g(grid) > log_tol)[0]
    if above.size == 0:
        return 0.0
    lo, hi = grid[above[-1]], grid[above[-1] + 1]
    while hi - lo > 1e-13 * max(1.0, hi):
        mid = 0.5 * (lo + hi)
        if g(mid) > log_tol:
            lo = mid
        else:
            hi = mid
    return float(1.1 * hi)


@lru_cache(maxsize=32)
def _gauss_legendre(order: int):
    nodes, weights = np.polynomial.legendre.leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def _work(q_coeffs, x, lam):
    # phase plus log-decay accumulated from 0 to lam (lam >= 0)
    out = (1.0 + abs(x)) * lam
    for k, c in enumerate(q_coeffs):
        if k:
            out = out + abs(c) * lam**k
    return out


def _half_edges(q_coeffs, x, radius, n_half):
    grid = np.linspace(0.0, radius, 4097)
    work = _work(q_coeffs, x, grid)
    targets = np.linspace(0.0, work[-1], n_half + 1)
    edges = np.interp(targets, work, grid)
    edges[0], edges[-1] = 0.0, radius
    return edges


def _panel_sum(p_coeffs, q, x, edges_half, order):
    edges = np.concatenate([-edges_half[:0:-1], edges_half])
    a, b = edges[:-1, None], edges[1:, None]
    s, w = _gauss_legendre(order)
    half = 0.5 * (b - a)
    lam = (half * s + 0.5 * (a + b)).ravel()
    weights = (half * w).ravel()
    integrand = _horner(p_coeffs, lam) * np.exp(q(lam) + 1j * lam * x)
    terms = weights * integrand
    return complex(terms.sum()), float(np.abs(terms).sum()), lam.size


def node_plan(p_coeffs, q: ExponentPolynomial, x: float, spec: QuadratureSpec, radius: float) -> int:
    """Number of panels on the positive half-line for the requested density."""
    periods = 2.0 * _work(q.coefficients, x, radius) / (2.0 * math.pi)
    floor = 2 * (q.degree + max(len(p_coeffs) - 1, 0)) + 4
    nodes = spec.node_density * (periods + floor)
    return max(2, math.ceil(nodes / (2 * spec.rule)))


def oscillatory_integral(
    p,
    q: ExponentPolynomial,
    x: float,
    spec: QuadratureSpec | None = None,
    *,
    abs_tol: float | None = None,
) -> QuadratureResult:
    """Integrate p(lam) exp(q(lam) + i lam x) over the real line.

    The error estimate is the difference to the same rule run at half the
    node density. When ``abs_tol`` is given the density is doubled until the
    estimate meets it; exceeding ``spec.max_nodes`` raises AccuracyError with
    the best result attached.
    """
    spec = spec or QuadratureSpec()
    if not isinstance(q, ExponentPolynomial):
        q = ExponentPolynomial(tuple(q))
    p_coeffs = _as_coefficients(p if np.ndim(p) else [p])
    x = float(x)
    if not math.isfinite(x):
        raise ValueError("x must be finite")
    radius = truncation_radius(q, spec.truncation_tolerance)
    if radius == 0.0:
        radius = 1.0
    n_half = node_plan(p_coeffs, q, x, spec, radius)

    def run(n):
        return _panel_sum(p_coeffs, q, x, _half_edges(q.coefficients, x, radius, n), spec.rule)

    max_half = max(1, spec.max_nodes // (2 * spec.rule))
    over_budget = n_half > max_half
    n_half = min(n_half, max_half)
    coarse = run(max(1, n_half // 2))
    while True:
        value, abs_sum, nodes = run(n_half)
        result = QuadratureResult(value, abs(value - coarse[0]), nodes, radius, abs_sum)
        if over_budget:
            raise AccuracyError(f"node budget {spec.max_nodes} exceeded", best=result)
        if abs_tol is None or result.error <= abs_tol:
            return result
        if 2 * n_half > max_half:
            raise AccuracyError(
                f"error {result.error:.3g} above {abs_tol:.3g} within {spec.max_nodes} nodes",
                best=result,
            )
        coarse = (value, abs_sum, nodes)
        n_half *= 2
