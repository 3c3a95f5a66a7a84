"""Heat-evolved kernels v(t, x) and their x-derivatives.

Quadrature kernels integrate the spectral symbol times exp(-t lam^2/2);
closed-form kernels (Airy, Gaussian-polynomial) expose the same interface so
the tracer and verifier do not care which one they hold.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import AccuracyError, DomainError, RangeError
from .kernels.airy import airy_derivative
from .kernels.symbols import AIRY_CUBIC, AIRY_PRIME, HERMITE_GAUSS, QUARTIC, SHIFTED_CUBIC, SpectralSymbol
from .quadrature import QuadratureResult, QuadratureSpec, oscillatory_integral

MAX_ORDER = 6
EXP_LIMIT = 700.0


class Kernel:
    """Common surface: ``v(t, x)``, ``derivative(t, x, n)``, ``name`` and ``even``."""

    def derivative(self, t: float, x: float, n: int) -> float:
        raise NotImplementedError

    def v(self, t: float, x: float) -> float:
        return self.derivative(t, x, 0)

    def __call__(self, t: float, x: float) -> float:
        return self.v(t, x)

    def at_time(self, t: float) -> Callable[[float], float]:
        return lambda x: self.v(t, x)


@dataclass(frozen=True)
class EvolvedKernel(Kernel):
    """Quadrature evaluation of normalization * int prefactor e^{i lam x - lam^2 t/2 + exponent}.

    ``initial`` optionally supplies (x, n) -> value at t = 0 for symbols that
    need the heat factor to converge.
    """

    symbol: SpectralSymbol
    spec: QuadratureSpec = field(default_factory=QuadratureSpec)
    initial: Callable[[float, int], float] | None = None

    @property
    def name(self) -> str:
        return self.symbol.name

    @property
    def even(self) -> bool:
        return all(c == 0 for k, c in enumerate(self.symbol.prefactor) if k % 2) and all(
            c == 0 for k, c in enumerate(self.symbol.exponent) if k % 2
        )

    def with_spec(self, spec: QuadratureSpec) -> "EvolvedKernel":
        return EvolvedKernel(self.symbol, spec, self.initial)

    def evaluate(self, t: float, x: float, n: int = 0, *, truncation_tolerance: float | None = None) -> QuadratureResult:
        """Normalized quadrature result for the n-th x-derivative at (t, x)."""
        if n < 0 or n > MAX_ORDER:
            raise ValueError(f"derivative order must be in 0..{MAX_ORDER}")
        if t < 0:
            raise DomainError(f"time must be non-negative, got {t}")
        spec = self.spec
        if truncation_tolerance is not None:
            spec = spec.replace(truncation_tolerance=truncation_tolerance)
        q = self.symbol.exponent_at(t)
        res = oscillatory_integral(self.symbol.moment_prefactor(n), q, x, spec)
        c = self.symbol.normalization
        out = QuadratureResult(res.value * c, res.error * c, res.nodes, res.radius, res.abs_integral * c)
        if abs(out.value.imag) > 1e-10 * (1.0 + abs(out.value.real)):
            raise AccuracyError(f"imaginary residue {out.value.imag:.3g} at t={t}, x={x}", best=out)
        return out

    def derivative(self, t: float, x: float, n: int) -> float:
        if t == 0 and self.symbol.needs_damping:
            if self.initial is None:
                raise DomainError(f"{self.name} is undamped at t = 0")
            return self.initial(x, n)
        return self.evaluate(t, x, n).value.real


def airy3_closed_form(t: float, x: float, n: int = 0) -> float:
    """e^{tx/2 + t^3/12} Ai(x + t^2/4) and its x-derivatives."""
    if t < 0:
        raise DomainError("time must be non-negative")
    expo = t * x / 2.0 + t**3 / 12.0
    if expo > EXP_LIMIT:
        raise RangeError(f"exponent {expo:.1f} overflows")
    z = x + t * t / 4.0
    total = sum(math.comb(n, k) * (t / 2.0) ** (n - k) * airy_derivative(z, k) for k in range(n + 1))
    return math.exp(expo) * total


def _gauss_poly_derivative(poly: np.polynomial.Polynomial, s: float, x: float, n: int) -> float:
    # d/dx [P e^{-x^2/(2s)}] = (P' - x P / s) e^{-x^2/(2s)}
    xpoly = np.polynomial.Polynomial([0.0, 1.0 / s])
    for _ in range(n):
        poly = poly.deriv() - xpoly * poly
    return float(poly(x) * math.exp(-x * x / (2.0 * s)))


def hermite_closed_form(t: float, x: float, n: int = 0) -> float:
    """(2 pi sigma)^{-1/2} (1 - 4/sigma + 4 x^2/sigma^2) e^{-x^2/(2 sigma)}, sigma = t + 2."""
    if t < 0:
        raise DomainError("time must be non-negative")
    s = t + 2.0
    poly = np.polynomial.Polynomial([1.0 - 4.0 / s, 0.0, 4.0 / s**2]) / math.sqrt(2.0 * math.pi * s)
    return _gauss_poly_derivative(poly, s, x, n)


def linear_boundary_closed_form(t: float, x: float, b: float, n: int = 0) -> float:
    """x/sqrt(2 pi t^3) e^{-x^2/2t} + b/sqrt(2 pi t) e^{-x^2/2t}; vanishes on x = -b t."""
    if t <= 0:
        raise DomainError("linear-boundary kernel needs t > 0")
    poly = np.polynomial.Polynomial([b / math.sqrt(2.0 * math.pi * t), 1.0 / math.sqrt(2.0 * math.pi * t**3)])
    return _gauss_poly_derivative(poly, t, x, n)


@dataclass(frozen=True)
class ClosedFormKernel(Kernel):
    name: str
    func: Callable[[float, float, int], float]
    even: bool = False

    def derivative(self, t: float, x: float, n: int) -> float:
        if n < 0 or n > MAX_ORDER:
            raise ValueError(f"derivative order must be in 0..{MAX_ORDER}")
        return self.func(t, x, n)


def quartic_kernel(spec: QuadratureSpec | None = None) -> EvolvedKernel:
    return EvolvedKernel(QUARTIC, spec or QuadratureSpec())


def airy_cubic_kernel(spec: QuadratureSpec | None = None) -> EvolvedKernel:
    return EvolvedKernel(AIRY_CUBIC, spec or QuadratureSpec(), initial=lambda x, n: airy_derivative(x, n))


def shifted_cubic_kernel(spec: QuadratureSpec | None = None) -> EvolvedKernel:
    return EvolvedKernel(SHIFTED_CUBIC, spec or QuadratureSpec())


def hermite_kernel(spec: QuadratureSpec | None = None) -> EvolvedKernel:
    return EvolvedKernel(HERMITE_GAUSS, spec or QuadratureSpec())


def airy_prime_kernel(spec: QuadratureSpec | None = None) -> EvolvedKernel:
    return EvolvedKernel(AIRY_PRIME, spec or QuadratureSpec(), initial=lambda x, n: airy_derivative(x, n + 1))


AIRY3_CLOSED = ClosedFormKernel("airy3-closed", airy3_closed_form)
SHIFTED_CLOSED = ClosedFormKernel("shifted-closed", lambda t, x, n: airy3_closed_form(t + 1.0, x, n))
HERMITE_CLOSED = ClosedFormKernel("hermite-closed", hermite_closed_form, even=True)
AIRY_PRIME_CLOSED = ClosedFormKernel("airy-prime-closed", lambda t, x, n: airy3_closed_form(t, x, n + 1))


def linear_kernel(b: float) -> ClosedFormKernel:
    return ClosedFormKernel(f"linear(b={b:g})", lambda t, x, n: linear_boundary_closed_form(t, x, b, n))


def get_kernel(name: str, *, slope: float = 0.0, spec: QuadratureSpec | None = None) -> Kernel:
    """Kernel by registry name (see ``KERNEL_NAMES``)."""
    factories = {
        "pearcey": quartic_kernel,
        "quartic": quartic_kernel,
        "airy3": airy_cubic_kernel,
        "shifted": shifted_cubic_kernel,
        "hermite": hermite_kernel,
        "airy-prime": airy_prime_kernel,
    }
    closed = {
        "airy3-closed": AIRY3_CLOSED,
        "shifted-closed": SHIFTED_CLOSED,
        "hermite-closed": HERMITE_CLOSED,
        "airy-prime-closed": AIRY_PRIME_CLOSED,
    }
    if name in factories:
        return factories[name](spec)
    if name in closed:
        return closed[name]
    if name == "linear":
        return linear_kernel(slope)
    raise KeyError(f"unknown kernel {name!r}; choose from {', '.join(KERNEL_NAMES)}")


KERNEL_NAMES = (
    "pearcey", "quartic", "airy3", "airy3-closed", "shifted", "shifted-closed",
    "hermite", "hermite-closed", "airy-prime", "airy-prime-closed", "linear",
)
