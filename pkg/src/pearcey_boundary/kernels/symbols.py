"""Spectral symbols: the Fourier transforms of the initial kernels.

A symbol is prefactor(lam) * exp(exponent(lam)); heat evolution to time t
multiplies it by exp(-t lam^2 / 2), and the kernel in position space is

    v(t, x) = normalization * integral prefactor * exp(exponent - t lam^2/2 + i lam x) d lam.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..errors import DomainError
from ..quadrature import ExponentPolynomial, _as_coefficients, is_hermitian


@dataclass(frozen=True)
class SpectralSymbol:
    name: str
    prefactor: tuple[complex, ...]
    exponent: tuple[complex, ...]
    normalization: float = 1.0 / (2.0 * math.pi)
    description: str = ""

    def __post_init__(self):
        object.__setattr__(self, "prefactor", _as_coefficients(self.prefactor))
        object.__setattr__(self, "exponent", _as_coefficients(self.exponent))
        if not self.is_hermitian():
            raise ValueError(f"symbol {self.name!r} is not Hermitian; evolved kernel would be complex")

    def is_hermitian(self) -> bool:
        return is_hermitian(self.prefactor, 1e-15) and is_hermitian(self.exponent, 1e-15)

    @property
    def needs_damping(self) -> bool:
        """True when the symbol alone does not decay (pure cubic phase)."""
        return not any(c.real < 0 for k, c in enumerate(self.exponent) if k and k % 2 == 0)

    def exponent_at(self, t: float) -> ExponentPolynomial:
        """Exponent after heat evolution to time ``t``."""
        if t < 0:
            raise DomainError(f"time must be non-negative, got {t}")
        coeffs = list(self.exponent) + [0j] * max(0, 3 - len(self.exponent))
        coeffs[2] -= 0.5 * t
        try:
            return ExponentPolynomial(tuple(coeffs))
        except ValueError as exc:
            raise DomainError(f"symbol {self.name!r} is undamped at t={t}") from exc

    def moment_prefactor(self, n: int) -> tuple[complex, ...]:
        """Prefactor multiplied by (i lam)**n, i.e. the symbol of the n-th x-derivative."""
        if n < 0:
            raise ValueError("derivative order must be non-negative")
        return (0j,) * n + tuple(c * (1j**n) for c in self.prefactor)


QUARTIC = SpectralSymbol(
    "quartic", (1,), (0, 0, 0, 0, -0.25),
    description="exp(-lam^4/4); order-4 Airy function, Pearcey kernel after evolution",
)
AIRY_CUBIC = SpectralSymbol(
    "airy-cubic", (1,), (0, 0, 0, 1j / 3),
    description="exp(i lam^3/3); classical Airy Ai",
)
SHIFTED_CUBIC = SpectralSymbol(
    "shifted-cubic", (1,), (0, 0, -0.5, 1j / 3),
    description="exp(i lam^3/3 - lam^2/2); solves phi'' = x phi + phi'",
)
HERMITE_GAUSS = SpectralSymbol(
    "hermite-gauss", (1, 0, -4), (0, 0, -1),
    description="(1 - 4 lam^2) exp(-lam^2); position kernel ~ (x^2 - 1) exp(-x^2/4)",
)
AIRY_PRIME = SpectralSymbol(
    "airy-prime", (0, 1j), (0, 0, 0, 1j / 3),
    description="i lam exp(i lam^3/3); Ai'",
)

BUILTIN_SYMBOLS = {s.name: s for s in (QUARTIC, AIRY_CUBIC, SHIFTED_CUBIC, HERMITE_GAUSS, AIRY_PRIME)}
