"""Spectral symbols, the order-4 and classical Airy functions, and zero finding."""

from .airy import airy_ai, airy_ai_prime, airy_derivative, airy_pair
from .phi4 import PHI0, PHI2_0, phi4, phi4_derivative, phi4_moment, phi4_series
from .symbols import (
    AIRY_CUBIC,
    AIRY_PRIME,
    BUILTIN_SYMBOLS,
    HERMITE_GAUSS,
    QUARTIC,
    SHIFTED_CUBIC,
    SpectralSymbol,
)
from .tables import airy_prime_zeros, airy_zeros, phi4_zeros
from .zeros import ZeroList, find_zeros, nearest_zero, refine_bracket

__all__ = [
    "AIRY_CUBIC", "AIRY_PRIME", "BUILTIN_SYMBOLS", "HERMITE_GAUSS", "PHI0", "PHI2_0",
    "QUARTIC", "SHIFTED_CUBIC", "SpectralSymbol", "ZeroList", "airy_ai", "airy_ai_prime",
    "airy_derivative", "airy_pair", "airy_prime_zeros", "airy_zeros", "phi4_zeros", "find_zeros", "nearest_zero", "phi4", "phi4_derivative",
    "phi4_moment", "phi4_series", "refine_bracket",
]
