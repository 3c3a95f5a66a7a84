"""Cached zeros of phi, Ai and Ai' used as seeds and defaults."""

from __future__ import annotations

from functools import lru_cache

from .airy import airy_ai, airy_ai_prime
from .phi4 import phi4
from .zeros import find_zeros


@lru_cache(maxsize=8)
def phi4_zeros(n: int) -> tuple[float, ...]:
    """First ``n`` positive zeros of phi (the negative ones are their mirrors)."""
    return find_zeros(phi4, (0.1, 2.0 + 3.0 * n), n).values


@lru_cache(maxsize=8)
def airy_zeros(n: int) -> tuple[float, ...]:
    """First ``n`` zeros of Ai, descending from zero."""
    return find_zeros(airy_ai, (-(3.0 + 3.5 * n), 0.0), n).values


@lru_cache(maxsize=8)
def airy_prime_zeros(n: int) -> tuple[float, ...]:
    """First ``n`` zeros of Ai', descending from zero."""
    return find_zeros(airy_ai_prime, (-(2.0 + 3.5 * n), 0.0), n).values
