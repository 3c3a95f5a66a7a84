"""Real zeros of scalar functions: sign-change scan, bisection, secant polish."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from ..errors import NotFoundError

Target = Callable[[float], float]


@dataclass(frozen=True)
class ZeroList:
    values: tuple[float, ...]
    achieved_tolerance: float

    def __len__(self):
        return len(self.values)

    def __getitem__(self, i):
        return self.values[i]

    def __iter__(self):
        return iter(self.values)


def _sign(v: float) -> int:
    return (v > 0) - (v < 0)


def refine_bracket(target: Target, a: float, b: float, fa: float, fb: float, tol: float) -> float:
    """Bisect [a, b] (with a sign change) to width ``tol`` and polish by secant steps."""
    if fa == 0:
        return a
    if fb == 0:
        return b
    lo, hi, flo, fhi = (a, b, fa, fb) if a < b else (b, a, fb, fa)
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = target(mid)
        if fm == 0:
            return mid
        if _sign(fm) == _sign(flo):
            lo, flo = mid, fm
        else:
            hi, fhi = mid, fm
    # secant polish inside the final bracket
    x0, f0, x1, f1 = lo, flo, hi, fhi
    best = lo if abs(flo) < abs(fhi) else hi
    for _ in range(4):
        if f1 == f0:
            break
        x2 = x1 - f1 * (x1 - x0) / (f1 - f0)
        if not lo - tol <= x2 <= hi + tol:
            break
        f2 = target(x2)
        if abs(f2) >= min(abs(f0), abs(f1)):
            if abs(f2) < abs(target(best)):
                best = x2
            break
        best = x2
        x0, f0, x1, f1 = x1, f1, x2, f2
        if f2 == 0:
            break
    return best


def _verify(target: Target, xi: float, tol: float) -> float:
    """Smallest multiple of ``tol`` (up to 1e4 x) across which the sign changes."""
    width = tol
    while width <= 1e4 * tol:
        if _sign(target(xi - width)) * _sign(target(xi + width)) < 0:
            return width
        width *= 2.0
    return math.inf


def find_zeros(
    target: Target,
    search_interval: tuple[float, float],
    n: int = 1,
    tol: float = 1e-12,
    *,
    step: float = 0.1,
    max_halvings: int = 6,
    descending: bool | None = None,
) -> ZeroList:
    """First ``n`` zeros of ``target`` in the interval.

    The scan starts at the endpoint nearest the origin unless ``descending``
    says otherwise, so on the negative axis the zeros come out in descending
    order (closest to zero first). Where |target| dips without a sign change
    the step is halved locally to catch pairs of close zeros.
    """
    if not tol > 0:
        raise ValueError("tol must be positive")
    lo, hi = sorted(map(float, search_interval))
    if descending is None:
        descending = abs(hi) < abs(lo) and hi <= 0
    start, end = (hi, lo) if descending else (lo, hi)
    direction = -1.0 if descending else 1.0

    brackets: list[tuple[float, float, float, float]] = []

    def scan(a: float, b: float, fa: float, h: float, depth: int) -> None:
        x, fx = a, fa
        prev = None  # (x, f) before x
        while len(brackets) < n and direction * (b - x) > 1e-15:
            nx = x + direction * h
            if direction * (nx - b) > 0:
                nx = b
            fn = target(nx)
            if fx == 0:
                brackets.append((x, x, fx, fx))
            elif _sign(fx) * _sign(fn) < 0:
                brackets.append((x, nx, fx, fn))
            elif (
                prev is not None
                and depth < max_halvings
                and abs(fx) < abs(prev[1])
                and abs(fx) < abs(fn)
                and _sign(prev[1]) == _sign(fx) == _sign(fn)
            ):
                # local dip of |f|: look for two nearby zeros at finer resolution
                scan(prev[0], nx, prev[1], 0.5 * h, depth + 1)
            prev = (x, fx)
            x, fx = nx, fn

    scan(start, end, target(start), step, 0)
    zeros: list[float] = []
    for a, b, fa, fb in brackets:
        xi = a if a == b else refine_bracket(target, a, b, fa, fb, tol)
        if not any(abs(xi - z) <= 10 * tol for z in zeros):
            zeros.append(xi)
    zeros.sort(reverse=descending)
    if len(zeros) < n:
        raise NotFoundError(
            f"found {len(zeros)} of {n} zeros in [{lo}, {hi}]", found=zeros
        )
    zeros = zeros[:n]
    achieved = max([_verify(target, z, tol) for z in zeros if target(z) != 0] or [tol])
    return ZeroList(tuple(zeros), achieved)


def nearest_zero(
    target: Target,
    seed: float,
    tol: float = 1e-12,
    *,
    initial_step: float = 1e-3,
    max_step: float = 0.05,
    max_distance: float = 5.0,
) -> float:
    """Zero of ``target`` closest to ``seed`` found by an outward bracket search."""
    f0 = target(seed)
    if f0 == 0:
        return seed
    h = initial_step
    left, fleft = seed, f0
    right, fright = seed, f0
    while max(seed - left, right - seed) < max_distance:
        nl, nr = left - h, right + h
        fnl, fnr = target(nl), target(nr)
        hit_l = _sign(fnl) * _sign(fleft) <= 0
        hit_r = _sign(fnr) * _sign(fright) <= 0
        if hit_l or hit_r:
            candidates = []
            if hit_l:
                candidates.append(refine_bracket(target, nl, left, fnl, fleft, tol))
            if hit_r:
                candidates.append(refine_bracket(target, right, nr, fright, fnr, tol))
            return min(candidates, key=lambda z: abs(z - seed))
        left, fleft, right, fright = nl, fnl, nr, fnr
        h = min(2.0 * h, max_step)
    raise NotFoundError(f"no sign change within {max_distance} of {seed}")
