"""Independent checks of the zero claim and the identities behind it.

Everything here evaluates kernels with a quadrature configuration that differs
from the evaluator default (higher node density), so a check never reuses the
exact code path it is meant to test.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Callable, Iterable, NamedTuple, Sequence

import numpy as np

from .boundary import BoundaryTrajectory, RayleighState, Sample, closed_form_boundary, rayleigh_rhs
from .errors import RangeError
from .evolve import EvolvedKernel, Kernel, hermite_kernel, quartic_kernel
from .kernels.symbols import QUARTIC
from .quadrature import QuadratureSpec, oscillatory_integral

VERIFY_SPEC = QuadratureSpec(node_density=12.0)
HEAT_STEPS = (1e-4, 1e-3)


@dataclass(frozen=True)
class ResidualReport:
    name: str
    grid: str
    max_abs: float
    mean_abs: float
    worst_point: tuple[float, float]
    tolerance: float
    passed: bool

    def __post_init__(self):
        if not (self.max_abs >= self.mean_abs >= 0 or math.isnan(self.max_abs)):
            raise ValueError("need max_abs >= mean_abs >= 0")
        if self.passed != (self.max_abs <= self.tolerance):
            raise ValueError("passed must equal max_abs <= tolerance")

    @classmethod
    def from_residuals(cls, name: str, grid: str, points: Sequence[tuple[float, float]], residuals, tolerance: float):
        r = np.abs(np.asarray(residuals, dtype=float))
        if r.size == 0:
            raise ValueError("no residuals to report")
        if np.isnan(r).any():
            i = int(np.flatnonzero(np.isnan(r))[0])
            return cls(name, grid, math.inf, math.inf, tuple(map(float, points[i])), tolerance, False)
        i = int(np.argmax(r))
        # mean can exceed max by one ulp in fsum-free summation; clamp
        mean = min(float(r.mean()), float(r[i]))
        return cls(name, grid, float(r[i]), mean, tuple(map(float, points[i])), tolerance, bool(r[i] <= tolerance))

    def to_dict(self) -> dict:
        d = asdict(self)
        d["worst_point"] = list(self.worst_point)
        return d

    @classmethod
    def from_dict(cls, data: dict) -> "ResidualReport":
        data = dict(data)
        data["worst_point"] = tuple(data["worst_point"])
        return cls(**data)


def _independent(kernel: Kernel) -> Kernel:
    if isinstance(kernel, EvolvedKernel) and kernel.spec == QuadratureSpec():
        return kernel.with_spec(VERIFY_SPEC)
    return kernel


def _describe(ts) -> str:
    ts = np.asarray(ts, dtype=float)
    return f"{ts.size} samples on t in [{ts.min():g}, {ts.max():g}]"


def check_zero_residual(traj: BoundaryTrajectory, kernel: Kernel | None = None, tol: float = 1e-6) -> ResidualReport:
    """|v(t, f(t))| at every sample; also fills ``traj``'s residual column in place."""
    kernel = _independent(kernel or quartic_kernel())
    points = [(s.t, s.f) for s in traj.samples]
    residuals = [abs(kernel.v(t, f)) for t, f in points]
    traj.samples = traj.with_residuals(residuals).samples
    return ResidualReport.from_residuals("zero-residual", _describe(traj.t), points, residuals, tol)


def check_airy4_identities(t: float, x: float, kernel: EvolvedKernel | None = None) -> tuple[float, float]:
    """|v3 - x v - t v1| and |v4 - v - x v1 - t v2|, all from separate moment quadratures."""
    kernel = kernel or EvolvedKernel(QUARTIC, VERIFY_SPEC)
    v = [kernel.derivative(t, x, n) for n in range(5)]
    first = abs(v[3] - x * v[0] - t * v[1])
    second = abs(v[4] - v[0] - x * v[1] - t * v[2])
    return first, second


def check_airy4_grid(ts: Iterable[float] = (0.0, 1.0, 2.0), xs: Iterable[float] = range(-3, 4), tol: float = 1e-8) -> ResidualReport:
    ts, xs = [float(t) for t in ts], [float(x) for x in xs]
    points, residuals = [], []
    for t in ts:
        for x in xs:
            points.append((t, x))
            residuals.append(max(check_airy4_identities(t, x)))
    grid = f"t in {ts}, x in {xs}"
    return ResidualReport.from_residuals("airy4-identities", grid, points, residuals, tol)


def check_hit_identities(
    traj: BoundaryTrajectory,
    kernel: Kernel | None = None,
    tol: float = 1e-6,
    f_double_prime: Callable[[Sample], float] | None = None,
) -> tuple[ResidualReport, ResidualReport]:
    """First- and second-order consequences of v(t, f(t)) = 0 along a trajectory.

    f' v1 + v2/2 = 0 and f'' v1 + f'(f' v2 + v3) + v4/4 = 0. f'' comes from
    the Rayleigh right-hand side unless ``f_double_prime`` is given (needed
    for kernels other than the quartic one, e.g. -1/2 on the Airy parabola).
    """
    if f_double_prime is None:
        def f_double_prime(s: Sample) -> float:
            return rayleigh_rhs(RayleighState(s.t, s.f, s.f_prime))

    kernel = _independent(kernel or quartic_kernel())
    points, first, second = [], [], []
    for s in traj.samples:
        d = [kernel.derivative(s.t, s.f, n) for n in range(1, 5)]
        fpp = f_double_prime(s)
        points.append((s.t, s.f))
        first.append(s.f_prime * d[0] + 0.5 * d[1])
        second.append(fpp * d[0] + s.f_prime * (s.f_prime * d[1] + d[2]) + 0.25 * d[3])
    grid = _describe(traj.t)
    return (
        ResidualReport.from_residuals("hit-first", grid, points, first, tol),
        ResidualReport.from_residuals("hit-second", grid, points, second, tol),
    )


def heat_residual(kernel: Kernel, t: float, x: float, steps: tuple[float, float] = HEAT_STEPS) -> float:
    """|v_t - v_xx/2| by central differences, divided by max(|v|, |v_t|, |v_xx|/2)."""
    ht, hx = steps
    vt = (kernel.v(t + ht, x) - kernel.v(t - ht, x)) / (2 * ht)
    v0 = kernel.v(t, x)
    vxx = (kernel.v(t, x + hx) - 2 * v0 + kernel.v(t, x - hx)) / (hx * hx)
    scale = max(abs(v0), abs(vt), 0.5 * abs(vxx))
    return abs(vt - 0.5 * vxx) / scale if scale > 0 else 0.0


def check_heat_equation(
    kernel: Kernel,
    ts: Iterable[float] = (0.5, 1.0, 2.0),
    xs: Iterable[float] = (-2.0, -1.0, 0.0, 1.0, 2.0),
    tol: float = 1e-4,
) -> ResidualReport:
    """Scaled heat-equation residual; ``max_abs`` is relative to the local scale."""
    kernel = _independent(kernel)
    ts, xs = [float(t) for t in ts], [float(x) for x in xs]
    points = [(t, x) for t in ts for x in xs]
    residuals = [heat_residual(kernel, t, x) for t, x in points]
    return ResidualReport.from_residuals(f"heat-equation[{kernel.name}]", f"t in {ts}, x in {xs}", points, residuals, tol)


class ScaledLimitPoint(NamedTuple):
    t: float
    x: float
    value: float
    error_bound: float


def check_scaled_limit(xi: float, t_list: Sequence[float], *, node_density: float = 16.0) -> list[ScaledLimitPoint]:
    """(3t)^{1/6} e^{t^2/12 - xi t^{2/3}/3^{1/3}} v(t, -2(t/3)^{3/2} + xi (3t)^{1/6}).

    Tends to Ai(xi) as t grows. The prefactor amplifies absolute quadrature
    error, so the truncation tolerance is scaled by exp(-t^2/12) and each
    value carries a bound: prefactor x (half-density difference + 1e-16 x
    sum of |terms|). In double precision the bound stays useful up to t ~ 15.
    """
    ts = [float(t) for t in t_list]
    if any(t <= 0 for t in ts) or any(b <= a for a, b in zip(ts, ts[1:])):
        raise ValueError("t_list must be positive and strictly increasing")
    out = []
    for t in ts:
        expo = t * t / 12.0 - xi * t ** (2.0 / 3.0) / 3.0 ** (1.0 / 3.0)
        if expo > 700.0:
            raise RangeError(f"scaling exponent {expo:.1f} overflows at t={t}")
        x = -2.0 * (t / 3.0) ** 1.5 + xi * (3.0 * t) ** (1.0 / 6.0)
        spec = QuadratureSpec(truncation_tolerance=max(1e-300, 1e-16 * math.exp(-t * t / 12.0)), node_density=node_density)
        q = QUARTIC.exponent_at(t)
        res = oscillatory_integral(QUARTIC.prefactor, q, x, spec)
        c = QUARTIC.normalization
        pref = (3.0 * t) ** (1.0 / 6.0) * math.exp(expo)
        bound = pref * c * (res.error + 1e-16 * res.abs_integral)
        out.append(ScaledLimitPoint(t, x, pref * c * res.value.real, bound))
    return out


def magnitudes_decreasing(points: Sequence[ScaledLimitPoint]) -> bool:
    mags = [abs(p.value) for p in points]
    return all(b < a for a, b in zip(mags, mags[1:]))


@dataclass(frozen=True)
class HermiteDiscrepancy:
    derived: ResidualReport
    alternative: ResidualReport
    alternative_min_abs: float  # smallest |kernel| on the t > 2 grid
    alternative_fails: bool

    def to_dict(self) -> dict:
        return {
            "derived": self.derived.to_dict(),
            "alternative": self.alternative.to_dict(),
            "alternative_min_abs": self.alternative_min_abs,
            "alternative_fails": self.alternative_fails,
        }


def check_hermite_discrepancy(
    kernel: Kernel | None = None,
    derived_ts: Sequence[float] | None = None,
    alt_ts: Sequence[float] = (2.5, 3.0, 3.5, 4.0),
    tol: float = 1e-10,
) -> HermiteDiscrepancy:
    """Residuals of the Gaussian-Hermite kernel on both candidate zero curves.

    The derived curve +/- sqrt(4 - t^2)/2 (t <= 2) should be a zero set; the
    alternative +/- sqrt(t^2 - 4)/2 (t >= 2) should not.
    """
    kernel = _independent(kernel or hermite_kernel())
    if derived_ts is None:
        derived_ts = np.linspace(0.0, 2.0, 41)
    derived_pts, derived_res = [], []
    for t in derived_ts:
        for sign in (1, -1):
            x = closed_form_boundary("hermite", float(t), sign=sign)
            derived_pts.append((float(t), x))
            derived_res.append(kernel.v(float(t), x))
    alt_pts, alt_res = [], []
    for t in alt_ts:
        for sign in (1, -1):
            x = closed_form_boundary("hermite-alt", float(t), sign=sign)
            alt_pts.append((float(t), x))
            alt_res.append(kernel.v(float(t), x))
    derived = ResidualReport.from_residuals("hermite-derived", _describe(derived_ts), derived_pts, derived_res, tol)
    alternative = ResidualReport.from_residuals("hermite-alt", _describe(alt_ts), alt_pts, alt_res, tol)
    min_abs = float(np.min(np.abs(alt_res)))
    return HermiteDiscrepancy(derived, alternative, min_abs, min_abs > 1e3 * tol)
