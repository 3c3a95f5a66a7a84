"""Zero trajectories t -> f(t) with v(t, f(t)) = 0.

The Pearcey branches solve the Rayleigh-type equation

    f'' = 2 f'^3 - t f' / 2 - f / 4,   f(0) = xi,   f'(0) = -phi''(xi) / (2 phi'(xi))

with xi a zero of the order-4 Airy function. The equation is unstable forward
in time off the zero set (perturbations grow roughly like exp(t^2)), so
in double precision an unprojected trace is good to t ~ 4 and blows up near
t ~ 5.3. ``project_every`` re-seeds (f, f') from a root of v(t, .) every k
output samples for longer horizons; integration backward in time is stable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np
from scipy.integrate import solve_ivp

from .errors import BlowUpError, DomainError, DoubleZeroError, NotFoundError, SingularityError
from .evolve import Kernel, quartic_kernel
from .kernels.airy import airy_pair
from .kernels.phi4 import phi4, phi4_derivative
from .kernels.tables import airy_zeros
from .kernels.zeros import nearest_zero
from .quadrature import QuadratureSpec

METHODS = ("rayleigh", "abel", "closed-form", "asymptotic")


@dataclass(frozen=True)
class RayleighState:
    t: float
    f: float
    f_prime: float

    def __post_init__(self):
        if not all(map(math.isfinite, (self.t, self.f, self.f_prime))):
            raise ValueError(f"non-finite state {self}")


class Sample(NamedTuple):
    t: float
    f: float
    f_prime: float
    residual: float | None = None
    projected: bool = False


@dataclass(frozen=True)
class Branch:
    index: int | None
    sign: int

    def __post_init__(self):
        if self.sign not in (-1, 1):
            raise ValueError("branch sign must be +1 or -1")


@dataclass
class BoundaryTrajectory:
    samples: list[Sample]
    branch: Branch
    method: str
    kernel: str = ""
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.method not in METHODS:
            raise ValueError(f"unknown method {self.method!r}")
        self.samples = [Sample(*s) for s in self.samples]
        ts = [s.t for s in self.samples]
        if any(b <= a for a, b in zip(ts, ts[1:])):
            raise ValueError("sample times must be strictly increasing")

    def __len__(self):
        return len(self.samples)

    @property
    def t(self) -> np.ndarray:
        return np.array([s.t for s in self.samples])

    @property
    def f(self) -> np.ndarray:
        return np.array([s.f for s in self.samples])

    @property
    def f_prime(self) -> np.ndarray:
        return np.array([s.f_prime for s in self.samples])

    @property
    def residual(self) -> np.ndarray:
        return np.array([np.nan if s.residual is None else s.residual for s in self.samples])

    def with_residuals(self, residuals) -> "BoundaryTrajectory":
        samples = [s._replace(residual=float(r)) for s, r in zip(self.samples, residuals, strict=True)]
        return BoundaryTrajectory(samples, self.branch, self.method, self.kernel, dict(self.metadata))

    def mirrored(self) -> "BoundaryTrajectory":
        samples = [s._replace(f=-s.f, f_prime=-s.f_prime) for s in self.samples]
        branch = Branch(self.branch.index, -self.branch.sign)
        return BoundaryTrajectory(samples, branch, self.method, self.kernel, dict(self.metadata))

    def sample_at(self, t: float) -> Sample:
        i = int(np.argmin(np.abs(self.t - t)))
        if abs(self.samples[i].t - t) > 1e-9:
            raise KeyError(f"no sample at t={t}")
        return self.samples[i]

    def to_dict(self) -> dict:
        return {
            "kernel": self.kernel,
            "branch": {"index": self.branch.index, "sign": self.branch.sign},
            "method": self.method,
            "metadata": self.metadata,
            "samples": [s._asdict() for s in self.samples],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "BoundaryTrajectory":
        samples = [Sample(**s) for s in data["samples"]]
        return cls(samples, Branch(**data["branch"]), data["method"], data.get("kernel", ""), data.get("metadata", {}))


def rayleigh_rhs(s: RayleighState) -> float:
    """f'' = 2 f'^3 - t f' / 2 - f / 4."""
    return 2.0 * s.f_prime**3 - 0.5 * s.t * s.f_prime - 0.25 * s.f


def _rhs(t, y):
    return (y[1], 2.0 * y[1] ** 3 - 0.5 * t * y[1] - 0.25 * y[0])


def _check_denominator(v1: float, v2: float, where: str) -> None:
    if not abs(v1) > 1e-8 * max(abs(v1), abs(v2)) or v1 == 0:
        raise DoubleZeroError(f"first derivative vanishes at {where}")


def initial_slope(xi: float, spec: QuadratureSpec | None = None) -> float:
    """f'(0) = -phi''(xi) / (2 phi'(xi))."""
    d1 = phi4_derivative(xi, 1, spec)
    d2 = phi4_derivative(xi, 2, spec)
    _check_denominator(d1, d2, f"xi={xi}")
    return -d2 / (2.0 * d1)


def slope_from_v(t: float, f: float, kernel: Kernel) -> float:
    """Boundary slope -v''/(2 v') at a zero of v(t, .)."""
    v1 = kernel.derivative(t, f, 1)
    v2 = kernel.derivative(t, f, 2)
    _check_denominator(v1, v2, f"(t, x)=({t}, {f})")
    return -v2 / (2.0 * v1)


def asymptotic_boundary(t: float, xi_ai: float, positive: bool = False) -> float:
    """-2 (t/3)^{3/2} + xi_ai (3t)^{1/6}; ``positive`` gives the mirror branch."""
    if t < 0:
        raise DomainError("time must be non-negative")
    value = -2.0 * (t / 3.0) ** 1.5 + xi_ai * (3.0 * t) ** (1.0 / 6.0)
    return -value if positive else value


def output_grid(t0: float, t1: float, dt: float) -> np.ndarray:
    """Points t0, t0 +/- dt, ..., t1 (inclusive); descending when t1 < t0."""
    if dt <= 0:
        raise ValueError("dt must be positive")
    span = t1 - t0
    n = int(round(abs(span) / dt))
    grid = t0 + math.copysign(dt, span) * np.arange(n + 1)
    if abs(abs(span) - n * dt) > 1e-9 * max(1.0, abs(span)):
        grid = np.append(grid, t1)
    grid[-1] = t1
    return grid


class _Segment(NamedTuple):
    t: np.ndarray
    y: np.ndarray  # shape (2, len(t))
    complete: bool
    message: str


def _integrate(state: tuple[float, float], grid: np.ndarray, rtol: float, atol: float, slope_cap: float) -> _Segment:
    def cap(t, y):
        return slope_cap - abs(y[1])

    cap.terminal = True
    sol = solve_ivp(_rhs, (grid[0], grid[-1]), state, method="DOP853", t_eval=grid, rtol=rtol, atol=atol, events=cap)
    complete = sol.status == 0 and sol.t.size == grid.size
    if sol.status == 1:
        message = f"slope cap {slope_cap} exceeded at t={sol.t_events[0][0]:.6g}"
    else:
        message = sol.message
    return _Segment(sol.t, sol.y, complete, message)


def _project(kernel: Kernel, t: float, f: float, tol: float) -> tuple[float, float]:
    root = nearest_zero(kernel.at_time(t), f, tol, initial_step=1e-6 * max(1.0, abs(f)), max_step=0.05, max_distance=1.0)
    return root, slope_from_v(t, root, kernel)


def _run(
    start: RayleighState,
    grid: np.ndarray,
    kernel: Kernel,
    *,
    rtol: float,
    atol: float,
    slope_cap: float,
    project_every: int | None,
    projection_tol: float,
) -> tuple[list[Sample], str | None]:
    """Integrate along ``grid`` (either direction); returns samples and a failure message."""
    samples = [Sample(start.t, start.f, start.f_prime)]
    state = (start.f, start.f_prime)
    step = project_every or len(grid)
    i = 0
    while i < len(grid) - 1:
        chunk = grid[i : min(i + step, len(grid) - 1) + 1]
        seg = _integrate(state, chunk, rtol, atol, slope_cap)
        for k in range(1, seg.t.size):
            samples.append(Sample(float(seg.t[k]), float(seg.y[0, k]), float(seg.y[1, k])))
        if not seg.complete:
            return samples, seg.message
        i += chunk.size - 1
        if project_every:
            t = float(chunk[-1])
            try:
                f, fp = _project(kernel, t, samples[-1].f, projection_tol)
            except (NotFoundError, DoubleZeroError) as exc:
                return samples, f"projection failed at t={t:.6g}: {exc}"
            samples[-1] = Sample(t, f, fp, None, True)
            state = (f, fp)
        else:
            state = (samples[-1].f, samples[-1].f_prime)
    return samples, None


def trace_rayleigh(
    xi: float,
    t_end: float,
    *,
    dt: float = 0.01,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    slope_cap: float = 50.0,
    project_every: int | None = None,
    projection_tol: float = 1e-11,
    kernel: Kernel | None = None,
    polish: bool = True,
    branch_index: int | None = None,
) -> BoundaryTrajectory:
    """Integrate the Rayleigh equation from (0, xi, initial_slope(xi)) to ``t_end``.

    ``xi`` is polished to the nearest zero of phi first (so a rounded value
    such as 2.44197 lands on the true zero); pass ``polish=False`` to use it
    verbatim. Raises BlowUpError carrying the partial trajectory when the slope
    cap is hit or the step size underflows.
    """
    if t_end <= 0:
        raise ValueError("t_end must be positive")
    kernel = kernel or quartic_kernel()
    if polish:
        xi = nearest_zero(phi4, xi, 1e-15, initial_step=1e-7, max_distance=0.5)
    start = RayleighState(0.0, xi, initial_slope(xi))
    grid = output_grid(0.0, t_end, dt)
    samples, failure = _run(
        start, grid, kernel, rtol=rtol, atol=atol, slope_cap=slope_cap,
        project_every=project_every, projection_tol=projection_tol,
    )
    meta = {
        "xi": xi, "initial_slope": start.f_prime, "rtol": rtol, "atol": atol, "dt": dt,
        "slope_cap": slope_cap, "project_every": project_every,
    }
    traj = BoundaryTrajectory(samples, Branch(branch_index, 1 if xi > 0 else -1), "rayleigh", kernel.name, meta)
    if failure:
        traj.metadata["truncated"] = failure
        raise BlowUpError(f"Rayleigh trace from xi={xi:.8g} stopped: {failure}", traj)
    return traj


def restart_at(
    t: float,
    xi_ai: float,
    epsilon: float,
    kernel: Kernel | None = None,
    *,
    dt: float = 0.01,
    rtol: float = 1e-10,
    atol: float = 1e-12,
    slope_cap: float = 50.0,
    project_every: int | None = None,
    projection_tol: float = 1e-11,
    root_tol: float = 1e-11,
) -> BoundaryTrajectory:
    """Solve the Rayleigh equation on [t - epsilon, t + epsilon] from a root of v(t, .).

    The root is sought next to the positive-branch asymptotic boundary; the
    slope there is -v''/(2 v'). Backward integration is unprojected (it is
    stable); ``project_every`` applies to the forward half.
    """
    if t - epsilon <= 0 or epsilon <= 0:
        raise ValueError("need 0 < epsilon < t")
    kernel = kernel or quartic_kernel()
    seed = asymptotic_boundary(t, xi_ai, positive=True)
    f0 = nearest_zero(kernel.at_time(t), seed, root_tol, initial_step=1e-3, max_step=0.05, max_distance=2.0)
    start = RayleighState(t, f0, slope_from_v(t, f0, kernel))
    common = dict(rtol=rtol, atol=atol, slope_cap=slope_cap, projection_tol=projection_tol)
    back, back_fail = _run(start, output_grid(t, t - epsilon, dt), kernel, project_every=None, **common)
    fwd, fwd_fail = _run(start, output_grid(t, t + epsilon, dt), kernel, project_every=project_every, **common)
    samples = back[::-1] + fwd[1:]
    samples[len(back) - 1] = samples[len(back) - 1]._replace(projected=True)
    meta = {
        "restart_time": t, "epsilon": epsilon, "xi_ai": xi_ai, "seed": seed, "root": f0,
        "slope": start.f_prime, "rtol": rtol, "atol": atol, "dt": dt, "project_every": project_every,
    }
    traj = BoundaryTrajectory(samples, Branch(None, 1 if f0 > 0 else -1), "rayleigh", kernel.name, meta)
    failure = back_fail or fwd_fail
    if failure:
        traj.metadata["truncated"] = failure
        raise BlowUpError(f"restart at t={t} stopped: {failure}", traj)
    return traj


def abel_implicit_residual(t: float, f: float) -> float:
    """t/2 Ai(t^2/4 + f) + Ai'(t^2/4 + f); zero along the Abel trajectory."""
    ai, aip = airy_pair(t * t / 4.0 + f)
    return 0.5 * t * ai + aip


def trace_abel(
    f0: float,
    t_end: float,
    *,
    dt: float = 0.01,
    rtol: float = 1e-12,
    atol: float = 1e-14,
    polish: bool = True,
    min_abs_f: float = 1e-6,
) -> BoundaryTrajectory:
    """Integrate 2 f f' + 1 + t f = 0 from f(0) = f0 (a zero of Ai')."""
    if f0 == 0:
        raise DomainError("f0 must be non-zero")
    if polish:
        f0 = nearest_zero(lambda x: airy_pair(x)[1], f0, 1e-15, initial_step=1e-7, max_distance=0.5)

    def rhs(t, y):
        return (-(1.0 + t * y[0]) / (2.0 * y[0]),)

    def pole(t, y):
        return abs(y[0]) - min_abs_f

    pole.terminal = True
    grid = output_grid(0.0, t_end, dt)
    sol = solve_ivp(rhs, (0.0, t_end), (f0,), method="DOP853", t_eval=grid, rtol=rtol, atol=atol, events=pole)
    samples = [Sample(float(t), float(f), float(-(1.0 + t * f) / (2.0 * f))) for t, f in zip(sol.t, sol.y[0])]
    traj = BoundaryTrajectory(samples, Branch(None, -1 if f0 < 0 else 1), "abel", "airy-prime",
                              {"f0": f0, "rtol": rtol, "atol": atol, "dt": dt})
    if sol.status != 0:
        traj.metadata["truncated"] = sol.message if sol.status < 0 else "f reached 0"
        raise SingularityError(f"Abel trace stopped at t={sol.t[-1]:.6g}", traj)
    return traj


def closed_form_boundary(kind: str, t: float, **params) -> float:
    """Closed-form zero curves.

    kinds: ``airy3`` (C - t^2/4), ``shifted`` (C - t/2 - t^2/4),
    ``hermite`` (sign * sqrt(4 - t^2)/2, t <= 2), ``hermite-alt``
    (sign * sqrt(t^2 - 4)/2, t >= 2) and ``linear`` (-b t).
    """
    if t < 0:
        raise DomainError("time must be non-negative")
    if kind == "airy3":
        c = params.get("C", airy_zeros(1)[0])
        return c - 0.25 * t * t
    if kind == "shifted":
        c = params.get("C", airy_zeros(1)[0] - 0.25)
        return c - 0.5 * t - 0.25 * t * t
    if kind in ("hermite", "hermite-alt"):
        sign = params.get("sign", 1)
        arg = 4.0 - t * t if kind == "hermite" else t * t - 4.0
        if arg < -1e-14:
            raise DomainError(f"{kind} boundary is not real at t={t}")
        return sign * 0.5 * math.sqrt(max(arg, 0.0))
    if kind == "linear":
        return -params.get("b", 0.0) * t
    raise KeyError(f"unknown closed-form boundary {kind!r}")


def _closed_form_slope(kind: str, t: float, **params) -> float:
    if kind == "airy3":
        return -0.5 * t
    if kind == "shifted":
        return -0.5 * (t + 1.0)
    if kind == "hermite":
        arg = 4.0 - t * t
        return -params.get("sign", 1) * 0.5 * t / math.sqrt(arg) if arg > 0 else -params.get("sign", 1) * math.inf
    if kind == "linear":
        return -params.get("b", 0.0)
    raise KeyError(kind)


def closed_form_trajectory(kind: str, t_end: float, *, dt: float = 0.01, t_start: float = 0.0, **params) -> BoundaryTrajectory:
    grid = output_grid(t_start, t_end, dt)
    samples = [Sample(float(t), closed_form_boundary(kind, t, **params), _closed_form_slope(kind, t, **params)) for t in grid]
    f0 = samples[0].f
    meta = {"kind": kind, "dt": dt, **params}
    return BoundaryTrajectory(samples, Branch(None, -1 if f0 < 0 else 1), "closed-form", kind, meta)


def asymptotic_trajectory(xi_ai: float, t_end: float, *, dt: float = 0.01, t_start: float = 0.0, positive: bool = True) -> BoundaryTrajectory:
    grid = output_grid(t_start, t_end, dt)
    sign = -1.0 if positive else 1.0
    samples = []
    for t in grid:
        f = asymptotic_boundary(t, xi_ai, positive)
        fp = sign * (-((t / 3.0) ** 0.5) + xi_ai * 3.0 ** (1.0 / 6.0) / 6.0 * t ** (-5.0 / 6.0)) if t > 0 else math.nan
        samples.append(Sample(float(t), f, fp))
    return BoundaryTrajectory(samples, Branch(None, 1 if positive else -1), "asymptotic", "pearcey",
                              {"xi_ai": xi_ai, "dt": dt})
