"""``pearcey-trace``: zeros, boundary traces, verification suites and point evaluation.

Exit codes: 0 success, 1 a verification check failed, 2 bad input or domain
error, 3 trace truncated (blow-up, singularity or double zero).
"""

from __future__ import annotations

import argparse
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import __version__
from .boundary import (
    BoundaryTrajectory,
    closed_form_trajectory,
    restart_at,
    trace_abel,
    trace_rayleigh,
)
from .errors import BlowUpError, DomainError, DoubleZeroError, NotFoundError, PearceyError
from .evolve import KERNEL_NAMES, EvolvedKernel, get_kernel, quartic_kernel
from .kernels.airy import airy_ai, airy_ai_prime
from .kernels.phi4 import phi4
from .kernels.zeros import find_zeros
from .verify import (
    ResidualReport,
    check_airy4_grid,
    check_heat_equation,
    check_hermite_discrepancy,
    check_hit_identities,
    check_scaled_limit,
    check_zero_residual,
    magnitudes_decreasing,
)

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_TRUNCATED = 0, 1, 2, 3
CSV_HEADER = "t,f,f_prime,residual"
HEAT_KERNELS = ("pearcey", "airy3", "shifted", "hermite", "airy-prime", "airy3-closed",
                "shifted-closed", "hermite-closed", "airy-prime-closed", "linear")

REPORT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ResidualReport",
    "type": "object",
    "required": ["name", "grid", "max_abs", "mean_abs", "worst_point", "tolerance", "passed"],
    "additionalProperties": False,
    "properties": {
        "name": {"type": "string"},
        "grid": {"type": "string"},
        "max_abs": {"type": "number", "minimum": 0},
        "mean_abs": {"type": "number", "minimum": 0},
        "worst_point": {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2},
        "tolerance": {"type": "number", "exclusiveMinimum": 0},
        "passed": {"type": "boolean"},
    },
}

ZERO_FUNCTIONS = {
    # name -> (target, search interval for n zeros)
    "phi": (phi4, lambda n: (0.1, 2.0 + 3.0 * n)),
    "ai": (airy_ai, lambda n: (-(3.0 + 3.5 * n), 0.0)),
    "ai-prime": (airy_ai_prime, lambda n: (-(2.0 + 3.5 * n), 0.0)),
}


class InputError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    kernel: str = "pearcey"
    zero_index: int = 1
    sign: int = 1
    t_end: float = 4.0
    dt: float = 0.01
    tol: float = 1e-10
    out: str | None = None
    format: str = "csv"
    restart: float | None = None
    epsilon: float = 2.0
    project_every: int | None = None
    constant: float | None = None
    slope: float = 0.0
    residual: bool = True

    def __post_init__(self):
        if not self.dt > 0:
            raise InputError("--dt must be positive")
        if not self.t_end > 0:
            raise InputError("--t-end must be positive")
        if self.kernel not in KERNEL_NAMES:
            raise InputError(f"unknown kernel {self.kernel!r}; choose from {', '.join(KERNEL_NAMES)}")
        if self.zero_index < 1:
            raise InputError("--zero-index counts from 1")
        if self.sign not in (-1, 1):
            raise InputError("--sign must be + or -")
        if self.format not in ("csv", "json"):
            raise InputError("--format must be csv or json")
        if not self.tol > 0:
            raise InputError("--tol must be positive")
        if self.project_every is not None and self.project_every < 1:
            raise InputError("--project-every must be at least 1")


def _threads() -> int:
    raw = os.environ.get("PEARCEY_TRACE_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        raise InputError(f"PEARCEY_TRACE_THREADS must be an integer, got {raw!r}") from None


def _fmt(x) -> str:
    if x is None or (isinstance(x, float) and math.isnan(x)):
        return ""
    return f"{x + 0.0:.15g}"


def trajectory_csv(traj: BoundaryTrajectory, truncated: str | None = None) -> str:
    buf = io.StringIO()
    buf.write(CSV_HEADER + "\n")
    for s in traj.samples:
        buf.write(",".join((_fmt(s.t), _fmt(s.f), _fmt(s.f_prime), _fmt(s.residual))) + "\n")
    if truncated:
        buf.write(f"# TRUNCATED {truncated}\n")
    return buf.getvalue()


def trajectory_json(traj: BoundaryTrajectory, config: RunConfig, truncated: str | None = None) -> str:
    data = traj.to_dict()
    data["config"] = {
        "kernel": config.kernel, "zero_index": config.zero_index, "sign": config.sign,
        "t_end": config.t_end, "dt": config.dt, "tol": config.tol,
        "restart": config.restart, "epsilon": config.epsilon, "project_every": config.project_every,
    }
    data["version"] = __version__
    data["truncated"] = truncated
    # infinite slopes (Hermite merge point) serialize as Infinity, which json.loads accepts
    return json.dumps(data, indent=2, default=_json_default) + "\n"


def _json_default(obj):
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def load_trajectory(text: str) -> BoundaryTrajectory:
    return BoundaryTrajectory.from_dict(json.loads(text))


def _emit(text: str, out: str | None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _pearcey_xi(n: int, sign: int) -> float:
    target, interval = ZERO_FUNCTIONS["phi"]
    return sign * find_zeros(target, interval(n), n, 1e-14)[n - 1]


def _airy_zero(n: int, prime: bool = False) -> float:
    target, interval = ZERO_FUNCTIONS["ai-prime" if prime else "ai"]
    return find_zeros(target, interval(n), n, 1e-14)[n - 1]


def build_trajectory(config: RunConfig) -> BoundaryTrajectory:
    """Dispatch on the kernel family; may raise BlowUpError with a partial trajectory."""
    name = config.kernel
    rk = dict(rtol=config.tol, atol=config.tol * 1e-2)
    if name in ("pearcey", "quartic"):
        if config.restart is not None:
            traj = restart_at(config.restart, _airy_zero(config.zero_index), config.epsilon, dt=config.dt,
                              project_every=config.project_every, **rk)
            return traj if config.sign > 0 else traj.mirrored()
        xi = _pearcey_xi(config.zero_index, config.sign)
        return trace_rayleigh(xi, config.t_end, dt=config.dt, project_every=config.project_every,
                              branch_index=config.zero_index, **rk)
    if name in ("airy-prime", "airy-prime-closed"):
        return trace_abel(_airy_zero(config.zero_index, prime=True), config.t_end, dt=config.dt, **rk)
    if name in ("airy3", "airy3-closed"):
        c = config.constant if config.constant is not None else _airy_zero(config.zero_index)
        return closed_form_trajectory("airy3", config.t_end, dt=config.dt, C=c)
    if name in ("shifted", "shifted-closed"):
        c = config.constant if config.constant is not None else _airy_zero(config.zero_index) - 0.25
        return closed_form_trajectory("shifted", config.t_end, dt=config.dt, C=c)
    if name in ("hermite", "hermite-closed"):
        if config.t_end > 2:
            raise DomainError("the Hermite zero curves exist only for t <= 2")
        return closed_form_trajectory("hermite", config.t_end, dt=config.dt, sign=config.sign)
    if name == "linear":
        return closed_form_trajectory("linear", config.t_end, dt=config.dt, t_start=config.dt, b=config.slope)
    raise InputError(f"no tracer for kernel {name!r}")


def _residual_kernel(config: RunConfig):
    if config.kernel in ("pearcey", "quartic"):
        return quartic_kernel()
    # pure cubic-phase symbols need ~t^{-3/2} nodes as t -> 0; use their closed forms
    closed = {"airy3": "airy3-closed", "airy-prime": "airy-prime-closed"}
    return get_kernel(closed.get(config.kernel, config.kernel), slope=config.slope)


def cmd_trace(config: RunConfig) -> int:
    truncated = None
    try:
        traj = build_trajectory(config)
    except BlowUpError as exc:
        traj, truncated = exc.trajectory, str(exc)
        if traj is None:
            raise
    except DoubleZeroError as exc:
        print(f"error: {exc}", file=sys.stderr)
        _emit(f"{CSV_HEADER}\n# TRUNCATED {exc}\n" if config.format == "csv" else
              json.dumps({"truncated": str(exc), "samples": []}) + "\n", config.out)
        return EXIT_TRUNCATED
    if config.residual and len(traj):
        check_zero_residual(traj, _residual_kernel(config), tol=math.inf)
    text = trajectory_csv(traj, truncated) if config.format == "csv" else trajectory_json(traj, config, truncated)
    _emit(text, config.out)
    if truncated:
        print(f"warning: {truncated}", file=sys.stderr)
        return EXIT_TRUNCATED
    return EXIT_OK


def cmd_zeros(function: str, n: int, tol: float, fmt: str, out: str | None) -> int:
    if n < 1:
        raise InputError("--n must be at least 1")
    target, interval = ZERO_FUNCTIONS[function]
    try:
        zeros = list(find_zeros(target, interval(n), n, tol))
        status = EXIT_OK
    except NotFoundError as exc:
        zeros, status = exc.found, EXIT_INPUT
        print(f"error: {exc}", file=sys.stderr)
    if fmt == "json":
        text = json.dumps({"function": function, "zeros": zeros, "complete": status == EXIT_OK}) + "\n"
    else:
        text = "".join(f"{_fmt(z)}\n" for z in zeros)
    _emit(text, out)
    return status


def _scaled_limit_summary(xi: float, t_list) -> dict:
    points = check_scaled_limit(xi, t_list)
    target = airy_ai(xi)
    if abs(target) < 1e-6:
        passed = magnitudes_decreasing(points)
    else:
        dist = [abs(p.value - target) for p in points]
        passed = all(b < a for a, b in zip(dist, dist[1:]))
    return {
        "xi": xi, "limit": target, "passed": passed,
        "table": [p._asdict() for p in points],
    }


def cmd_verify(args) -> int:
    selected = {k for k in ("zero_residual", "identities", "scaled_limit", "hermite_discrepancy", "heat")
                if getattr(args, k)}
    if not selected:
        selected = {"zero_residual", "identities", "scaled_limit", "hermite_discrepancy", "heat"}
    reports: list[ResidualReport] = []
    extra: dict = {}
    ok = True
    if selected & {"zero_residual", "identities"}:
        xi = _pearcey_xi(args.zero_index, args.sign)
        traj = trace_rayleigh(xi, args.t_end, dt=args.dt, rtol=args.tol, atol=args.tol * 1e-2,
                              project_every=args.project_every, branch_index=args.zero_index)
        if "zero_residual" in selected:
            reports.append(check_zero_residual(traj))
        if "identities" in selected:
            reports.extend(check_hit_identities(traj))
            reports.append(check_airy4_grid())
    if "heat" in selected:
        with ThreadPoolExecutor(max_workers=_threads()) as pool:
            reports.extend(pool.map(lambda k: check_heat_equation(get_kernel(k, slope=0.5)), HEAT_KERNELS))
    if "hermite_discrepancy" in selected:
        h = check_hermite_discrepancy()
        extra["hermite_discrepancy"] = h.to_dict()
        reports.append(h.derived)
        ok &= h.alternative_fails
    if "scaled_limit" in selected:
        summary = _scaled_limit_summary(args.xi, args.t_list)
        extra["scaled_limit"] = summary
        ok &= summary["passed"]
    ok &= all(r.passed for r in reports)
    doc = {"version": __version__, "passed": bool(ok), "reports": [r.to_dict() for r in reports], **extra}
    _emit(json.dumps(doc, indent=2, allow_nan=False) + "\n", args.out)
    return EXIT_OK if ok else EXIT_VERIFY


def cmd_eval(kernel_name: str, t: float, x: float, order: int, slope: float) -> int:
    kernel = get_kernel(kernel_name, slope=slope)
    if isinstance(kernel, EvolvedKernel) and not (t == 0 and kernel.symbol.needs_damping):
        res = kernel.evaluate(t, x, order)
        value, error = res.value.real, res.error
    else:
        value, error = kernel.derivative(t, x, order), 0.0
    print(f"{value:.15g} {error:.3g}")
    return EXIT_OK


def _sign(text: str) -> int:
    table = {"+": 1, "-": -1, "1": 1, "-1": -1, "+1": 1, "pos": 1, "neg": -1}
    if text not in table:
        raise argparse.ArgumentTypeError("sign must be + or -")
    return table[text]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="pearcey-trace", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    z = sub.add_parser("zeros", help="first n zeros of phi, Ai or Ai'")
    z.add_argument("--function", choices=sorted(ZERO_FUNCTIONS), default="phi")
    z.add_argument("--n", type=int, default=1)
    z.add_argument("--tol", type=float, default=1e-12)
    z.add_argument("--format", choices=("csv", "json"), default="csv")
    z.add_argument("--out")

    def branch_args(p, tol_default):
        p.add_argument("--zero-index", type=int, default=1)
        p.add_argument("--sign", type=_sign, default=1)
        p.add_argument("--t-end", type=float, default=4.0)
        p.add_argument("--dt", type=float, default=0.01)
        p.add_argument("--tol", type=float, default=tol_default, help="ODE relative tolerance")
        p.add_argument("--project-every", type=int, default=None)
        p.add_argument("--out")

    tr = sub.add_parser("trace", help="trace one zero boundary to CSV or JSON")
    tr.add_argument("--kernel", default="pearcey")
    branch_args(tr, 1e-10)
    tr.add_argument("--restart", type=float, default=None, metavar="T")
    tr.add_argument("--epsilon", type=float, default=2.0)
    tr.add_argument("--constant", type=float, default=None, help="C of the parabolic boundaries")
    tr.add_argument("--slope", type=float, default=0.0, help="b of the linear boundary")
    tr.add_argument("--format", choices=("csv", "json"), default="csv")
    tr.add_argument("--no-residual", dest="residual", action="store_false")

    v = sub.add_parser("verify", help="run verification suites; JSON report")
    branch_args(v, 1e-12)
    v.add_argument("--zero-residual", action="store_true")
    v.add_argument("--identities", action="store_true")
    v.add_argument("--scaled-limit", action="store_true")
    v.add_argument("--hermite-discrepancy", action="store_true")
    v.add_argument("--heat", action="store_true")
    v.add_argument("--xi", type=float, default=-2.338107410459767)
    v.add_argument("--t-list", type=float, nargs="+", default=[5.0, 10.0, 15.0])

    e = sub.add_parser("eval", help="v or its x-derivative at one point")
    e.add_argument("--kernel", default="pearcey")
    e.add_argument("--t", type=float, required=True)
    e.add_argument("--x", type=float, required=True)
    e.add_argument("--order", type=int, default=0)
    e.add_argument("--slope", type=float, default=0.0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "zeros":
            return cmd_zeros(args.function, args.n, args.tol, args.format, args.out)
        if args.command == "trace":
            config = RunConfig(
                kernel=args.kernel, zero_index=args.zero_index, sign=args.sign, t_end=args.t_end,
                dt=args.dt, tol=args.tol, out=args.out, format=args.format, restart=args.restart,
                epsilon=args.epsilon, project_every=args.project_every, constant=args.constant,
                slope=args.slope, residual=args.residual,
            )
            return cmd_trace(config)
        if args.command == "verify":
            RunConfig(zero_index=args.zero_index, sign=args.sign, t_end=args.t_end, dt=args.dt,
                      tol=args.tol, project_every=args.project_every)
            _threads()
            return cmd_verify(args)
        return cmd_eval(args.kernel, args.t, args.x, args.order, args.slope)
    except (InputError, KeyError, ValueError, DomainError, NotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PearceyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
