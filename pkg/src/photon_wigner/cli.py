"""Command-line front end: ``eval``, ``sweep`` and ``verify``.

Exit codes: 0 pass, 1 verification failure, 2 usage error or degenerate input.
"""
from __future__ import annotations

import argparse
import ast
import io
import math
import operator
import re
import sys
from dataclasses import dataclass, replace

import numpy as np

from . import checks
from .errors import OracleMismatch, WignerError
from .geom_core import Z_HAT, UnitVec3
from .lorentz import C_KM_S, beta_from_kms, thomas_angle
from .spherical import SphericalTriangle, excess_from_angle_sum

SWEEP_VARS = ("angle_zp", "v_b", "theta")
DEFAULT_P_HAT = (math.sin(math.pi / 4), 0.0, -math.cos(math.pi / 4))
DEFAULT_B_HAT = (math.cos(math.pi / 4), math.sin(math.pi / 4), 0.0)
DEFAULT_V_Z = 2.0 / 3.0
DEFAULT_V_B = beta_from_kms(8.0)

_KMS_RE = re.compile(r"^\s*(.+?)\s*km/s\s*$")
_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}


def _eval_node(node) -> float:
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _eval_node(node.operand)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval_node(node.left), _eval_node(node.right))
    raise ValueError("unsupported expression")


def parse_number(text: str) -> float:
    """A float or an arithmetic expression in ``pi`` such as ``2/3``, ``pi/2``, ``2pi`` or ``pi-0.01``."""
    src = re.sub(r"(\d)\s*pi", r"\1*pi", text.strip())
    try:
        return _eval_node(ast.parse(src, mode="eval").body)
    except (SyntaxError, ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None


def parse_velocity(text: str) -> float:
    """A speed as a fraction of c, or in km/s with a ``km/s`` suffix."""
    m = _KMS_RE.match(text)
    beta = beta_from_kms(parse_number(m.group(1))) if m else parse_number(text)
    if not 0.0 <= beta < 1.0:
        raise argparse.ArgumentTypeError(f"speed {text!r} is not in [0, c)")
    return beta


def parse_vector(text: str) -> tuple[float, float, float]:
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected x,y,z, got {text!r}")
    v = tuple(parse_number(p) for p in parts)
    if not any(v):
        raise argparse.ArgumentTypeError("direction must be non-zero")
    return v


def parse_positive(text: str) -> float:
    x = parse_number(text)
    if not x > 0.0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return x


@dataclass(frozen=True)
class SweepSpec:
    variable: str
    start: float
    stop: float
    count: int
    log: bool = False

    def __post_init__(self):
        if self.variable not in SWEEP_VARS:
            raise ValueError(f"sweep variable must be one of {SWEEP_VARS}, got {self.variable!r}")
        if self.count < 2:
            raise ValueError("sweep count must be at least 2")
        if not self.start < self.stop:
            raise ValueError("sweep start must be below stop")
        if self.log and not self.start > 0.0:
            raise ValueError("log spacing needs a positive start")
        if self.variable == "v_b" and not (0.0 <= self.start and self.stop < 1.0):
            raise ValueError("v_b sweep must stay within [0, c)")

    def grid(self) -> np.ndarray:
        if self.log:
            return np.geomspace(self.start, self.stop, self.count)
        return np.linspace(self.start, self.stop, self.count)


def parse_sweep(text: str) -> SweepSpec:
    """``var:start:stop:count[:log]``; v_b bounds accept km/s, angles accept pi."""
    parts = text.split(":")
    if len(parts) not in (4, 5) or (len(parts) == 5 and parts[4] not in ("log", "lin")):
        raise argparse.ArgumentTypeError(f"expected var:start:stop:count[:log], got {text!r}")
    var = parts[0]
    conv = parse_velocity if var == "v_b" else parse_number
    try:
        return SweepSpec(var, conv(parts[1]), conv(parts[2]), int(parts[3]), len(parts) == 5 and parts[4] == "log")
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


@dataclass(frozen=True)
class Params:
    p_hat: tuple[float, float, float]
    b_hat: tuple[float, float, float]
    v_z: float
    v_b: float
    theta: float
    ratio: float

    def config(self) -> checks.Config:
        return checks.Config(self.p_hat, self.b_hat, self.v_z, self.v_b, self.theta, self.ratio)


def params_from_args(args) -> Params:
    v_z = args.v_z
    ratio = args.ratio if args.ratio is not None else math.sqrt((1.0 + v_z) / (1.0 - v_z))
    return Params(args.p_hat, args.b_hat, v_z, args.v_b, args.theta, ratio)


def _fmt(x) -> str:
    return "" if x is None else format(float(x), ".17g")


def _vec(v) -> str:
    return "(" + ", ".join(format(float(c), ".17g") for c in v) + ")"


def cmd_eval(args, out) -> int:
    prm = params_from_args(args)
    cfg = prm.config()
    try:
        res = checks.wigner_angles(cfg.p, cfg.b, prm.v_b, prm.theta, prm.ratio)
        report = checks.evaluate(cfg)
    except WignerError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    parts = res.parts
    r1, r2, r3 = res.rotations
    print(f"p_hat            {_vec(cfg.p)}", file=out)
    print(f"b_hat            {_vec(cfg.b)}", file=out)
    print(f"Lambda p_hat     {_vec(res.momentum_out.direction)}", file=out)
    print(f"v_z              {_fmt(prm.v_z)} c", file=out)
    print(f"v_b              {_fmt(prm.v_b)} c = {_fmt(prm.v_b * C_KM_S)} km/s (c = {C_KM_S} km/s)", file=out)
    print(f"theta            {_fmt(prm.theta)}", file=out)
    print(f"p0/omega0        {_fmt(prm.ratio)}", file=out)
    print(f"phi_W analytic   {_fmt(res.angle_signed)}", file=out)
    print(f"phi_W oracle     {_fmt(res.oracle_angle)}", file=out)
    print(f"residual         {_fmt(report.oracle)}", file=out)
    print(f"null rotation    alpha={_fmt(parts.alpha)} beta={_fmt(parts.beta)}", file=out)
    for name, r in (("n1", r1), ("n2", r2), ("n3", r3)):
        print(f"{name} (angle)       {_vec(r.axis)} ({_fmt(r.angle)})", file=out)
    try:
        phi2 = thomas_angle(prm.v_b, prm.v_z, cfg.b.dot(cfg.p), float(np.linalg.norm(cfg.p.cross(cfg.b))))
        print(f"phi_2 Thomas     {_fmt(phi2)} (boosts v_z then v_b)", file=out)
    except WignerError:
        pass
    print(f"thomas residual  {_fmt(report.thomas) if report.thomas is not None else 'n/a (collinear boosts)'}", file=out)
    if report.excess_value is not None:
        print(f"excess (theta=pi/2)  {_fmt(report.excess_value)}", file=out)
        print(f"excess residual  {_fmt(report.excess)}", file=out)
    else:
        print("excess (theta=pi/2)  n/a (degenerate triangle)", file=out)
    print(f"frequency spread {_fmt(report.frequency)}", file=out)
    ok = report.passes()
    print("PASS" if ok else "FAIL", file=out)
    return 0 if ok else 1


@dataclass(frozen=True)
class SweepRow:
    x: float
    phi_w: float | None = None
    phi_w_oracle: float | None = None
    phi_2: float | None = None
    excess: float | None = None
    residual: float | None = None
    flag: str = "ok"


def sweep_point(spec: SweepSpec, prm: Params, x: float) -> tuple[Params, SweepRow]:
    if spec.variable == "angle_zp":
        prm = replace(prm, p_hat=(math.sin(x), 0.0, -math.cos(x)))
    elif spec.variable == "v_b":
        prm = replace(prm, v_b=float(x))
    else:
        prm = replace(prm, theta=float(x))
    try:
        p, b = UnitVec3(*prm.p_hat), UnitVec3(*prm.b_hat)
        res = checks.wigner_angles(p, b, prm.v_b, prm.theta, prm.ratio)
        if res.residual > checks.TOL:
            raise OracleMismatch(f"residual {res.residual!r} at {spec.variable} = {x!r}")
        phi2 = thomas_angle(prm.v_b, prm.v_z, b.dot(p), float(np.linalg.norm(p.cross(b))))
        excess = None
        if abs(prm.theta - math.pi / 2) <= 1e-15:
            excess = excess_from_angle_sum(SphericalTriangle(Z_HAT, p, res.momentum_out.direction))
        return prm, SweepRow(float(x), res.angle_signed, res.oracle_angle, phi2, excess, res.residual)
    except WignerError as exc:
        return prm, SweepRow(float(x), flag=type(exc).__name__)


def sweep_rows(spec: SweepSpec, prm: Params) -> list[SweepRow]:
    return [sweep_point(spec, prm, x)[1] for x in spec.grid()]


def write_csv(spec: SweepSpec, prm: Params, rows: list[SweepRow], out) -> None:
    print("# photon-wigner sweep", file=out)
    print(
        f"# sweep variable={spec.variable} start={_fmt(spec.start)} stop={_fmt(spec.stop)} "
        f"count={spec.count} spacing={'log' if spec.log else 'linear'}",
        file=out,
    )
    print(f"# p_hat={_vec(prm.p_hat)} b_hat={_vec(prm.b_hat)}", file=out)
    print(f"# v_z={_fmt(prm.v_z)} v_b={_fmt(prm.v_b)} (fractions of c) theta={_fmt(prm.theta)} p0/omega0={_fmt(prm.ratio)}", file=out)
    print(f"# km/s inputs converted with beta = v / c, c = {C_KM_S} km/s", file=out)
    if spec.variable == "angle_zp":
        print("# p_hat = [sin x, 0, -cos x]; the angle between z and p_hat is pi - x", file=out)
    print("# phi_2: Thomas angle of the v_z boost along p_hat followed by the v_b boost", file=out)
    cols = ["x"] + (["v_b_km_s"] if spec.variable == "v_b" else []) + [
        "phi_W", "phi_W_oracle", "phi_2", "excess", "residual", "flag"
    ]
    print(",".join(cols), file=out)
    for r in rows:
        vals = [_fmt(r.x)] + ([_fmt(r.x * C_KM_S)] if spec.variable == "v_b" else [])
        vals += [_fmt(r.phi_w), _fmt(r.phi_w_oracle), _fmt(r.phi_2), _fmt(r.excess), _fmt(r.residual), r.flag]
        print(",".join(vals), file=out)


_XLABELS = {
    "angle_zp": r"$\varphi_{\hat z\to\hat p}$ (rad), $\hat p = [\sin\varphi, 0, -\cos\varphi]$",
    "v_b": r"$v_{\hat b}$ (km/s)",
    "theta": r"$\theta$ (rad)",
}


def write_svg(spec: SweepSpec, rows: list[SweepRow], path: str) -> None:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    matplotlib.rcParams["svg.hashsalt"] = "photon-wigner"
    ok = [r for r in rows if r.flag == "ok"]
    scale = C_KM_S if spec.variable == "v_b" else 1.0
    xs = [r.x * scale for r in ok]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(xs, [r.phi_w for r in ok], label=r"Wigner angle $\varphi_W$")
    if spec.variable == "v_b":
        ax.plot(xs, [r.phi_2 for r in ok], label=r"Thomas angle $\varphi_2$")
    ax.set_xlabel(_XLABELS[spec.variable])
    ax.set_ylabel("angle (rad)")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, format="svg", metadata={"Date": None})
    plt.close(fig)


def cmd_sweep(args, out) -> int:
    if args.sweep is None:
        print("error: sweep needs --sweep var:start:stop:count", file=sys.stderr)
        return 2
    prm = params_from_args(args)
    try:
        rows = sweep_rows(args.sweep, prm)
    except OracleMismatch as exc:
        print(f"error: oracle mismatch: {exc}", file=sys.stderr)
        return 1
    buf = io.StringIO()
    write_csv(args.sweep, prm, rows, buf)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            fh.write(buf.getvalue())
    else:
        out.write(buf.getvalue())
    if args.svg:
        write_svg(args.sweep, rows, args.svg)
    return 0


def cmd_verify(args, out) -> int:
    configs = checks.sample_configs(args.seed, args.trials)
    reports = []
    for cfg in configs:
        try:
            reports.append(checks.evaluate(cfg))
        except WignerError as exc:
            print(f"configuration raised {type(exc).__name__}: {exc}", file=out)
            print("  replay: photon-wigner eval " + " ".join(cfg.eval_flags()), file=out)
            return 1
    worst = checks.max_residuals(reports)
    limits = {"oracle": checks.TOL, "frequency": checks.FREQUENCY_TOL, "thomas": checks.TOL, "excess": checks.TOL}
    print(f"seed {args.seed}, {args.trials} trials", file=out)
    for s in checks.SUITES:
        status = "pass" if worst[s] <= limits[s] else "FAIL"
        print(f"{s:10s} max residual {_fmt(worst[s])} (limit {limits[s]:g}) {status}", file=out)
    failing = [r for r in reports if not r.passes()]
    for r in failing[:10]:
        print("failing configuration, replay with:", file=out)
        print("  photon-wigner eval " + " ".join(r.config.eval_flags()), file=out)
    if failing:
        print(f"{len(failing)} of {len(reports)} configurations failed", file=out)
        return 1
    print("all suites pass", file=out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--p-hat", type=parse_vector, default=DEFAULT_P_HAT, help="photon direction x,y,z")
    common.add_argument("--b-hat", type=parse_vector, default=DEFAULT_B_HAT, help="boost direction x,y,z")
    common.add_argument("--v-z", type=parse_velocity, default=DEFAULT_V_Z, help="speed of the standard boost (beta or 'N km/s')")
    common.add_argument("--v-b", type=parse_velocity, default=DEFAULT_V_B, help="boost speed (beta or 'N km/s')")
    common.add_argument("--theta", type=parse_number, default=math.pi / 2, help="rotation family parameter, rad")
    common.add_argument("--ratio", type=parse_positive, default=None, help="p0/omega0 (default from v_z)")

    parser = argparse.ArgumentParser(prog="photon-wigner", description="Wigner rotation angles of photon momenta under boosts.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("eval", parents=[common], help="evaluate one configuration")
    sw = sub.add_parser("sweep", parents=[common], help="sweep one parameter and write CSV")
    sw.add_argument("--sweep", type=parse_sweep, help="var:start:stop:count[:log], var in angle_zp, v_b, theta")
    sw.add_argument("--out", help="CSV path (default stdout)")
    sw.add_argument("--svg", help="optional SVG plot path")
    ver = sub.add_parser("verify", help="run the seeded residual suites")
    ver.add_argument("--seed", type=int, default=42)
    ver.add_argument("--trials", type=int, default=1000)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.trials < 1:
        parser.error("--trials must be at least 1")
    handler = {"eval": cmd_eval, "sweep": cmd_sweep, "verify": cmd_verify}[args.command]
    return handler(args, sys.stdout)


if __name__ == "__main__":
    sys.exit(main())
