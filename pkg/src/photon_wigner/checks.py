"""Seeded random configurations and the residual suites run by ``verify``.

Each configuration is evaluated by :func:`evaluate`, which is also what
``photon-wigner eval`` runs, so a failing configuration printed by ``verify``
replays to the identical residuals.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import WignerError
from .geom_core import TWO_PI, Z_HAT, UnitVec3, angle_between, wrap_angle
from .lorentz import (
    Boost,
    FourMomentum,
    boost_matrix,
    polar_decompose,
    thomas_angle,
    thomas_axis,
)
from .spherical import (
    SphericalTriangle,
    excess_from_angle_sum,
    excess_from_axes,
    lhuilier_excess,
    polar_triangle,
)
from .wigner import StandardTransformChoice, WignerResult, wigner_angle_analytic

TOL = 1e-9
FREQUENCY_TOL = 1e-10
FREQUENCY_RATIOS = (1e-3, 1.0, 1e3)
ANTIPODAL_CAP = 1e-6

SUITES = ("oracle", "frequency", "thomas", "excess")


@dataclass(frozen=True)
class Config:
    """One sampled input. Directions are kept as the raw float triples fed to ``UnitVec3``."""

    p_hat: tuple[float, float, float]
    b_hat: tuple[float, float, float]
    v_z: float
    v_b: float
    theta: float
    ratio: float

    @property
    def p(self) -> UnitVec3:
        return UnitVec3(*self.p_hat)

    @property
    def b(self) -> UnitVec3:
        return UnitVec3(*self.b_hat)

    def eval_flags(self) -> list[str]:
        """Flags that make ``photon-wigner eval`` recompute this configuration bit for bit."""
        # ``--flag=value`` keeps negative components from being read as options
        return [
            "--p-hat=" + ",".join(repr(c) for c in self.p_hat),
            "--b-hat=" + ",".join(repr(c) for c in self.b_hat),
            f"--v-z={self.v_z!r}",
            f"--v-b={self.v_b!r}",
            f"--theta={self.theta!r}",
            f"--ratio={self.ratio!r}",
        ]


def _unit_triple(rng: np.random.Generator) -> tuple[float, float, float]:
    while True:
        v = rng.standard_normal(3)
        n = float(np.linalg.norm(v))
        if n > 1e-6:
            return tuple(float(c) for c in v / n)


def sample_config(rng: np.random.Generator) -> Config:
    """Uniform directions outside the antipodal cap, theta in [0, 2pi),
    v_z in [0.01, 0.99], v_b in [1e-6, 0.99], p0/omega0 in [0.1, 10].

    Draws whose aberrated direction falls in the cap are redrawn.
    """
    while True:
        p = _unit_triple(rng)
        b = _unit_triple(rng)
        v_z = float(rng.uniform(0.01, 0.99))
        v_b = float(rng.uniform(1e-6, 0.99))
        theta = float(rng.uniform(0.0, TWO_PI))
        ratio = float(rng.uniform(0.1, 10.0))
        cfg = Config(p, b, v_z, v_b, theta, ratio)
        if 1.0 + cfg.p.z <= ANTIPODAL_CAP:
            continue
        lp = (boost_matrix(Boost(cfg.b, v_b)) @ FourMomentum.from_direction(1.0, cfg.p)).direction
        if 1.0 + lp.z <= ANTIPODAL_CAP:
            continue
        return cfg


def sample_configs(seed: int, trials: int) -> list[Config]:
    rng = np.random.default_rng(seed)
    return [sample_config(rng) for _ in range(trials)]


@dataclass(frozen=True)
class Report:
    """Residuals of one configuration; ``None`` marks a suite that does not apply."""

    config: Config
    phi_w: float
    phi_w_oracle: float
    oracle: float
    frequency: float
    thomas: float | None
    excess: float | None
    excess_value: float | None

    def residual(self, suite: str) -> float | None:
        return getattr(self, suite)

    def passes(self) -> bool:
        limits = {"oracle": TOL, "frequency": FREQUENCY_TOL, "thomas": TOL, "excess": TOL}
        return all(self.residual(s) is None or self.residual(s) <= limits[s] for s in SUITES)


def wigner_angles(p_hat: UnitVec3, b_hat: UnitVec3, v_b: float, theta: float, ratio: float) -> WignerResult:
    """Analytic and oracle angles at one point, without the agreement check."""
    return wigner_angle_analytic(
        Boost(b_hat, v_b),
        FourMomentum.from_direction(ratio, p_hat),
        StandardTransformChoice(theta),
        tol=math.inf,
    )


def thomas_residual(p_hat: UnitVec3, b_hat: UnitVec3, v_b: float, v_z: float) -> float:
    """Largest disagreement between the closed-form Thomas rotation and the polar factor."""
    M = boost_matrix(Boost(b_hat, v_b)) @ boost_matrix(Boost(p_hat, v_z))
    _, rot = polar_decompose(M)
    axis = thomas_axis(p_hat, b_hat)
    angle = thomas_angle(v_b, v_z, b_hat.dot(p_hat), float(np.linalg.norm(p_hat.cross(b_hat))))
    if max(rot.angle, angle) <= TOL:
        # within tolerance of the identity the axis is undefined; compare rotation vectors
        return float(np.abs(rot.rotation_vector() - angle * axis.array).max())
    return max(abs(rot.angle - angle), float(np.abs(rot.axis.array - axis.array).max()))


def triangle_excesses(p_hat: UnitVec3, lp_hat: UnitVec3) -> tuple[SphericalTriangle, float, float, float]:
    """Excess of ``(z, p, Λp)`` by the polar axes, the angle sum and L'Huilier."""
    t = SphericalTriangle(Z_HAT, p_hat, lp_hat)
    e_axes = excess_from_axes(*polar_triangle(t).vertices)
    e_sum = excess_from_angle_sum(t)
    e_lh = lhuilier_excess(*t.sides())
    return t, e_axes, e_sum, e_lh


def excess_residual(phi_w: float, p_hat: UnitVec3, lp_hat: UnitVec3) -> tuple[float, float]:
    """``(residual, excess)`` comparing ``phi_w`` at theta = pi/2 to the triangle excess.

    ``phi_w`` lives in ``(-pi, pi]`` and the excess in ``(0, 2pi)``, so the
    comparison is ``phi_w = orientation * E`` modulo ``2pi``.
    """
    t, *excesses = triangle_excesses(p_hat, lp_hat)
    worst = max(abs(wrap_angle(phi_w - t.orientation * e)) for e in excesses)
    return worst, excesses[1]


def evaluate(cfg: Config) -> Report:
    p_hat, b_hat = cfg.p, cfg.b
    res = wigner_angles(p_hat, b_hat, cfg.v_b, cfg.theta, cfg.ratio)

    spread = 0.0
    values = [wigner_angles(p_hat, b_hat, cfg.v_b, cfg.theta, r) for r in FREQUENCY_RATIOS]
    for key in ("angle_signed", "oracle_angle"):
        vs = [getattr(v, key) for v in values]
        spread = max(spread, max(abs(wrap_angle(a - vs[0])) for a in vs))

    try:
        thomas = thomas_residual(p_hat, b_hat, cfg.v_b, cfg.v_z)
    except WignerError:
        thomas = None

    try:
        half = wigner_angles(p_hat, b_hat, cfg.v_b, math.pi / 2, cfg.ratio)
        excess, e_value = excess_residual(half.oracle_angle, p_hat, half.momentum_out.direction)
    except WignerError:
        excess = e_value = None

    return Report(cfg, res.angle_signed, res.oracle_angle, res.residual, spread, thomas, excess, e_value)


def max_residuals(reports: list[Report]) -> dict[str, float]:
    out = {}
    for s in SUITES:
        vals = [r.residual(s) for r in reports if r.residual(s) is not None]
        out[s] = max(vals) if vals else 0.0
    return out


def angle_zp(p_hat: UnitVec3) -> float:
    return angle_between(Z_HAT.array, p_hat.array)
