"""Little-group (Wigner) rotations of photon momenta.

The standard momentum is ``k = omega0 (1, 0, 0, 1)``. A standard transformation
``L(p) = R(z -> p) B_z(p0/omega0)`` uses the rotation of the ``z -> p`` family
selected by ``theta``; the same ``theta`` is used for every momentum.

Two independent routes give the Wigner angle:

* the matrix product ``W = L(Λp)^-1 Λ L(p)`` (:func:`wigner_matrix_oracle`);
* the composition of three axis-angle rotations ``z -> p``, ``p -> Λp`` and
  ``Λp -> z`` (:func:`wigner_angle_analytic`).

For a photon, ``W`` is in general a rotation about ``z`` followed by a null
rotation (a "translation" of the little group), ``W = S(alpha, beta) R_z(phi)``.
Only ``phi`` enters the helicity phase; :func:`little_group_decompose` returns
all three parameters.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import AntipodalDirection, DegenerateTheta, OracleMismatch
from .geom_core import (
    PARALLEL_TOL,
    TWO_PI,
    Z_HAT,
    AxisAngleRotation,
    UnitVec3,
    axis_from_theta,
    wigner_angle_closed_form,
    wrap_angle,
)
from .lorentz import (
    Boost,
    FourMomentum,
    LorentzMatrix,
    apply,
    boost_matrix,
    embed_rotation,
    lightlike_thomas_angle,
    standard_massless_boost,
    thomas_axis,
)

ANTIPODAL_TOL = 1e-10
AGREEMENT_TOL = 1e-9


@dataclass(frozen=True)
class StandardTransformChoice:
    """Family parameter ``theta`` (reduced into ``[0, 2pi)``) and reference frequency."""

    theta: float = math.pi / 2
    omega0: float = 1.0

    def __post_init__(self):
        if not self.omega0 > 0.0:
            raise ValueError(f"omega0 must be positive, got {self.omega0!r}")
        t = math.fmod(float(self.theta), TWO_PI)
        if t < 0.0:
            t += TWO_PI
        object.__setattr__(self, "theta", t)

    @property
    def standard_momentum(self) -> FourMomentum:
        return FourMomentum.standard(self.omega0)


def rotation_from_z(direction: UnitVec3, theta: float) -> AxisAngleRotation:
    """The member of the ``z -> direction`` rotation family selected by ``theta``."""
    zdot = direction.z
    if zdot <= -1.0 + ANTIPODAL_TOL:
        raise AntipodalDirection(f"direction {tuple(direction)} is antipodal to +z")
    if math.hypot(direction.x, direction.y) <= PARALLEL_TOL:
        return AxisAngleRotation.identity()
    return axis_from_theta(Z_HAT, direction, theta)


def standard_transformation(p: FourMomentum, choice: StandardTransformChoice) -> LorentzMatrix:
    rot = rotation_from_z(p.direction, choice.theta)
    return embed_rotation(rot) @ standard_massless_boost(p.e / choice.omega0)


def wigner_matrix_oracle(lam: LorentzMatrix, p: FourMomentum, choice: StandardTransformChoice) -> LorentzMatrix:
    """``W = L(Λp)^-1 Λ L(p)`` by explicit 4x4 products."""
    lp = apply(lam, p)
    factors = (standard_transformation(lp, choice).inverse(), lam, standard_transformation(p, choice))
    W = factors[0] @ factors[1] @ factors[2]
    W.validate(magnitude=math.prod(float(np.abs(f.m).max()) for f in factors))
    return W


@dataclass(frozen=True)
class LittleGroupParts:
    """``W = S(alpha, beta) R_z(angle)``."""

    angle: float
    alpha: float
    beta: float


def little_group_decompose(W: LorentzMatrix) -> LittleGroupParts:
    """Rotation angle about ``+z`` and null-rotation parameters of a little-group element.

    The transverse ``(x, y)`` block of a null rotation is the identity, so the
    angle is read from the transverse block of ``W``.
    """
    m = W.m
    angle = math.atan2(m[2, 1], m[1, 1])
    S = m @ embed_rotation(AxisAngleRotation(Z_HAT, -angle)).m
    return LittleGroupParts(angle, float(S[1, 0]), float(S[2, 0]))


def null_rotation(alpha: float, beta: float) -> LorentzMatrix:
    """The null rotation ``S(alpha, beta)`` that fixes ``(1, 0, 0, 1)``."""
    zeta = 0.5 * (alpha * alpha + beta * beta)
    m = np.array(
        [
            [1.0 + zeta, alpha, beta, -zeta],
            [alpha, 1.0, 0.0, -alpha],
            [beta, 0.0, 1.0, -beta],
            [zeta, alpha, beta, 1.0 - zeta],
        ]
    )
    return LorentzMatrix(m, check=False)


def oracle_angle(W: LorentzMatrix) -> float:
    return little_group_decompose(W).angle


@dataclass(frozen=True, eq=False)
class WignerResult:
    """Outcome of :func:`wigner_angle_analytic`.

    ``matrix`` is the oracle product ``W``; ``angle_signed`` is the closed-form
    angle about ``axis`` (always ``+z``), which agrees with ``oracle_angle``.
    ``rotations`` are the three factors ``(n1, phi1)``, ``(n2, phi2)``,
    ``(n3, phi3)`` applied in that order.
    """

    matrix: LorentzMatrix
    axis: UnitVec3
    angle_signed: float
    rotations: tuple[AxisAngleRotation, AxisAngleRotation, AxisAngleRotation]
    oracle_angle: float
    momentum_in: FourMomentum
    momentum_out: FourMomentum

    @property
    def residual(self) -> float:
        return abs(wrap_angle(self.angle_signed - self.oracle_angle))

    @property
    def parts(self) -> LittleGroupParts:
        return little_group_decompose(self.matrix)


def wigner_angle_analytic(
    boost: Boost,
    p: FourMomentum,
    choice: StandardTransformChoice,
    tol: float = AGREEMENT_TOL,
) -> WignerResult:
    """Wigner angle of a pure boost acting on a photon, from three rotations.

    The middle rotation carries ``p`` onto ``Λp`` about ``p x b``; its angle
    is the lightlike limit of the Thomas formula, so the result does not depend
    on ``p0``. The oracle matrix is computed alongside and the two angles must
    agree within ``tol``; otherwise :class:`OracleMismatch` is raised.
    """
    lam = boost_matrix(boost)
    p_out = apply(lam, p)
    p_hat, lp_hat, b_hat = p.direction, p_out.direction, boost.direction

    r1 = rotation_from_z(p_hat, choice.theta)
    sin_bp = float(np.linalg.norm(p_hat.cross(b_hat)))
    if boost.beta == 0.0 or sin_bp <= PARALLEL_TOL:
        r2 = AxisAngleRotation.identity()
    else:
        angle = lightlike_thomas_angle(boost.beta, b_hat.dot(p_hat), sin_bp)
        r2 = AxisAngleRotation(thomas_axis(p_hat, b_hat), angle)
    r3 = rotation_from_z(lp_hat, choice.theta).inverse()
    angle = wigner_angle_closed_form(r1, r2, r3, Z_HAT)

    W = wigner_matrix_oracle(lam, p, choice)
    result = WignerResult(W, Z_HAT, angle, (r1, r2, r3), oracle_angle(W), p, p_out)
    if result.residual > tol:
        raise OracleMismatch(
            f"closed form {angle!r} vs matrix oracle {result.oracle_angle!r} (residual {result.residual:.3e})"
        )
    return result


def phi3_from_phi1(phi1: float, angle_zp: float, angle_zLp: float) -> float:
    """Angle of the ``z -> Λp`` family member sharing the axis parameter of ``phi1``.

    From ``tan(phi1/2) / tan(phi3/2) = tan(angle_zp/2) / tan(angle_zLp/2)``.
    ``phi1`` may lie anywhere in ``(0, 2pi)``; the result has the same branch.
    """
    h = 0.5 * phi1
    ta, tb = math.tan(0.5 * angle_zp), math.tan(0.5 * angle_zLp)
    if math.sin(h) == 0.0 or not ta > 0.0 or not tb > 0.0:
        raise DegenerateTheta("vanishing tangent in the half-angle relation")
    sin_theta = ta * math.cos(h) / math.sin(h)
    return 2.0 * math.atan2(tb, sin_theta)


NORMALIZATION_SYMBOL = "N(p0, Lambda)"


@dataclass(frozen=True)
class HelicityState:
    """Either a pure helicity ``sigma = +-1`` or amplitudes ``(a_plus, a_minus)``."""

    p: FourMomentum
    sigma: int | None = None
    amplitudes: tuple[complex, complex] | None = None

    def __post_init__(self):
        if (self.sigma is None) == (self.amplitudes is None):
            raise ValueError("give exactly one of sigma or amplitudes")
        if self.sigma is not None and self.sigma not in (1, -1):
            raise ValueError(f"photon helicity must be +1 or -1, got {self.sigma!r}")
        if self.amplitudes is not None:
            a, b = self.amplitudes
            if abs(abs(a) ** 2 + abs(b) ** 2 - 1.0) > 1e-12:
                raise ValueError("helicity amplitudes are not normalized")


@dataclass(frozen=True)
class HelicityUpdate:
    """Transformed state and the phases picked up, up to the unspecified normalization."""

    state: HelicityState
    phase: complex | None
    relative_phase: complex
    normalization: str = NORMALIZATION_SYMBOL


def apply_helicity_phase(state: HelicityState, w: WignerResult) -> HelicityUpdate:
    if np.abs(state.p.array - w.momentum_in.array).max() > 1e-12 * state.p.e:
        raise ValueError("state momentum does not match the momentum of the Wigner result")
    phi = w.angle_signed
    if state.sigma is not None:
        phase = cmath.exp(1j * state.sigma * phi)
        return HelicityUpdate(HelicityState(w.momentum_out, sigma=state.sigma), phase, cmath.exp(2j * phi))
    a, b = state.amplitudes
    new = (a * cmath.exp(1j * phi), b * cmath.exp(-1j * phi))
    return HelicityUpdate(HelicityState(w.momentum_out, amplitudes=new), None, cmath.exp(2j * phi))
