"""Minkowski-space kinematics for photons.

Index order is ``(t, x, y, z)``, metric ``diag(+1, -1, -1, -1)``, ``c = 1``.
Boosts are active: :func:`boost_matrix` sends a particle at rest to one moving
with speed ``beta`` along ``direction``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DecompositionFailure, DegenerateDirections, NonPositiveRatio, NotLightlike
from .geom_core import PARALLEL_TOL, Z_HAT, AxisAngleRotation, UnitVec3, axis_angle_from_matrix

C_KM_S = 299_792.458
ETA = np.diag([1.0, -1.0, -1.0, -1.0])
LIGHTLIKE_TOL = 1e-9
METRIC_TOL = 1e-10


def beta_from_kms(v_kms: float) -> float:
    return v_kms / C_KM_S


def _one_minus_inv_gamma(beta: float) -> float:
    # (gamma - 1) / gamma without cancellation at small beta
    return beta * beta / (1.0 + math.sqrt(1.0 - beta * beta))


@dataclass(frozen=True)
class FourMomentum:
    """A photon four-momentum ``(e, px, py, pz)``; must be lightlike with ``e > 0``."""

    e: float
    px: float
    py: float
    pz: float

    def __post_init__(self):
        if not self.e > 0.0:
            raise NotLightlike(f"energy must be positive, got {self.e!r}")
        p2 = self.px ** 2 + self.py ** 2 + self.pz ** 2
        if abs(self.e ** 2 - p2) > LIGHTLIKE_TOL * self.e ** 2:
            raise NotLightlike(f"e^2 - |p|^2 = {self.e ** 2 - p2!r} for e = {self.e!r}")

    @classmethod
    def from_direction(cls, p0: float, direction: UnitVec3) -> FourMomentum:
        return cls(p0, p0 * direction.x, p0 * direction.y, p0 * direction.z)

    @classmethod
    def standard(cls, omega0: float = 1.0) -> FourMomentum:
        """``omega0 (1, 0, 0, 1)``."""
        return cls(omega0, 0.0, 0.0, omega0)

    @property
    def array(self) -> np.ndarray:
        return np.array([self.e, self.px, self.py, self.pz])

    @property
    def direction(self) -> UnitVec3:
        return UnitVec3(self.px, self.py, self.pz)


@dataclass(frozen=True)
class Boost:
    direction: UnitVec3
    beta: float

    def __post_init__(self):
        if not 0.0 <= self.beta < 1.0:
            raise ValueError(f"beta must lie in [0, 1), got {self.beta!r}")

    @property
    def gamma(self) -> float:
        return 1.0 / math.sqrt(1.0 - self.beta * self.beta)

    @property
    def rapidity(self) -> float:
        return math.atanh(self.beta)


@dataclass(frozen=True, eq=False)
class LorentzMatrix:
    """A proper orthochronous Lorentz transformation.

    Metric preservation is checked on construction, relative to the squared
    size of the entries so that large boosts are not rejected for rounding.
    """

    m: np.ndarray
    check: bool = True

    def __post_init__(self):
        m = np.array(self.m, dtype=float)
        if m.shape != (4, 4):
            raise ValueError(f"expected a 4x4 matrix, got shape {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "m", m)
        if self.check:
            self.validate()

    def validate(self, tol: float = METRIC_TOL, magnitude: float = 1.0) -> None:
        """``magnitude`` bounds the entries of the factors ``m`` was multiplied from;
        rounding in the product grows with it, not just with ``m`` itself."""
        m = self.m
        big = float(np.abs(m).max())
        scale = max(1.0, big * big, big * magnitude)
        err = float(np.abs(m.T @ ETA @ m - ETA).max())
        if err > tol * scale:
            raise ValueError(f"matrix does not preserve the metric (error {err:.3e})")
        if m[0, 0] < 1.0 - tol * scale or np.linalg.det(m) <= 0.0:
            raise ValueError("matrix is not proper orthochronous")

    @classmethod
    def identity(cls) -> LorentzMatrix:
        return cls(np.eye(4), check=False)

    def inverse(self) -> LorentzMatrix:
        return LorentzMatrix(ETA @ self.m.T @ ETA, check=False)

    def __matmul__(self, other):
        if isinstance(other, LorentzMatrix):
            return LorentzMatrix(self.m @ other.m, check=False)
        if isinstance(other, FourMomentum):
            return apply(self, other)
        return NotImplemented

    def spatial_block(self) -> np.ndarray:
        return self.m[1:, 1:]


def boost_matrix(b: Boost) -> LorentzMatrix:
    g = b.gamma
    d = b.direction.array
    m = np.eye(4)
    m[0, 0] = g
    m[0, 1:] = m[1:, 0] = g * b.beta * d
    m[1:, 1:] += (g - 1.0) * np.outer(d, d)
    return LorentzMatrix(m, check=False)


def massless_boost(ratio: float) -> Boost:
    """The z-boost that scales ``(1, 0, 0, 1)`` by ``ratio``.

    Rapidity ``ln(ratio)``; for ``ratio < 1`` the boost points along -z.
    """
    if not ratio > 0.0:
        raise NonPositiveRatio(f"p0/omega0 must be positive, got {ratio!r}")
    beta = math.tanh(math.log(ratio))
    return Boost(Z_HAT if beta >= 0.0 else -Z_HAT, abs(beta))


def standard_massless_boost(ratio: float) -> LorentzMatrix:
    if not ratio > 0.0:
        raise NonPositiveRatio(f"p0/omega0 must be positive, got {ratio!r}")
    # cosh/sinh of ln(ratio) written out to avoid the log round trip
    ch = 0.5 * (ratio + 1.0 / ratio)
    sh = 0.5 * (ratio - 1.0 / ratio)
    m = np.eye(4)
    m[0, 0] = m[3, 3] = ch
    m[0, 3] = m[3, 0] = sh
    return LorentzMatrix(m, check=False)


def embed_rotation(rot: AxisAngleRotation) -> LorentzMatrix:
    m = np.eye(4)
    m[1:, 1:] = rot.matrix()
    return LorentzMatrix(m, check=False)


def apply(M: LorentzMatrix, p: FourMomentum) -> FourMomentum:
    e, px, py, pz = (float(c) for c in M.m @ p.array)
    try:
        return FourMomentum(e, px, py, pz)
    except NotLightlike as exc:
        raise NotLightlike(f"transformed momentum is not a photon momentum: {exc}") from None


def aberrated_direction(M: LorentzMatrix, p: FourMomentum) -> UnitVec3:
    return apply(M, p).direction


def gram_eigh(M, tol: float = 1e-15, max_sweeps: int = 60):
    """Eigen-decomposition of ``M M^T`` by one-sided (Hestenes) Jacobi rotations.

    Columns of ``M^T`` are rotated pairwise until mutually orthogonal, so the
    product ``M M^T`` is never formed and its squared condition number never
    enters. Returns ``(sigma, V)`` with ``M M^T = V diag(sigma**2) V^T``. The
    rotation sequence depends only on the input, so results are reproducible
    bit for bit.
    """
    G = np.array(M, dtype=float).T.copy()
    n = G.shape[1]
    V = np.eye(n)
    for _ in range(max_sweeps):
        rotated = False
        for p in range(n - 1):
            for q in range(p + 1, n):
                a = G[:, p] @ G[:, p]
                b = G[:, q] @ G[:, q]
                g = G[:, p] @ G[:, q]
                if abs(g) <= tol * math.sqrt(a * b):
                    continue
                rotated = True
                zeta = (b - a) / (2.0 * g)
                t = math.copysign(1.0, zeta) / (abs(zeta) + math.sqrt(1.0 + zeta * zeta))
                c = 1.0 / math.sqrt(1.0 + t * t)
                s = c * t
                gp = G[:, p].copy()
                G[:, p] = c * gp - s * G[:, q]
                G[:, q] = s * gp + c * G[:, q]
                vp = V[:, p].copy()
                V[:, p] = c * vp - s * V[:, q]
                V[:, q] = s * vp + c * V[:, q]
        if not rotated:
            break
    return np.linalg.norm(G, axis=0), V


def polar_decompose(M: LorentzMatrix) -> tuple[LorentzMatrix, AxisAngleRotation]:
    """Split ``M = B R`` into a pure boost ``B`` and a spatial rotation ``R``.

    ``B`` is the symmetric positive square root of ``M M^T``.
    """
    root, V = gram_eigh(M.m)
    if np.any(root <= 0.0):
        raise DecompositionFailure(f"M M^T has non-positive eigenvalues {root ** 2}")
    B = V @ np.diag(root) @ V.T
    B = 0.5 * (B + B.T)
    # a symmetric Lorentz matrix is inverted exactly by eta B eta; 1/sqrt(lambda_min) is not accurate
    R = ETA @ B @ ETA @ M.m
    scale = max(1.0, float(np.abs(M.m).max()))
    if abs(R[0, 0] - 1.0) > 1e-9 or np.abs(R[0, 1:]).max() > 1e-9 or np.abs(R[1:, 0]).max() > 1e-9:
        raise DecompositionFailure("rotation factor mixes time and space; input is not orthochronous")
    if np.abs(B @ R - M.m).max() > METRIC_TOL * scale:
        raise DecompositionFailure("polar factors do not reproduce the input")
    return LorentzMatrix(B, check=False), axis_angle_from_matrix(R[1:, 1:])


def thomas_axis(p: UnitVec3, b: UnitVec3) -> UnitVec3:
    """Axis of the rotation produced by composing boosts along ``p`` then ``b``."""
    c = p.cross(b)
    if np.linalg.norm(c) <= PARALLEL_TOL:
        raise DegenerateDirections("boost directions are collinear")
    return UnitVec3.from_array(c)


def _check_beta(v: float) -> None:
    if not 0.0 <= v < 1.0:
        raise ValueError(f"speed must lie in [0, 1), got {v!r}")


def _angle_from_versine(eps: float) -> float:
    # phi from 1 - cos(phi) = eps, via the half angle
    return 2.0 * math.asin(math.sqrt(min(max(0.5 * eps, 0.0), 1.0)))


def _sin2(c: float, sin_bp: float | None) -> float:
    # 1 - c^2 loses all precision for nearly collinear directions; prefer |p x b|^2 when given
    if sin_bp is not None:
        return min(sin_bp * sin_bp, 1.0)
    return (1.0 - c) * (1.0 + c)


def thomas_angle(vb: float, vz: float, cos_bp: float, sin_bp: float | None = None) -> float:
    """Thomas rotation angle for a boost ``vz`` followed by a boost ``vb``.

    ``1 - cos(phi) = (gb - 1)(gz - 1)(1 - c^2) / (1 + g)`` where ``c`` is the
    cosine between the boost directions and ``g = gb gz (1 + vb vz c)`` is the
    Lorentz factor of the composed velocity. ``sin_bp``, if given, replaces
    ``sqrt(1 - c^2)``.
    """
    _check_beta(vb)
    _check_beta(vz)
    c = min(max(cos_bp, -1.0), 1.0)
    gb = 1.0 / math.sqrt(1.0 - vb * vb)
    gz = 1.0 / math.sqrt(1.0 - vz * vz)
    g = gb * gz * (1.0 + vb * vz * c)
    gb1 = gb * _one_minus_inv_gamma(vb)
    gz1 = gz * _one_minus_inv_gamma(vz)
    return _angle_from_versine(gb1 * gz1 * _sin2(c, sin_bp) / (1.0 + g))


def lightlike_thomas_angle(vb: float, cos_bp: float, sin_bp: float | None = None) -> float:
    """Limit of :func:`thomas_angle` as the inner speed tends to 1.

    ``1 - cos(phi) = (1 - 1/gb)(1 - c^2) / (1 + vb c)``. This equals the
    aberration angle between a photon direction and its image under the
    ``vb`` boost.
    """
    _check_beta(vb)
    c = min(max(cos_bp, -1.0), 1.0)
    return _angle_from_versine(_one_minus_inv_gamma(vb) * _sin2(c, sin_bp) / (1.0 + vb * c))
