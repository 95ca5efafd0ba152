"""Rotation algebra on the unit sphere.

Unit vectors, axis-angle rotations, unit quaternions, and the one-parameter
family of rotations carrying one direction onto another.

Conventions: rotations are active and right-handed. An
:class:`AxisAngleRotation` always stores its angle in ``[0, pi]``; a rotation
constructed with a larger (or negative) angle is rewritten about the flipped
axis. Quaternions are ``(w, x, y, z)`` with the scalar part first.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateDirections, OracleMismatch, ZeroVectorError

UNIT_TOL = 1e-12
# Directions closer than this (norm of the cross product) are treated as parallel.
PARALLEL_TOL = 1e-12
TWO_PI = 2.0 * math.pi


def wrap_angle(angle: float) -> float:
    """Map an angle into ``(-pi, pi]``."""
    a = math.fmod(angle, TWO_PI)
    if a <= -math.pi:
        a += TWO_PI
    elif a > math.pi:
        a -= TWO_PI
    return a


def angle_between(a, b) -> float:
    """Unsigned angle between two vectors, accurate at both 0 and pi."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    return math.atan2(float(np.linalg.norm(np.cross(a, b))), float(a @ b))


@dataclass(frozen=True)
class UnitVec3:
    """A direction in space. Components are renormalized on construction."""

    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
        if not n > 0.0 or not math.isfinite(n):
            raise ZeroVectorError(f"cannot normalize ({self.x}, {self.y}, {self.z})")
        if n != 1.0:
            object.__setattr__(self, "x", self.x / n)
            object.__setattr__(self, "y", self.y / n)
            object.__setattr__(self, "z", self.z / n)

    @classmethod
    def from_array(cls, v) -> UnitVec3:
        x, y, z = (float(c) for c in v)
        return cls(x, y, z)

    @classmethod
    def from_angles(cls, polar: float, azimuth: float) -> UnitVec3:
        s = math.sin(polar)
        return cls(s * math.cos(azimuth), s * math.sin(azimuth), math.cos(polar))

    @property
    def array(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    @property
    def polar(self) -> float:
        """Angle from +z, in ``[0, pi]``."""
        return math.atan2(math.hypot(self.x, self.y), self.z)

    @property
    def azimuth(self) -> float:
        return math.atan2(self.y, self.x)

    def dot(self, other: UnitVec3) -> float:
        return self.x * other.x + self.y * other.y + self.z * other.z

    def cross(self, other: UnitVec3) -> np.ndarray:
        return np.cross(self.array, other.array)

    def __neg__(self) -> UnitVec3:
        return UnitVec3(-self.x, -self.y, -self.z)

    def __iter__(self):
        yield from (self.x, self.y, self.z)


X_HAT = UnitVec3(1.0, 0.0, 0.0)
Y_HAT = UnitVec3(0.0, 1.0, 0.0)
Z_HAT = UnitVec3(0.0, 0.0, 1.0)


def _skew(n: np.ndarray) -> np.ndarray:
    return np.array([[0.0, -n[2], n[1]], [n[2], 0.0, -n[0]], [-n[1], n[0], 0.0]])


@dataclass(frozen=True)
class AxisAngleRotation:
    axis: UnitVec3
    angle: float

    def __post_init__(self):
        a = math.fmod(float(self.angle), TWO_PI)
        if a < 0.0:
            a += TWO_PI
        if a > math.pi:
            object.__setattr__(self, "axis", -self.axis)
            a = TWO_PI - a
        object.__setattr__(self, "angle", a)

    @classmethod
    def identity(cls) -> AxisAngleRotation:
        return cls(Z_HAT, 0.0)

    def inverse(self) -> AxisAngleRotation:
        return AxisAngleRotation(-self.axis, self.angle)

    def matrix(self) -> np.ndarray:
        """3x3 rotation matrix (Rodrigues form)."""
        K = _skew(self.axis.array)
        return np.eye(3) + math.sin(self.angle) * K + (1.0 - math.cos(self.angle)) * (K @ K)

    def rotation_vector(self) -> np.ndarray:
        return self.angle * self.axis.array

    def signed_angle_about(self, reference: UnitVec3) -> float:
        """Angle in ``(-pi, pi]`` about ``reference``, using the sign of axis . reference."""
        if self.axis.dot(reference) < 0.0:
            return wrap_angle(-self.angle)
        return wrap_angle(self.angle)


@dataclass(frozen=True)
class UnitQuaternion:
    w: float
    x: float
    y: float
    z: float

    def __post_init__(self):
        n = math.sqrt(self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2)
        if not n > 0.0:
            raise ZeroVectorError("zero quaternion")
        if n != 1.0:
            for f in ("w", "x", "y", "z"):
                object.__setattr__(self, f, getattr(self, f) / n)

    @property
    def vector(self) -> np.ndarray:
        return np.array([self.x, self.y, self.z])

    def __mul__(self, other: UnitQuaternion) -> UnitQuaternion:
        return quat_product(self, other)

    def conjugate(self) -> UnitQuaternion:
        return UnitQuaternion(self.w, -self.x, -self.y, -self.z)

    def to_axis_angle(self) -> AxisAngleRotation:
        w, v = self.w, self.vector
        if w < 0.0:
            w, v = -w, -v
        s = float(np.linalg.norm(v))
        if s == 0.0:
            return AxisAngleRotation.identity()
        return AxisAngleRotation(UnitVec3.from_array(v / s), 2.0 * math.atan2(s, w))


def rodrigues_rotate(k: UnitVec3, rot: AxisAngleRotation) -> UnitVec3:
    """Rotate the direction ``k`` by ``rot``."""
    n = rot.axis.array
    kv = k.array
    c, s = math.cos(rot.angle), math.sin(rot.angle)
    out = kv * c + np.cross(n, kv) * s + n * (n @ kv) * (1.0 - c)
    return UnitVec3.from_array(out)


@dataclass(frozen=True)
class RotationFamilyBasis:
    """Orthonormal frame adapted to a pair of directions ``k -> k'``.

    ``u1`` is along ``k x k'``, ``u2`` bisects the pair and ``u3 = u1 x u2``
    points from ``k`` to ``k'``.
    """

    u1: UnitVec3
    u2: UnitVec3
    u3: UnitVec3


def rotation_family_basis(k: UnitVec3, kprime: UnitVec3) -> RotationFamilyBasis:
    a, b = k.array, kprime.array
    cross = np.cross(a, b)
    if np.linalg.norm(cross) <= PARALLEL_TOL:
        raise DegenerateDirections("k and k' are parallel or antiparallel")
    bis = a + b
    u2 = bis / np.linalg.norm(bis)
    # Project before normalizing so u1 stays orthogonal to u2 when the cross product is tiny.
    cross = cross - (cross @ u2) * u2
    u1 = cross / np.linalg.norm(cross)
    u3 = np.cross(u1, u2)
    return RotationFamilyBasis(UnitVec3.from_array(u1), UnitVec3.from_array(u2), UnitVec3.from_array(u3))


def family_angle(k: UnitVec3, kprime: UnitVec3, theta: float) -> float:
    """Rotation angle, in ``(0, 2pi)``, of the family member at ``theta``.

    Solves ``sin(theta) = tan(phi_kk'/2) / tan(phi/2)``; ``tan(phi_kk'/2)`` is
    evaluated as ``|k' - k| / |k' + k|``, which stays accurate near both ends.
    """
    a, b = k.array, kprime.array
    return 2.0 * math.atan2(float(np.linalg.norm(b - a)), float(np.linalg.norm(b + a)) * math.sin(theta))


def axis_from_theta(k: UnitVec3, kprime: UnitVec3, theta: float) -> AxisAngleRotation:
    """The rotation of the ``k -> k'`` family whose axis makes angle ``theta`` with the bisector.

    The axis is ``u2 cos(theta) + u1 sin(theta)``. At ``theta = 0`` (or ``pi``)
    this is the half-turn about the bisector; for ``sin(theta) < 0`` the angle
    exceeds pi and the stored rotation uses the flipped axis.
    """
    basis = rotation_family_basis(k, kprime)
    axis = basis.u2.array * math.cos(theta) + basis.u1.array * math.sin(theta)
    return AxisAngleRotation(UnitVec3.from_array(axis), family_angle(k, kprime, theta))


def quat_from_axis_angle(rot: AxisAngleRotation) -> UnitQuaternion:
    h = 0.5 * rot.angle
    s = math.sin(h)
    return UnitQuaternion(math.cos(h), rot.axis.x * s, rot.axis.y * s, rot.axis.z * s)


def quat_product(q2: UnitQuaternion, q1: UnitQuaternion) -> UnitQuaternion:
    """Hamilton product ``q2 q1`` (``q1`` acts first)."""
    w1, v1 = q1.w, q1.vector
    w2, v2 = q2.w, q2.vector
    w = w2 * w1 - v2 @ v1
    v = w2 * v1 + w1 * v2 + np.cross(v2, v1)
    return UnitQuaternion(float(w), *(float(c) for c in v))


def quat_from_matrix(R) -> UnitQuaternion:
    """Quaternion of a 3x3 rotation matrix (Shepperd's branch selection)."""
    R = np.asarray(R, dtype=float)
    tr = R[0, 0] + R[1, 1] + R[2, 2]
    diag = (tr, R[0, 0], R[1, 1], R[2, 2])
    i = int(np.argmax(diag))
    if i == 0:
        w = 0.5 * math.sqrt(1.0 + tr)
        f = 0.25 / w
        q = (w, (R[2, 1] - R[1, 2]) * f, (R[0, 2] - R[2, 0]) * f, (R[1, 0] - R[0, 1]) * f)
    elif i == 1:
        x = 0.5 * math.sqrt(1.0 + 2.0 * R[0, 0] - tr)
        f = 0.25 / x
        q = ((R[2, 1] - R[1, 2]) * f, x, (R[0, 1] + R[1, 0]) * f, (R[0, 2] + R[2, 0]) * f)
    elif i == 2:
        y = 0.5 * math.sqrt(1.0 + 2.0 * R[1, 1] - tr)
        f = 0.25 / y
        q = ((R[0, 2] - R[2, 0]) * f, (R[0, 1] + R[1, 0]) * f, y, (R[1, 2] + R[2, 1]) * f)
    else:
        z = 0.5 * math.sqrt(1.0 + 2.0 * R[2, 2] - tr)
        f = 0.25 / z
        q = ((R[1, 0] - R[0, 1]) * f, (R[0, 2] + R[2, 0]) * f, (R[1, 2] + R[2, 1]) * f, z)
    return UnitQuaternion(*(float(c) for c in q))


def axis_angle_from_matrix(R) -> AxisAngleRotation:
    return quat_from_matrix(R).to_axis_angle()


def three_rotation_cos_half(r1: AxisAngleRotation, r2: AxisAngleRotation, r3: AxisAngleRotation) -> float:
    """Cosine of half the angle of ``r3 r2 r1``, expanded term by term."""
    c1, s1 = math.cos(r1.angle / 2), math.sin(r1.angle / 2)
    c2, s2 = math.cos(r2.angle / 2), math.sin(r2.angle / 2)
    c3, s3 = math.cos(r3.angle / 2), math.sin(r3.angle / 2)
    n1, n2, n3 = r1.axis.array, r2.axis.array, r3.axis.array
    return float(
        c1 * c2 * c3
        - s1 * s2 * c3 * (n1 @ n2)
        - s2 * s3 * c1 * (n2 @ n3)
        - s3 * s1 * c2 * (n3 @ n1)
        - s1 * s2 * s3 * (n3 @ np.cross(n2, n1))
    )


def wigner_angle_closed_form(
    r1: AxisAngleRotation,
    r2: AxisAngleRotation,
    r3: AxisAngleRotation,
    reference: UnitVec3 = Z_HAT,
) -> float:
    """Signed angle of the composite rotation ``r3 r2 r1``.

    The half-angle cosine comes from the five-term expansion and is checked
    against the scalar part of the quaternion product; the sign is that of
    the composite vector part projected on ``reference``. Result in ``(-pi, pi]``.
    """
    cos_half = three_rotation_cos_half(r1, r2, r3)
    q = quat_product(quat_from_axis_angle(r3), quat_product(quat_from_axis_angle(r2), quat_from_axis_angle(r1)))
    if abs(q.w - cos_half) > UNIT_TOL:
        raise OracleMismatch(f"five-term expansion {cos_half!r} != quaternion scalar part {q.w!r}")
    v = q.vector
    s = float(np.linalg.norm(v))
    if v @ reference.array < 0.0:
        s = -s
    return wrap_angle(2.0 * math.atan2(s, cos_half))


def composite_axis_tan(r2: AxisAngleRotation, r1: AxisAngleRotation) -> np.ndarray:
    """``n_c tan(phi_c/2)`` for ``r2 r1`` from the two tangent half-angles.

    Undefined where the denominator vanishes (composite half-turn) and when
    either input is itself a half-turn.
    """
    t1, t2 = math.tan(r1.angle / 2), math.tan(r2.angle / 2)
    n1, n2 = r1.axis.array, r2.axis.array
    return (n2 * t2 + n1 * t1 + np.cross(n2, n1) * t2 * t1) / (1.0 - (n2 @ n1) * t2 * t1)
