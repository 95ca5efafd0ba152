"""Spherical triangles on the unit sphere: polar triangles and three routes to the excess."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateTriangle, InvalidSides
from .geom_core import PARALLEL_TOL, UnitVec3, angle_between

VOLUME_TOL = 1e-12


def _check_pairs(vs) -> None:
    for i in range(3):
        a, b = vs[i].array, vs[(i + 1) % 3].array
        if np.linalg.norm(np.cross(a, b)) <= PARALLEL_TOL:
            raise DegenerateTriangle(f"vertices {i + 1} and {(i + 1) % 3 + 1} are (anti)parallel")


@dataclass(frozen=True)
class SphericalTriangle:
    v1: UnitVec3
    v2: UnitVec3
    v3: UnitVec3

    def __post_init__(self):
        _check_pairs(self.vertices)
        if abs(self.triple_product) <= VOLUME_TOL:
            raise DegenerateTriangle("vertices lie on a great circle")

    @property
    def vertices(self) -> tuple[UnitVec3, UnitVec3, UnitVec3]:
        return (self.v1, self.v2, self.v3)

    @property
    def triple_product(self) -> float:
        return float(self.v1.array @ np.cross(self.v2.array, self.v3.array))

    @property
    def orientation(self) -> int:
        """+1 when ``v1 -> v2 -> v3`` runs counter-clockwise seen from outside."""
        return 1 if self.triple_product > 0.0 else -1

    def sides(self) -> tuple[float, float, float]:
        """Arc lengths ``(v1v2, v2v3, v3v1)``."""
        v = [x.array for x in self.vertices]
        return (angle_between(v[0], v[1]), angle_between(v[1], v[2]), angle_between(v[2], v[0]))

    def interior_angles(self) -> tuple[float, float, float]:
        v = [x.array for x in self.vertices]
        out = []
        for i in range(3):
            a, b, c = v[i], v[(i + 1) % 3], v[(i + 2) % 3]
            # angle between the great circles a-b and a-c, measured at a
            out.append(angle_between(np.cross(a, b), np.cross(a, c)))
        return tuple(out)


def polar_triangle(t: SphericalTriangle) -> SphericalTriangle:
    """Poles ``s (v1 x v2)``, ``s (v2 x v3)``, ``s (v3 x v1)``, normalized, with ``s`` the orientation.

    Each pole lies on the same side of its great circle as the opposite vertex,
    which makes the construction an involution up to a cyclic relabelling.
    """
    v = [x.array for x in t.vertices]
    s = t.orientation
    return SphericalTriangle(*(UnitVec3.from_array(s * np.cross(v[i], v[(i + 1) % 3])) for i in range(3)))


def excess_from_axes(n1: UnitVec3, n2: UnitVec3, n3: UnitVec3) -> float:
    """Excess of the triangle whose polar vertices (side poles) are ``n1, n2, n3``.

    Each interior angle is the supplement of the arc between two poles.
    """
    ns = (n1, n2, n3)
    _check_pairs(ns)
    total = 0.0
    for i in range(3):
        total += math.pi - angle_between(ns[i].array, ns[(i + 1) % 3].array)
    return total - math.pi


def excess_from_angle_sum(t: SphericalTriangle) -> float:
    return sum(t.interior_angles()) - math.pi


def lhuilier_excess(a: float, b: float, c: float, tol: float = 1e-12) -> float:
    """Excess from the three side arc lengths (radians)."""
    for side in (a, b, c):
        if not 0.0 < side < math.pi:
            raise InvalidSides(f"side {side!r} outside (0, pi)")
    if a > b + c + tol or b > a + c + tol or c > a + b + tol or a + b + c > 2.0 * math.pi + tol:
        raise InvalidSides(f"({a}, {b}, {c}) violate the spherical triangle inequalities")
    s = 0.5 * (a + b + c)
    prod = math.tan(0.5 * s) * math.tan(0.5 * (s - a)) * math.tan(0.5 * (s - b)) * math.tan(0.5 * (s - c))
    if prod < -tol:
        raise InvalidSides(f"negative L'Huilier product {prod!r}")
    return 4.0 * math.atan(math.sqrt(max(prod, 0.0)))


def signed_excess(t: SphericalTriangle) -> float:
    """Angle-sum excess carrying the orientation sign of ``t``."""
    return t.orientation * excess_from_angle_sum(t)
