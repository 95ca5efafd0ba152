"""Wigner rotations of photon momenta: rotation algebra, Lorentz kinematics,
the little-group angle by matrix product and by three composed rotations,
and its spherical-triangle reading."""
from __future__ import annotations

from .errors import (
    AntipodalDirection,
    DecompositionFailure,
    DegenerateDirections,
    DegenerateTheta,
    DegenerateTriangle,
    InvalidSides,
    NonPositiveRatio,
    NotLightlike,
    OracleMismatch,
    WignerError,
    ZeroVectorError,
)
from .geom_core import (
    X_HAT,
    Y_HAT,
    Z_HAT,
    AxisAngleRotation,
    RotationFamilyBasis,
    UnitQuaternion,
    UnitVec3,
    axis_from_theta,
    quat_from_axis_angle,
    quat_product,
    rodrigues_rotate,
    rotation_family_basis,
    wigner_angle_closed_form,
)
from .lorentz import (
    C_KM_S,
    Boost,
    FourMomentum,
    LorentzMatrix,
    boost_matrix,
    embed_rotation,
    massless_boost,
    polar_decompose,
    standard_massless_boost,
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
from .wigner import (
    HelicityState,
    StandardTransformChoice,
    WignerResult,
    apply_helicity_phase,
    phi3_from_phi1,
    standard_transformation,
    wigner_angle_analytic,
    wigner_matrix_oracle,
)

__version__ = "0.1.0"
