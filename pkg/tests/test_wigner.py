from __future__ import annotations

import cmath
import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from photon_wigner.errors import AntipodalDirection, DegenerateTheta, OracleMismatch
from photon_wigner.geom_core import Z_HAT, AxisAngleRotation, UnitVec3, axis_from_theta, rodrigues_rotate, wrap_angle
from photon_wigner.lorentz import Boost, FourMomentum, beta_from_kms, boost_matrix, embed_rotation
from photon_wigner.wigner import (
    HelicityState,
    StandardTransformChoice,
    apply_helicity_phase,
    little_group_decompose,
    null_rotation,
    phi3_from_phi1,
    rotation_from_z,
    standard_transformation,
    wigner_angle_analytic,
    wigner_matrix_oracle,
)

P_HAT = UnitVec3(math.sin(math.pi / 4), 0.0, -math.cos(math.pi / 4))
B_HAT = UnitVec3(math.cos(math.pi / 4), math.sin(math.pi / 4), 0.0)
K = np.array([1.0, 0.0, 0.0, 1.0])

coords = st.floats(-1.0, 1.0, allow_nan=False)


@st.composite
def unit_vectors(draw):
    v = np.array([draw(coords), draw(coords), draw(coords)])
    assume(np.linalg.norm(v) > 0.1)
    return UnitVec3.from_array(v)


def test_choice_reduces_theta():
    assert StandardTransformChoice(2 * math.pi + 0.5).theta == pytest.approx(0.5)
    assert StandardTransformChoice(-0.5).theta == pytest.approx(2 * math.pi - 0.5)
    with pytest.raises(ValueError):
        StandardTransformChoice(omega0=0.0)


def test_rotation_from_z_special_cases():
    assert rotation_from_z(Z_HAT, 1.0).angle == 0.0
    with pytest.raises(AntipodalDirection):
        rotation_from_z(-Z_HAT, 1.0)


@given(unit_vectors(), st.floats(0.1, 10.0), st.floats(0.0, 2 * math.pi))
def test_standard_transformation_maps_k_to_p(d, ratio, theta):
    assume(d.z > -0.999)
    p = FourMomentum.from_direction(ratio, d)
    L = standard_transformation(p, StandardTransformChoice(theta))
    np.testing.assert_allclose(L.m @ K, p.array, atol=1e-12 * max(ratio, 1.0))


def test_leo_example_agrees_with_oracle():
    res = wigner_angle_analytic(Boost(B_HAT, beta_from_kms(8.0)), FourMomentum.from_direction(math.sqrt(5), P_HAT), StandardTransformChoice())
    assert res.residual <= 1e-12
    assert res.angle_signed > 0.0
    assert abs(res.angle_signed) < 1e-4


@settings(max_examples=200)
@given(unit_vectors(), unit_vectors(), st.floats(1e-6, 0.99), st.floats(0.0, 2 * math.pi), st.floats(0.1, 10.0))
def test_analytic_matches_oracle(p_hat, b_hat, vb, theta, ratio):
    assume(p_hat.z > -1 + 1e-6)
    res = wigner_angle_analytic(Boost(b_hat, vb), FourMomentum.from_direction(ratio, p_hat), StandardTransformChoice(theta), tol=np.inf)
    assume(res.momentum_out.direction.z > -1 + 1e-6)
    assert res.residual <= 1e-9
    np.testing.assert_allclose(res.matrix.m @ K, K, atol=1e-9 * max(1.0, np.abs(res.matrix.m).max()))


def test_w_splits_into_null_rotation_and_z_rotation():
    res = wigner_angle_analytic(Boost(B_HAT, 0.3), FourMomentum.from_direction(1.0, P_HAT), StandardTransformChoice(1.1))
    parts = little_group_decompose(res.matrix)
    rebuilt = null_rotation(parts.alpha, parts.beta) @ embed_rotation(AxisAngleRotation(Z_HAT, parts.angle))
    np.testing.assert_allclose(rebuilt.m, res.matrix.m, atol=1e-12)
    np.testing.assert_allclose(null_rotation(parts.alpha, parts.beta).m @ K, K, atol=1e-15)
    # the null part is not small: W is not a pure rotation
    assert math.hypot(parts.alpha, parts.beta) > 0.1


def test_rotation_factors_compose_to_z_rotation():
    res = wigner_angle_analytic(Boost(B_HAT, 0.5), FourMomentum.from_direction(2.0, P_HAT), StandardTransformChoice(0.7))
    r1, r2, r3 = res.rotations
    R = r3.matrix() @ r2.matrix() @ r1.matrix()
    np.testing.assert_allclose(R @ Z_HAT.array, Z_HAT.array, atol=1e-12)
    assert math.atan2(R[1, 0], R[0, 0]) == pytest.approx(res.angle_signed, abs=1e-12)
    np.testing.assert_allclose(rodrigues_rotate(P_HAT, r2).array, res.momentum_out.direction.array, atol=1e-12)


@pytest.mark.parametrize("ratio", [1e-3, 1.0, 1e3])
def test_frequency_independence(ratio):
    ref = wigner_angle_analytic(Boost(B_HAT, 0.4), FourMomentum.from_direction(1.0, P_HAT), StandardTransformChoice(0.9))
    res = wigner_angle_analytic(Boost(B_HAT, 0.4), FourMomentum.from_direction(ratio, P_HAT), StandardTransformChoice(0.9))
    assert abs(res.angle_signed - ref.angle_signed) < 1e-10
    assert abs(res.oracle_angle - ref.oracle_angle) < 1e-10


def test_trivial_boosts_give_zero():
    p = FourMomentum.from_direction(1.0, P_HAT)
    for boost in (Boost(B_HAT, 0.0), Boost(P_HAT, 0.7), Boost(-P_HAT, 0.7)):
        res = wigner_angle_analytic(boost, p, StandardTransformChoice(1.3))
        assert abs(res.angle_signed) <= 1e-10
        assert abs(res.oracle_angle) <= 1e-10


def test_boost_along_z_of_z_photon_is_identity():
    res = wigner_angle_analytic(Boost(Z_HAT, 0.9), FourMomentum.standard(), StandardTransformChoice())
    np.testing.assert_allclose(res.matrix.m, np.eye(4), atol=1e-12)


def test_mismatch_is_raised_when_tolerance_is_impossible():
    with pytest.raises(OracleMismatch):
        wigner_angle_analytic(Boost(B_HAT, 0.5), FourMomentum.from_direction(1.0, P_HAT), StandardTransformChoice(0.3), tol=-1.0)


def test_oracle_matrix_is_lorentz():
    lam = boost_matrix(Boost(B_HAT, 0.8))
    W = wigner_matrix_oracle(lam, FourMomentum.from_direction(3.0, P_HAT), StandardTransformChoice(2.0))
    W.validate()


def test_phi3_from_phi1_matches_shared_theta():
    zp, zlp = 0.9, 1.3
    p = UnitVec3.from_angles(zp, 0.2)
    lp = UnitVec3.from_angles(zlp, 0.2)
    for theta in (0.3, 1.0, 2.5):
        phi1 = axis_from_theta(Z_HAT, p, theta).angle
        phi3 = axis_from_theta(Z_HAT, lp, theta).angle
        assert phi3_from_phi1(phi1, zp, zlp) == pytest.approx(phi3, abs=1e-12)
    with pytest.raises(DegenerateTheta):
        phi3_from_phi1(0.0, zp, zlp)


def test_helicity_phase_pure_state():
    p = FourMomentum.from_direction(1.0, P_HAT)
    res = wigner_angle_analytic(Boost(B_HAT, 0.5), p, StandardTransformChoice())
    up = apply_helicity_phase(HelicityState(p, sigma=1), res)
    down = apply_helicity_phase(HelicityState(p, sigma=-1), res)
    assert up.phase == pytest.approx(cmath.exp(1j * res.angle_signed))
    assert down.phase == pytest.approx(cmath.exp(-1j * res.angle_signed))
    assert up.state.p == res.momentum_out
    assert up.normalization == "N(p0, Lambda)"


def test_helicity_phase_superposition():
    p = FourMomentum.from_direction(1.0, P_HAT)
    res = wigner_angle_analytic(Boost(B_HAT, 0.5), p, StandardTransformChoice())
    a = 1 / math.sqrt(2)
    up = apply_helicity_phase(HelicityState(p, amplitudes=(a, a)), res)
    a_plus, a_minus = up.state.amplitudes
    assert cmath.phase(a_plus / a_minus) == pytest.approx(wrap_angle(2 * res.angle_signed))
    assert up.relative_phase == pytest.approx(cmath.exp(2j * res.angle_signed))


def test_helicity_state_validation():
    p = FourMomentum.standard()
    with pytest.raises(ValueError):
        HelicityState(p, sigma=0)
    with pytest.raises(ValueError):
        HelicityState(p)
    with pytest.raises(ValueError):
        HelicityState(p, amplitudes=(1.0, 1.0))
