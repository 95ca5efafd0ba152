"""Acceptance gate. Each criterion is asserted at its stated tolerance and
recorded for the pass/fail summary printed at the end of the run."""
from __future__ import annotations

import math
import subprocess
import sys
import time

import numpy as np
import pytest
import scipy.linalg

from photon_wigner import checks
from photon_wigner.cli import DEFAULT_B_HAT, DEFAULT_P_HAT, DEFAULT_V_Z, Params, SweepSpec, sweep_rows
from photon_wigner.geom_core import Z_HAT, AxisAngleRotation, UnitVec3, axis_angle_from_matrix, wrap_angle
from photon_wigner.lorentz import Boost, beta_from_kms, boost_matrix, embed_rotation, polar_decompose

SEED = 20240611
TRIALS = 1000
P_HAT = UnitVec3(*DEFAULT_P_HAT)
B_HAT = UnitVec3(*DEFAULT_B_HAT)
DEFAULT_RATIO = math.sqrt((1.0 + DEFAULT_V_Z) / (1.0 - DEFAULT_V_Z))


@pytest.fixture(scope="module")
def configs():
    return checks.sample_configs(SEED, TRIALS)


@pytest.fixture(scope="module")
def results(configs):
    return [checks.wigner_angles(c.p, c.b, c.v_b, c.theta, c.ratio) for c in configs]


def test_criterion_1_oracle_equivalence(configs, criterion):
    t0 = time.perf_counter()
    residuals = [
        checks.wigner_angles(c.p, c.b, c.v_b, c.theta, c.ratio).residual for c in configs
    ]
    elapsed = time.perf_counter() - t0
    worst = max(residuals)
    ok_res = criterion("1", "analytic vs matrix oracle, 1000 configs", worst <= 1e-9, f"max residual {worst:.3e} (<= 1e-9)")
    ok_time = criterion("1", "runtime", elapsed < 5.0, f"{elapsed:.2f} s (< 5 s)")
    assert ok_res and ok_time


def test_criterion_2_w_fixes_standard_momentum(results, criterion):
    k = np.array([1.0, 0.0, 0.0, 1.0])
    worst = max(float(np.abs(r.matrix.m @ k - k).max()) for r in results)
    assert criterion("2", "||W k - k||_inf", worst <= 1e-9, f"max {worst:.3e} (<= 1e-9 omega0)")


def test_criterion_2_w_is_embedded_z_rotation(results, criterion):
    # W = S(alpha, beta) R_z(phi): the null-rotation factor is generically O(v_b)
    worst = 0.0
    for r in results:
        rz = embed_rotation(AxisAngleRotation(Z_HAT, r.oracle_angle)).m
        worst = max(worst, float(np.abs(r.matrix.m - rz).max()))
    assert criterion(
        "2", "W equals an embedded rotation about z", worst <= 1e-9, f"max entry deviation {worst:.3e} (<= 1e-9)"
    )


def test_criterion_3_frequency_independence(configs, criterion):
    worst = 0.0
    for c in configs:
        vals = [checks.wigner_angles(c.p, c.b, c.v_b, c.theta, r) for r in checks.FREQUENCY_RATIOS]
        for key in ("angle_signed", "oracle_angle"):
            a = [getattr(v, key) for v in vals]
            worst = max(worst, max(abs(wrap_angle(x - a[0])) for x in a))
    assert criterion("3", "spread over p0/omega0 in {1e-3, 1, 1e3}", worst < 1e-10, f"max spread {worst:.3e} (< 1e-10)")


def test_criterion_4_thomas_closed_form(configs, criterion):
    worst = 0.0
    worst_scipy = 0.0
    for c in configs:
        worst = max(worst, checks.thomas_residual(c.p, c.b, c.v_b, c.v_z))
        # independent route: the Lorentz polar factors are also the Euclidean left polar factors
        M = boost_matrix(Boost(c.b, c.v_b)) @ boost_matrix(Boost(c.p, c.v_z))
        U, _ = scipy.linalg.polar(M.m, side="left")
        ref = axis_angle_from_matrix(U[1:, 1:])
        _, mine = polar_decompose(M)
        worst_scipy = max(worst_scipy, float(np.abs(ref.rotation_vector() - mine.rotation_vector()).max()))
    ok = criterion("4", "closed-form axis and angle vs polar decomposition", worst <= 1e-9, f"max {worst:.3e} (<= 1e-9)")
    ok2 = criterion("4", "polar decomposition vs scipy.linalg.polar", worst_scipy <= 1e-9, f"max {worst_scipy:.3e}")
    assert ok and ok2


def test_criterion_5_spherical_excess(configs, criterion):
    literal = 0.0
    modular = 0.0
    n_literal = 0
    for c in configs:
        r = checks.wigner_angles(c.p, c.b, c.v_b, math.pi / 2, c.ratio)
        t, *excesses = checks.triangle_excesses(c.p, r.momentum_out.direction)
        for e in excesses:
            modular = max(modular, abs(wrap_angle(r.oracle_angle - t.orientation * e)))
        if max(excesses) <= math.pi:
            n_literal += 1
            literal = max(literal, max(abs(abs(r.oracle_angle) - e) for e in excesses))
    ok1 = criterion(
        "5", f"|phi_W| = E, all three formulas ({n_literal} triangles with E <= pi)", literal <= 1e-9, f"max {literal:.3e}"
    )
    ok2 = criterion("5", "phi_W = orientation * E mod 2pi, all 1000", modular <= 1e-9, f"max {modular:.3e}")
    assert ok1 and ok2


def test_criterion_6_linear_in_v_b(criterion):
    phi = [
        abs(checks.wigner_angles(P_HAT, B_HAT, beta_from_kms(v), math.pi / 2, DEFAULT_RATIO).angle_signed)
        for v in (4.0, 8.0, 16.0)
    ]
    r2, r4 = phi[1] / phi[0], phi[2] / phi[0]
    ok = abs(r2 / 2 - 1) <= 1e-3 and abs(r4 / 4 - 1) <= 1e-3
    assert criterion("6", "|phi_W| at 4:8:16 km/s", ok, f"ratios 1:{r2:.6f}:{r4:.6f} (within 0.1% of 1:2:4)")


def test_criterion_7_theta_non_uniqueness(criterion):
    prm = Params(DEFAULT_P_HAT, DEFAULT_B_HAT, DEFAULT_V_Z, beta_from_kms(8.0), math.pi / 2, DEFAULT_RATIO)
    rows = sweep_rows(SweepSpec("theta", 0.0, 2.0 * math.pi, 128), prm)
    vals = [r.phi_w for r in rows]
    ptp = max(vals) - min(vals)
    ends = abs(vals[0] - vals[-1])
    ok1 = criterion("7", "peak-to-peak over theta", ptp > 0.0, f"{ptp:.3e} (> 0)")
    ok2 = criterion("7", "2pi periodicity", ends <= 1e-10, f"|phi(0) - phi(2pi)| = {ends:.3e} (<= 1e-10)")
    assert ok1 and ok2


def test_criterion_8_collinear_and_zero_speed(criterion):
    collinear = abs(checks.wigner_angles(P_HAT, P_HAT, 0.5, math.pi / 2, DEFAULT_RATIO).angle_signed)
    anti = abs(checks.wigner_angles(P_HAT, -P_HAT, 0.5, math.pi / 2, DEFAULT_RATIO).angle_signed)
    still = abs(checks.wigner_angles(P_HAT, B_HAT, 0.0, math.pi / 2, DEFAULT_RATIO).angle_signed)
    worst = max(collinear, anti, still)
    assert criterion("8", "b parallel to p, and v_b = 0", worst <= 1e-10, f"max |phi_W| {worst:.3e} (<= 1e-10)")


def test_criterion_8_vanishing_angle_zp(criterion):
    # with p = [sin x, 0, -cos x] the angle between z and p is pi - x; 1e-3 from z is x = pi - 1e-3
    prm = Params(DEFAULT_P_HAT, DEFAULT_B_HAT, DEFAULT_V_Z, beta_from_kms(8.0), math.pi / 2, DEFAULT_RATIO)
    near, mid = sweep_rows(SweepSpec("angle_zp", math.pi / 2, math.pi - 1e-3, 2), prm)[::-1]
    ratio = abs(near.phi_w) / abs(mid.phi_w)
    assert criterion(
        "8", "|phi_W| at 1e-3 rad from z vs mid-range", ratio < 1e-4, f"ratio {ratio:.3e} (< 1e-4)"
    )


def _run(*args: str) -> bytes:
    return subprocess.run(
        [sys.executable, "-m", "photon_wigner", *args], check=True, capture_output=True
    ).stdout


def test_criterion_9_determinism(tmp_path, criterion):
    verify = [_run("verify", "--seed", "7", "--trials", "50") for _ in range(2)]
    csv = []
    svg = []
    for i in range(2):
        out, pic = tmp_path / f"s{i}.csv", tmp_path / f"s{i}.svg"
        _run("sweep", "--sweep", "v_b:4km/s:16km/s:3:log", "--out", str(out), "--svg", str(pic))
        csv.append(out.read_bytes())
        svg.append(pic.read_bytes())
    ok1 = criterion("9", "verify output byte-identical", verify[0] == verify[1], f"{len(verify[0])} bytes")
    ok2 = criterion("9", "sweep CSV byte-identical", csv[0] == csv[1], f"{len(csv[0])} bytes")
    ok3 = criterion("9", "sweep SVG byte-identical", svg[0] == svg[1], f"{len(svg[0])} bytes")
    assert ok1 and ok2 and ok3
