"""Acceptance criteria, one test per criterion.

Run with ``pytest tests/test_acceptance.py``; the terminal summary ends with
one PASS/FAIL line per criterion.
"""
import json
import math
from pathlib import Path

import numpy as np
import pytest

import accel_qed.pair as pair_mod
from accel_qed.atom import Static, builtin_atom, hydrogen_lorentz
from accel_qed.cli import ConfigError, main, parse_config, run
from accel_qed.core import CODATA_CGS as K, unruh_acceleration
from accel_qed.lamb import CutoffPolicy, comparable_acceleration, rr_shift, vf_shift
from accel_qed.pair import (
    PairConfig,
    powerlaw_exponent,
    relative_correction,
    static_vdw,
    total_interaction,
)
from accel_qed.quad import bose_occupation, coth_stable, integrate_decaying, integrate_principal_value
from accel_qed.wall import WallConfig, rr_shift_wall, vf_shift_wall

from test_wall import CUT, DAMPED, SIN2, damped, oracle, sin_squared

GOLDEN = Path(__file__).parent / "golden"
H = builtin_atom("hydrogen_1s")
HL = hydrogen_lorentz()
W0 = HL.omega0
T6 = 1e-3
A6 = math.sqrt(0.2) * K.c / T6
PV_EXP_POLE_1 = -0.6971748832350660687654786819195515953172


@pytest.mark.criterion(1, "Unruh acceleration of 1 K")
def test_c01_unruh():
    a = unruh_acceleration(1.0)
    assert 2.3e22 <= a <= 2.6e22


@pytest.mark.criterion(2, "retarded 23/4 coefficient")
def test_c02_retarded_coefficient():
    aa, ab = Static(4.5e-25), Static(1.1e-24)
    for R in (1e-5, 1e-4, 1e-3):
        expected = -23 / (4 * math.pi) * K.hbar * K.c * aa.alpha0 * ab.alpha0 / R**7
        assert static_vdw(PairConfig(R, aa, ab)) == pytest.approx(expected, rel=1e-6)


@pytest.mark.criterion(3, "London limit")
def test_c03_london():
    R = 1e-3 * K.c / W0
    expected = -0.75 * K.hbar * W0 * HL.alpha0**2 / R**6
    assert static_vdw(PairConfig(R, HL, HL)) == pytest.approx(expected, rel=5e-3)


@pytest.mark.criterion(4, "power-law exponents")
def test_c04_exponents():
    expected = {"near": (-6, -5, -6), "far": (-7, -6, -7)}
    for zone, x in (("near", 1e-3), ("far", 1e3)):
        cfg = PairConfig(x * K.c / W0, HL, HL, A6, T6)
        for term, p in zip(("static", "linear", "quadratic"), expected[zone]):
            assert powerlaw_exponent(term, cfg) == pytest.approx(p, abs=0.05), (zone, term)


@pytest.mark.criterion(5, "static limit without quadrature")
def test_c05_static_limit(monkeypatch):
    configs = [PairConfig(R, HL, HL, a, t) for R in (1e-8, 1e-6, 1e-4) for a, t in ((0.0, T6), (A6, 0.0))]
    expected = [static_vdw(c) for c in configs]
    calls = []
    real = pair_mod.integrate_decaying

    def counting(*args, **kwargs):
        calls.append(1)
        return real(*args, **kwargs)

    monkeypatch.setattr(pair_mod, "integrate_decaying", counting)
    for cfg, e in zip(configs, expected):
        b = total_interaction(cfg)
        assert b.linear_t_term == 0.0 and b.quadratic_t_term == 0.0
        assert b.total == e
    # one integral per config: the static term only
    assert len(calls) == len(configs)


@pytest.mark.criterion(6, "correction magnitudes at a^2 t^2 / c^2 = 0.2")
def test_c06_correction_magnitudes():
    near = PairConfig(1e-7, HL, HL, A6, T6)
    far = PairConfig(3e-5, HL, HL, A6, T6)
    assert near.atc2 == pytest.approx(0.2, rel=1e-12)
    r_near, r_far = relative_correction(near), relative_correction(far)
    assert 0.02 <= r_near <= 0.30
    assert 0.002 <= r_far <= 0.10
    assert r_near == pytest.approx(2 / 9 * near.atc2, rel=1e-2)


@pytest.mark.criterion(7, "radiation reaction independent of acceleration")
def test_c07_rr_acceleration_independent():
    cut = CutoffPolicy()
    ref = rr_shift(H, cut)
    for a in [0.0, *np.logspace(18, 26, 9)]:
        assert vf_shift(H, float(a), cut).rr == ref
    wall = {rr_shift_wall(H, DAMPED, WallConfig(1e-6, float(a), CUT)) for a in [0.0, *np.logspace(18, 26, 9)]}
    assert len(wall) == 1


@pytest.mark.criterion(8, "thermal part properties")
def test_c08_thermal_properties():
    assert vf_shift(H, 0.0).thermal_vf == 0.0
    lam = CutoffPolicy().value
    b1 = vf_shift(H, 1e24, CutoffPolicy(lam), with_rr=False)
    b2 = vf_shift(H, 1e24, CutoffPolicy(2 * lam), with_rr=False)
    assert abs(b2.thermal_vf - b1.thermal_vf) < 1e-8 * abs(b1.thermal_vf)
    assert abs(b2.nonthermal_a2_bose - b1.nonthermal_a2_bose) < 1e-8 * abs(b1.nonthermal_a2_bose)
    mags = [abs(vf_shift(H, float(a), with_rr=False).thermal_vf) for a in np.logspace(22, 26, 17)]
    assert all(m2 > m1 for m1, m2 in zip(mags, mags[1:]))


@pytest.mark.criterion(9, "thermal and non-thermal parts comparable in [1e23, 1e27]")
def test_c09_comparable_acceleration():
    res = comparable_acceleration(H, CutoffPolicy(), bracket=(1e23, 1e27))
    assert 1e23 <= res.acceleration <= 1e27
    assert abs(res.log_ratio) < 0.01


@pytest.mark.criterion(10, "quadrature engine")
def test_c10_quadrature():
    for coeffs, expected in (((0, 0, 0, 1), 3 / 8), ((3, 6, 5, 2, 1), 23 / 4),
                             ((2, 4, 3), 11 / 4), ((4, 8, 8, 4, -1), 27 / 4)):
        p = np.polynomial.Polynomial(coeffs)
        res = integrate_decaying(lambda x: p(x) * np.exp(-2 * x), 0.5, vectorized=True)
        assert res.value == pytest.approx(expected, rel=1e-8)
    pv = integrate_principal_value(lambda x: np.exp(-x) / (x - 1.0), 1.0, decay_scale=1.0, vectorized=True)
    assert pv.value == pytest.approx(PV_EXP_POLE_1, rel=1e-7)
    x = np.geomspace(1e-8, 50, 2001)
    np.testing.assert_allclose(coth_stable(x), 1 + 2 * bose_occupation(2 * x), rtol=1e-12)


@pytest.mark.criterion(11, "wall engine")
def test_c11_wall():
    wc = WallConfig(1e-6, 2 * math.pi * K.c * W0, CUT)
    assert vf_shift_wall(H, DAMPED, wc) == pytest.approx(oracle(damped, 1e-6, wc.a, CUT.value, "vf"), rel=1e-5)
    rc = WallConfig(1e-6, 0.0, CUT)
    assert rr_shift_wall(H, DAMPED, rc) == pytest.approx(oracle(damped, 1e-6, 0.0, CUT.value, "rr"), rel=1e-5)
    z_ref = vf_shift_wall(H, DAMPED, WallConfig(1e-6, 1e26, CUT))
    for z0 in (1e-5, 1e-4):
        assert vf_shift_wall(H, DAMPED, WallConfig(z0, 1e26, CUT)) * (z0 / 1e-6) ** 3 == pytest.approx(z_ref, rel=1e-14)
    z0, cut = K.c / W0, CutoffPolicy(50 * W0)
    v0 = vf_shift_wall(H, SIN2, WallConfig(z0, 0.0, cut))
    assert v0 == pytest.approx(oracle(sin_squared, z0, 0.0, cut.value, "vf"), rel=1e-5)
    v1 = vf_shift_wall(H, SIN2, WallConfig(z0, 1e8, cut))
    assert abs(v1 - v0) < 1e-6 * abs(v0)


@pytest.mark.criterion(12, "CLI golden files, strict schema, partial failure")
def test_c12_cli(tmp_path):
    configs = sorted(GOLDEN.glob("criterion_0[1-6]_*.json"))
    assert len(configs) == 6
    for cfg in configs:
        command = cfg.stem.split("_", 2)[2].split("-")[0]
        out = tmp_path / (cfg.stem + ".csv")
        assert main([command, "--config", str(cfg), "--out", str(out)]) == 0
        assert out.read_bytes() == (GOLDEN / (cfg.stem + ".csv")).read_bytes(), cfg.stem

    bad = {"command": "pair", "R_cm": [-1.0], "alpha_a": {"model": "static"},
           "alpha_b": {"model": "static", "alpha0_cm3": 1.0}, "R": 1.0}
    with pytest.raises(ConfigError) as info:
        parse_config(json.dumps(bad))
    text = "\n".join(info.value.errors)
    assert "R_cm/0" in text and "alpha0_cm3" in text and "'R' was unexpected" in text

    doc = {"command": "lamb", "acceleration_cm_s2": [0.0, 1e25], "cutoff_lambda_rad_s": [1e15, 1e18]}
    out = tmp_path / "partial.csv"
    assert run(parse_config(json.dumps(doc)), out=str(out)) == 2
    lines = out.read_text().splitlines()
    assert len(lines) == 5
    assert sum(",true," in ln for ln in lines) == 2
