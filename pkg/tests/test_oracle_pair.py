"""The pairing oracle: calibration, selection rules, Stokes duality."""

import math
import random

import numpy as np

from pmcurrents import (
    Current, Poly, QQi, VarContext, dbar, del_, normalize_parts, pv_current,
    res_current,
)
from pmcurrents.oracle import (
    OracleConfig, SmoothBump, PolyBump, TestForm, calibrate_residue_constants,
    pair, pair_report, random_test_form,
)
from pmcurrents.oracle.cauchy import taylor_coeff, default_radii
from pmcurrents.randgen import random_current

CFG = OracleConfig()
TWO_PI_I = 2j * math.pi


def test_calibration_matches_cauchy_constants():
    cfg = OracleConfig()
    consts = calibrate_residue_constants(4, cfg)
    for m, c in enumerate(consts, start=1):
        expected = TWO_PI_I / math.factorial(m - 1)
        assert abs(c - expected) / abs(expected) < 1e-6
        assert cfg.calibration_spreads[m] <= 1e-6
    # c_m / c_1 follows the 1/(m-1)! pattern
    for m in (2, 3, 4):
        ratio = consts[m - 1] / consts[0]
        assert abs(ratio - 1.0 / math.factorial(m - 1)) < 1e-6


def test_residue_pairing_point_evaluation():
    ctx = VarContext(1)
    psi = TestForm.monomial(ctx, (0,), (0,), ((0,), ()), radius=1.7)
    v = pair(res_current(ctx, 0, 1), psi, CFG)
    assert abs(v - TWO_PI_I) / abs(TWO_PI_I) < 1e-6
    # res(t,2) reads the first derivative: psi with t-linear part
    psi2 = TestForm.monomial(ctx, (1,), (0,), ((0,), ()), coeff=2.5, radius=1.4)
    v2 = pair(res_current(ctx, 0, 2), psi2, CFG)
    assert abs(v2 - 2.5 * TWO_PI_I) / abs(TWO_PI_I) < 1e-6


def test_pv_pairing_vs_riemann_sum():
    ctx = VarContext(1)
    bump = SmoothBump(1.5)
    psi = TestForm.monomial(ctx, (1,), (0,), ((0,), (0,)), coeff=0.5j, radius=1.5)
    v = pair(pv_current(ctx, 0, 1), psi, CFG)
    # <pv(t,1), t b(|t|) (i/2) dt^dtbar> = integral of b over C (Lebesgue)
    n, L = 801, 1.6
    xs = np.linspace(-L, L, n)
    X, Y = np.meshgrid(xs, xs)
    brute = np.sum(bump(np.abs(X + 1j * Y))) * (xs[1] - xs[0]) ** 2
    assert abs(v - brute) / abs(brute) < 1e-8


def test_degree_orthogonality_exact():
    ctx = VarContext(2)
    psi = TestForm.monomial(ctx, (0, 0), (0, 0), ((0,), ()), radius=1.5)
    val, flags = pair_report(res_current(ctx, 0, 1), psi, CFG)
    assert val == 0 and flags.get("degree")


def test_tensor_residue_value():
    ctx = VarContext(2)
    rr = normalize_parts(
        ctx, [(Poly.constant(ctx, 1), ((), ()), (), ((0, 1), (1, 1)), QQi(1))])
    psi = TestForm.monomial(ctx, (0, 0), (0, 0), ((0, 1), ()), radius=1.5)
    v = pair(rr, psi, CFG)
    # regularized-limit computation gives +4 pi^2 psi(0,0) = -c_1^2 psi(0,0)
    assert abs(v - 4 * math.pi**2) < 1e-7


def test_contour_taylor_spectral_on_polynomials():
    # exact for polynomial data up to machine precision
    radii = default_radii(1.0)
    for k in (0, 1, 2, 3):
        val, err = taylor_coeff(lambda t: 3.5 * t**k + 2j * t ** (k + 2), k, radii)
        assert abs(val - 3.5) < 1e-12
    val, _ = taylor_coeff(lambda t: t**2 * np.conj(t), 1, radii)
    assert abs(val) < 1e-12


def test_stokes_duality_random():
    rng = random.Random(3)
    ctx = VarContext(2)
    cfg = OracleConfig()
    tested = 0
    for _ in range(40):
        tau = random_current(ctx, rng, max_terms=2, max_pow=2, max_deg=2)
        if tau.is_zero():
            continue
        p, q = sorted(tau.bidegrees())[0]
        tau = Current(ctx, [t for t in tau.terms if t.bidegree() == (p, q)])
        d = p + q
        if 0 <= ctx.n - q - 1 <= ctx.n:
            psi = random_test_form(ctx, rng, ctx.n - p, ctx.n - q - 1, max_deg=2)
            lhs = pair(dbar(tau), psi, cfg)
            rhs = -((-1) ** d) * pair(tau, psi.dbar(), cfg)
            assert abs(lhs - rhs) <= 1e-6 * max(abs(lhs), abs(rhs), 1.0)
            tested += 1
        if 0 <= ctx.n - p - 1 <= ctx.n:
            psi = random_test_form(ctx, rng, ctx.n - p - 1, ctx.n - q, max_deg=2)
            lhs = pair(del_(tau), psi, cfg)
            rhs = -((-1) ** d) * pair(tau, psi.dele(), cfg)
            assert abs(lhs - rhs) <= 1e-6 * max(abs(lhs), abs(rhs), 1.0)
            tested += 1
    assert tested >= 30


def test_stokes_duality_three_variables():
    rng = random.Random(777)
    ctx = VarContext(3)
    cfg = OracleConfig()
    tested = 0
    for _ in range(60):
        tau = random_current(ctx, rng, max_terms=1, max_pow=2, max_deg=1)
        if tau.is_zero():
            continue
        p, q = sorted(tau.bidegrees())[0]
        tau = Current(ctx, [t for t in tau.terms if t.bidegree() == (p, q)])
        d = p + q
        if ctx.n - q - 1 < 0:
            continue
        psi = random_test_form(ctx, rng, ctx.n - p, ctx.n - q - 1, max_deg=2)
        lhs = pair(dbar(tau), psi, cfg)
        rhs = -((-1) ** d) * pair(tau, psi.dbar(), cfg)
        assert abs(lhs - rhs) <= 1e-6 * max(abs(lhs), abs(rhs), 1.0)
        tested += 1
    assert tested >= 15


def test_polybump_profile():
    b = PolyBump(1.5, 6)
    assert b.at_zero() == 1.0
    assert b(np.array([1.5, 2.0])).tolist() == [0.0, 0.0]
    db = b.dbar_factor()
    r = np.linspace(0.05, 1.4, 11)
    fd = (b(r + 1e-6) - b(r - 1e-6)) / 2e-6
    assert np.allclose(2 * r * db(r), fd, atol=1e-5)
