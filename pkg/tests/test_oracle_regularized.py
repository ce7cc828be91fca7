"""chi-regularized limits against the symbolic operations."""

import random

import pytest

from pmcurrents import (
    Current, LaurentForm, Monomial, Poly, QQi, SmoothForm, VarContext,
    asm_mul, pv_current, res_current, restrict_to, zss_of,
)
from pmcurrents.oracle import (
    ChiStep, OracleConfig, RadialWeight, RegularizationSpec, TestForm, pair,
    pair_regularized, random_test_form,
)
from pmcurrents.randgen import random_current, random_poly

CFG = OracleConfig()


def trivial_laurent(ctx):
    return LaurentForm(SmoothForm.constant(ctx, 1), Monomial.one(ctx))


def test_pv_limit_one_variable():
    # chi(|t|^2/eps)/t -> [1/t]
    ctx = VarContext(1)
    t = Monomial.var(ctx, 0)
    psi = TestForm.from_poly(
        Poly(ctx, {((1,), (0,)): QQi(1), ((0,), (1,)): QQi(0, 1)}),
        ((0,), (0,)), radius=1.6)
    rep = pair_regularized(trivial_laurent(ctx).__class__(
        SmoothForm.constant(ctx, 1), t), Current.one(ctx),
        RegularizationSpec(h=(t,)), psi, CFG)
    direct = pair(pv_current(ctx, 0, 1), psi, CFG)
    assert abs(rep.value - direct) <= max(rep.error_indicator * abs(direct), 1e-9)
    assert rep.error_indicator <= 1e-3


def test_pv_res_same_variable_limit_vanishes():
    ctx = VarContext(1)
    t = Monomial.var(ctx, 0)
    psi = TestForm.monomial(ctx, (1,), (1,), ((), ()), radius=1.5)
    rep = pair_regularized(LaurentForm.one_over(t), res_current(ctx, 0, 1),
                           RegularizationSpec(h=(t,)), psi, CFG)
    assert abs(rep.value) < 1e-12
    assert all(abs(v) < 1e-12 for v in rep.eps_values)


def test_tensor_limit_matches_symbolic():
    ctx = VarContext(2)
    t2 = Monomial.var(ctx, 1)
    a = LaurentForm.one_over(t2)
    tau = res_current(ctx, 0, 1)
    psi = TestForm.from_poly(
        Poly(ctx, {((0, 1), (0, 0)): QQi(1), ((1, 1), (0, 0)): QQi(1, 2)}),
        ((0, 1), (1,)), radius=1.5)
    rep = pair_regularized(a, tau, RegularizationSpec(h=(t2,)), psi, CFG)
    direct = pair(asm_mul(a, tau), psi, CFG)
    assert abs(rep.value - direct) / abs(direct) <= 1e-3
    assert abs(rep.value - direct) <= rep.error_indicator * abs(direct) + 1e-12


def test_restriction_limit():
    # 1_{X \ V} mu as lim chi(|f|^2/d) mu, f the variety tuple
    ctx = VarContext(2)
    t1 = Monomial.var(ctx, 0)
    mu = pv_current(ctx, 0, 1)
    psi = TestForm.from_poly(Poly(ctx, {((1, 0), (0, 0)): QQi(1)}),
                             ((0, 1), (0, 1)), radius=1.4)
    rep = pair_regularized(trivial_laurent(ctx), mu,
                           RegularizationSpec(h=(t1,)), psi, CFG)
    direct = pair(mu, psi, CFG)  # complement restriction leaves pv alone
    assert abs(rep.value - direct) / abs(direct) <= 1e-3
    # residues supported inside V die in the limit
    rep2 = pair_regularized(trivial_laurent(ctx), res_current(ctx, 0, 1),
                            RegularizationSpec(h=(t1,)),
                            TestForm.from_poly(Poly(ctx, {((1, 0), (0, 0)): QQi(1)}),
                                               ((0, 1), (1,)), radius=1.4), CFG)
    assert abs(rep2.value) < 1e-10


def test_profile_independence():
    # the limit does not depend on the chi approximand
    ctx = VarContext(1)
    t = Monomial.var(ctx, 0)
    psi = TestForm.from_poly(Poly(ctx, {((2,), (1,)): QQi(1)}), ((0,), (0,)),
                             radius=1.5)
    a = LaurentForm.one_over(t)
    r1 = pair_regularized(a, Current.one(ctx), RegularizationSpec(h=(t,)), psi, CFG)
    r2 = pair_regularized(a, Current.one(ctx),
                          RegularizationSpec(h=(t,), chi=ChiStep(order=3, lo=1.0, hi=3.0)),
                          psi, CFG)
    scale = max(abs(r1.value), 1e-12)
    assert abs(r1.value - r2.value) / scale <= 2e-3


def test_nonconstant_weight():
    # Lemma-style weight v = 1 + |t|^2/2 leaves the limit unchanged
    ctx = VarContext(1)
    t = Monomial.var(ctx, 0)
    psi = TestForm.from_poly(Poly(ctx, {((1,), (0,)): QQi(1)}), ((0,), (0,)),
                             radius=1.5)
    a = LaurentForm.one_over(t)
    v = RadialWeight(lambda rd: 1.0 + 0.5 * rd[0] ** 2, {0})
    r1 = pair_regularized(a, Current.one(ctx), RegularizationSpec(h=(t,)), psi, CFG)
    r2 = pair_regularized(a, Current.one(ctx), RegularizationSpec(h=(t,), v=v), psi, CFG)
    assert abs(r1.value - r2.value) / abs(r1.value) <= 2e-3


def test_product_extension_random_sweep():
    rng = random.Random(42)
    ctx = VarContext(2)
    nrun = 0
    while nrun < 8:
        den = Monomial(ctx, (rng.randint(0, 2), rng.randint(0, 2)))
        if den.is_constant():
            continue
        a = LaurentForm.of_poly(random_poly(ctx, rng, max_terms=2, max_deg=1), den)
        tau = random_current(ctx, rng, max_terms=2, max_pow=2, max_deg=1)
        sym = asm_mul(a, tau)
        assert restrict_to(zss_of(a), sym).is_zero()
        if sym.is_zero():
            continue
        p, q = sorted(sym.bidegrees())[0]
        psi = random_test_form(ctx, rng, ctx.n - p, ctx.n - q, max_deg=5)
        direct = pair(sym, psi, CFG)
        if abs(direct) < 1e-6:
            continue
        rep = pair_regularized(a, tau, RegularizationSpec(h=(den,)), psi, CFG)
        nrun += 1
        assert rep.error_indicator <= 1e-3
        assert abs(rep.value - direct) <= rep.error_indicator * abs(direct) + 1e-12


def test_codim2_complement_limit_tuple_h():
    # 1_{X \ {t1=t2=0}} leaves both pv and res currents alone (dimension
    # principle); h is the two-generator tuple, coupling both variables
    ctx = VarContext(2)
    t1, t2 = Monomial.var(ctx, 0), Monomial.var(ctx, 1)
    one = trivial_laurent(ctx)
    psi = TestForm.from_poly(
        Poly(ctx, {((0, 0), (0, 0)): QQi(1), ((1, 1), (0, 1)): QQi(2)}),
        ((0, 1), (1,)), radius=1.4)
    rep = pair_regularized(one, res_current(ctx, 0, 1),
                           RegularizationSpec(h=(t1, t2)), psi, CFG)
    direct = pair(res_current(ctx, 0, 1), psi, CFG)
    assert abs(rep.value - direct) <= max(rep.error_indicator * abs(direct), 1e-9)
    assert rep.error_indicator <= 2e-2
    psi2 = TestForm.from_poly(Poly(ctx, {((1, 0), (0, 0)): QQi(1)}),
                              ((0, 1), (0, 1)), radius=1.4)
    rep2 = pair_regularized(one, pv_current(ctx, 0, 1),
                            RegularizationSpec(h=(t1, t2)), psi2, CFG)
    d2 = pair(pv_current(ctx, 0, 1), psi2, CFG)
    assert abs(rep2.value - d2) / abs(d2) <= 1e-6


def test_pole_on_residue_needs_cut():
    ctx = VarContext(2)
    t1, t2 = Monomial.var(ctx, 0), Monomial.var(ctx, 1)
    psi = TestForm.monomial(ctx, (0, 0), (0, 0), ((0, 1), (1,)), radius=1.4)
    with pytest.raises(ValueError):
        pair_regularized(LaurentForm.one_over(t1), res_current(ctx, 0, 1),
                         RegularizationSpec(h=(t2,)), psi, CFG)


def test_report_json_schema():
    ctx = VarContext(1)
    t = Monomial.var(ctx, 0)
    psi = TestForm.from_poly(Poly(ctx, {((1,), (0,)): QQi(1)}), ((0,), (0,)),
                             radius=1.5)
    rep = pair_regularized(LaurentForm.one_over(t), Current.one(ctx),
                           RegularizationSpec(h=(t,)), psi, CFG)
    js = rep.to_json()
    assert set(js) >= {"value_re", "value_im", "eps_values", "extrapolated",
                       "error_indicator", "quad_points", "seconds"}
    js2 = rep.to_json(include_seconds=False)
    assert "seconds" not in js2
