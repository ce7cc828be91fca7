"""Restrictions, divisions, semi-meromorphic products, support checks."""

import random

import pytest

from pmcurrents import (
    CoordinateVariety, Current, LaurentForm, Monomial, Poly, QQi, SepVerdict,
    SmoothForm, SupportPreconditionError, VarContext, asm_mul, ch_product,
    contract, dbar, dbar_asm_mul, del_, dimension_check, lie,
    mul_monomial, mul_poly, normalize_parts, pv_current, pv_divide, res_current,
    residue_of, restrict_complement, restrict_to, sep_check, solve_divide,
    wedge, zss_of,
)
from pmcurrents.randgen import (
    random_current, random_laurent, random_monomial, random_smooth_form,
    random_variety, random_vector_field,
)

CTX = VarContext(2)
T1 = Monomial.var(CTX, 0)
T2 = Monomial.var(CTX, 1)
ONE = QQi(1)


def cur(coeff, basis=((), ()), pv=(), res=()):
    return normalize_parts(CTX, [(coeff, basis, tuple(pv), tuple(res), ONE)])


# ---------------------------------------------------------------- restrictions


def test_restrict_examples():
    V1 = CoordinateVariety(CTX, [T1])
    V2 = CoordinateVariety(CTX, [T2])
    V12 = CoordinateVariety(CTX, [T1 * T2])
    r1 = res_current(CTX, 0, 1)
    assert restrict_to(V1, r1) == r1
    assert restrict_to(V1, pv_current(CTX, 0, 1)).is_zero()
    assert restrict_to(V2, r1).is_zero()
    assert restrict_to(V12, r1) == r1


def test_restrict_complement_examples():
    V1 = CoordinateVariety(CTX, [T1])
    p1 = pv_current(CTX, 0, 1)
    r1 = res_current(CTX, 0, 1)
    assert restrict_complement(V1, p1) == p1
    assert restrict_complement(V1, r1).is_zero()
    assert restrict_complement(V1, p1 + r1) == p1


def test_restriction_algebra_random():
    rng = random.Random(77)
    ctx = VarContext(3)
    for _ in range(120):
        mu = random_current(ctx, rng)
        V = random_variety(ctx, rng)
        W = random_variety(ctx, rng)
        # 1_V 1_W = 1_{V cap W}
        assert restrict_to(V, restrict_to(W, mu)) == restrict_to(V.intersect(W), mu)
        # partition and idempotence
        assert restrict_to(V, mu) + restrict_complement(V, mu) == mu
        assert restrict_to(V, restrict_to(V, mu)) == restrict_to(V, mu)
        rc = restrict_complement(V, mu)
        assert restrict_complement(V, rc) == rc
        # 1_V (alpha ^ mu) = alpha ^ 1_V mu
        beta = random_smooth_form(ctx, rng, max_terms=1)
        assert restrict_to(V, wedge(beta, mu)) == wedge(beta, restrict_to(V, mu))


def test_empty_variety():
    E = CoordinateVariety.empty(CTX)
    mu = pv_current(CTX, 0, 1) + res_current(CTX, 1, 2)
    assert restrict_to(E, mu).is_zero()
    assert restrict_complement(E, mu) == mu


# ------------------------------------------------------------------- divisions


def test_pv_divide_examples():
    assert pv_divide(T1, res_current(CTX, 0, 1)).is_zero()
    assert pv_divide(T1, pv_current(CTX, 0, 1)) == pv_current(CTX, 0, 2)
    out = pv_divide(T2, res_current(CTX, 0, 1))
    assert out == cur(Poly.constant(CTX, 1), pv=[(1, 1)], res=[(0, 1)])


def test_solve_divide_examples():
    assert solve_divide(T1, res_current(CTX, 0, 1)) == res_current(CTX, 0, 2)
    assert solve_divide(T1, pv_current(CTX, 0, 2)) == pv_current(CTX, 0, 3)
    h = Monomial(CTX, (1, 2))
    x = cur(Poly.constant(CTX, 1), pv=[(1, 1)], res=[(0, 1)])
    assert solve_divide(h, x) == cur(Poly.constant(CTX, 1), pv=[(1, 3)], res=[(0, 2)])


def test_division_identities_random():
    rng = random.Random(31)
    ctx = VarContext(3)
    for _ in range(120):
        mu = random_current(ctx, rng)
        h = random_monomial(ctx, rng)
        # Round trip through the residue-raising division
        assert mul_monomial(h, solve_divide(h, mu)) == mu
        # h [1/h] mu = restriction off the zero set
        Zh = CoordinateVariety(ctx, [h])
        assert mul_monomial(h, pv_divide(h, mu)) == restrict_complement(Zh, mu)
        # no mass on the zero set
        assert restrict_to(Zh, pv_divide(h, mu)).is_zero()


# ----------------------------------------------------------------- asm products


def test_zss_examples():
    assert zss_of(LaurentForm.one_over(T1)) == CoordinateVariety(CTX, [T1])
    cancelled = LaurentForm.of_poly(Poly.var(CTX, 0), T1)
    assert zss_of(cancelled).is_empty_set
    dform = LaurentForm(SmoothForm.d(CTX, 0), T1 * T2)
    assert zss_of(dform) == CoordinateVariety(CTX, [T1 * T2])


def test_asm_mul_examples():
    out = asm_mul(LaurentForm.one_over(T2), res_current(CTX, 0, 1))
    assert out == cur(Poly.constant(CTX, 1), pv=[(1, 1)], res=[(0, 1)])
    assert asm_mul(LaurentForm.one_over(T1), res_current(CTX, 0, 1)).is_zero()


def test_nonassociativity_counterexample():
    # a1 = 1/z1, a2 = z1/z2, tau = dbar[1/z1]
    a1 = LaurentForm.one_over(T1)
    a2 = LaurentForm.of_poly(Poly.var(CTX, 0), T2)
    tau = dbar(pv_current(CTX, 0, 1))
    assert asm_mul(a2, asm_mul(a1, tau)).is_zero()
    combined = a1.wedge(a2)  # cancels to 1/z2
    assert combined.denominator == T2
    expect = cur(Poly.constant(CTX, 1), pv=[(1, 1)], res=[(0, 1)])
    assert asm_mul(combined, tau) == expect


def test_zss_kills_mass_and_restriction_commutes():
    rng = random.Random(5)
    ctx = VarContext(3)
    for _ in range(80):
        a = random_laurent(ctx, rng)
        tau = random_current(ctx, rng, max_terms=2)
        out = asm_mul(a, tau)
        assert restrict_to(zss_of(a), out).is_zero()
        W = random_variety(ctx, rng)
        assert restrict_to(W, out) == asm_mul(a, restrict_to(W, tau))


def test_graded_commutativity_through_currents():
    rng = random.Random(23)
    ctx = VarContext(3)
    for _ in range(60):
        a1 = random_laurent(ctx, rng, max_deg=1)
        a2 = random_laurent(ctx, rng, max_deg=1)
        tau = random_current(ctx, rng, max_terms=2, max_pow=2, max_deg=1)
        lhs = asm_mul(a1, asm_mul(a2, tau))
        rhs = Current.zero(ctx)
        for d1, p1 in a1.homogeneous_parts().items():
            for d2, p2 in a2.homogeneous_parts().items():
                piece = asm_mul(p2, asm_mul(p1, tau))
                if (d1 * d2) % 2:
                    piece = -piece
                rhs = rhs + piece
        assert lhs == rhs


def test_dbar_asm_examples():
    assert dbar_asm_mul(LaurentForm.one_over(T1), Current.one(CTX)) \
        == res_current(CTX, 0, 1)
    assert dbar_asm_mul(LaurentForm.one_over(T1), pv_current(CTX, 0, 1)) \
        == res_current(CTX, 0, 2)
    out = dbar_asm_mul(LaurentForm.one_over(T2), res_current(CTX, 0, 1))
    expect = cur(Poly.constant(CTX, 1), res=[(0, 1), (1, 1)])
    assert out == -expect


def test_ch_product():
    assert ch_product([T1, T2]) == cur(Poly.constant(CTX, 1), res=[(0, 1), (1, 1)])
    assert ch_product([T1, T2]) == -ch_product([T2, T1])
    assert ch_product([Monomial(CTX, (2, 0))]) == res_current(CTX, 0, 2)


def test_ch_anticommutes_random_disjoint():
    ctx = VarContext(3)
    rng = random.Random(3)
    for _ in range(30):
        vars_ = rng.sample(range(3), 2)
        f = Monomial.var(ctx, vars_[0], rng.randint(1, 2))
        g = Monomial.var(ctx, vars_[1], rng.randint(1, 2))
        assert ch_product([f, g]) == -ch_product([g, f])


def test_dbar_product_residue_smooth_split():
    # dbar(a) ^ tau = (part on zss) + (smooth dbar of a) ^ tau, exactly
    rng = random.Random(6)
    ctx = VarContext(3)
    for _ in range(60):
        a = random_laurent(ctx, rng, max_deg=1)
        if a.is_smooth() or a.is_zero():
            continue
        tau = random_current(ctx, rng, max_terms=2, max_pow=2, max_deg=1)
        full = dbar_asm_mul(a, tau)
        smooth_part = restrict_complement(zss_of(a), full)
        b = LaurentForm(a.numerator.dbar(), a.denominator)
        assert smooth_part == asm_mul(b, tau)


def test_residue_of():
    assert residue_of(LaurentForm.one_over(T1)) == res_current(CTX, 0, 1)
    a = LaurentForm.of_poly(Poly.cvar(CTX, 0), T2)
    r = residue_of(a)
    assert r == cur(Poly.cvar(CTX, 0), res=[(1, 1)])
    smooth = restrict_complement(zss_of(a), dbar(a.as_current()))
    assert smooth == cur(Poly.constant(CTX, 1), basis=((), (0,)), pv=[(1, 1)])
    const = LaurentForm(SmoothForm.constant(CTX, 1), Monomial.one(CTX))
    assert residue_of(const).is_zero()


def test_residue_smooth_part_is_laurent():
    # the complement part of dbar(a) is dbar(omega)/t^c again
    rng = random.Random(12)
    ctx = VarContext(2)
    for _ in range(40):
        a = random_laurent(ctx, rng)
        b = restrict_complement(zss_of(a), dbar(a.as_current()))
        expect = LaurentForm(a.numerator.dbar(), a.denominator).as_current()
        assert b == expect
        for t in b.terms:
            assert not t.res


# ------------------------------------------------------------------ sep and dim


def test_sep_examples():
    assert sep_check(res_current(CTX, 0, 1), [{0}]) is SepVerdict.HOLDS
    rr = cur(Poly.constant(CTX, 1), res=[(0, 1), (1, 1)])
    assert sep_check(rr, [{0}]) is SepVerdict.FAILS
    t1res2 = mul_poly(Poly.var(CTX, 0), res_current(CTX, 1, 1))
    assert sep_check(t1res2, [{1}]) is SepVerdict.HOLDS
    assert sep_check(Current.zero(CTX), [{0}]) is SepVerdict.HOLDS
    assert sep_check(pv_current(CTX, 0, 1), [{0}]) is SepVerdict.FAILS


def test_sep_stability_under_operations():
    rng = random.Random(404)
    ctx = VarContext(3)
    for _ in range(60):
        S = frozenset(rng.sample(range(3), rng.randint(1, 2)))
        parts = []
        for _k in range(rng.randint(1, 2)):
            res = tuple((v, rng.randint(1, 2)) for v in sorted(S))
            coeff = Poly.constant(ctx, QQi(rng.randint(1, 3)))
            for j in range(3):
                if j not in S and rng.random() < 0.5:
                    coeff = coeff * Poly.var(ctx, j, rng.randint(1, 2))
            parts.append((coeff, ((), ()), (), res, ONE))
        mu = normalize_parts(ctx, parts)
        if mu.is_zero():
            continue
        assert sep_check(mu, [S]) is SepVerdict.HOLDS
        assert sep_check(del_(mu), [S]) is not SepVerdict.FAILS
        a = random_laurent(ctx, rng, max_deg=1)
        assert sep_check(asm_mul(a, mu), [S]) is not SepVerdict.FAILS
        xi = random_vector_field(ctx, rng)
        assert sep_check(contract(xi, mu), [S]) is not SepVerdict.FAILS
        assert sep_check(lie(xi, mu), [S]) is not SepVerdict.FAILS
        h = random_monomial(ctx, rng)
        assert sep_check(solve_divide(h, mu), [S]) is not SepVerdict.FAILS


def test_dimension_check():
    V1 = CoordinateVariety(CTX, [T1])
    assert dimension_check(res_current(CTX, 0, 1), V1, 1)
    V12 = CoordinateVariety(CTX, [T1, T2])
    assert dimension_check(Current.zero(CTX), V12, 1)
    with pytest.raises(SupportPreconditionError):
        dimension_check(res_current(CTX, 0, 1), V12, 1)
    assert V12.codim() == 2
    assert CoordinateVariety(CTX, [T1 * T2]).codim() == 1
    ctx3 = VarContext(3)
    union = CoordinateVariety(
        ctx3, [Monomial(ctx3, (1, 1, 0)), Monomial(ctx3, (0, 1, 1))])
    assert union.codim() == 1  # {t2 = 0} lies in both generators' zero sets


def test_conjugate_annihilation_on_support():
    # h vanishing on the support: conj(h) mu = 0 termwise
    rng = random.Random(8)
    ctx = VarContext(2)
    for _ in range(40):
        mu = random_current(ctx, rng)
        for t in mu.terms:
            if not t.res:
                continue
            v = sorted(t.res_vars())[0]
            single = Current(ctx, [t])
            killed = mul_poly(Poly.cvar(ctx, v), single)
            assert killed.is_zero()
