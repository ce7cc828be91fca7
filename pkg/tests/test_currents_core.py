"""Normal form of elementary currents: rewrite rules, signs, queries."""

import random

import pytest

from pmcurrents import (
    Current, MixedFactorError, Monomial, Poly, QQi, RepeatedResidueError,
    SmoothForm, VarContext, add, bidegree, const_current, elementary_support,
    equals, graded_product, mul_monomial, mul_poly, normalize, normalize_parts,
    pv_current, res_current, wedge,
)
from pmcurrents.randgen import random_current, random_smooth_form

CTX = VarContext(2)
ONE = QQi(1)


def raw(coeff, basis, pv, res, sign=1):
    return (coeff, basis, tuple(pv), tuple(res), QQi(sign))


def test_pv_cancellation():
    # t1 [1/t1^2] = [1/t1]
    out = normalize_parts(CTX, [raw(Poly.var(CTX, 0), ((), ()), [(0, 2)], [])])
    assert out == pv_current(CTX, 0, 1)
    # t1 [1/t1] = 1
    out = normalize_parts(CTX, [raw(Poly.var(CTX, 0), ((), ()), [(0, 1)], [])])
    assert out == const_current(CTX, 1)
    # t1^3 [1/t1] = t1^2
    out = normalize_parts(CTX, [raw(Poly.var(CTX, 0, 3), ((), ()), [(0, 1)], [])])
    assert out == normalize_parts(CTX, [raw(Poly.var(CTX, 0, 2), ((), ()), [], [])])


def test_residue_annihilation():
    # cj(t1) res(t1,1) = 0
    out = normalize_parts(CTX, [raw(Poly.cvar(CTX, 0), ((), ()), [], [(0, 1)])])
    assert out.is_zero()
    # t1 res(t1,1) = 0,  t1 res(t1,2) = res(t1,1)
    assert mul_monomial(Monomial.var(CTX, 0), res_current(CTX, 0, 1)).is_zero()
    assert mul_monomial(Monomial.var(CTX, 0), res_current(CTX, 0, 2)) \
        == res_current(CTX, 0, 1)
    # db(t1) ^ res(t1,1) = 0
    out = normalize_parts(CTX, [raw(Poly.constant(CTX, 1), ((), (0,)), [], [(0, 1)])])
    assert out.is_zero()


def test_mixed_factor_rejected():
    with pytest.raises(MixedFactorError):
        normalize_parts(CTX, [raw(Poly.constant(CTX, 1), ((), ()), [(0, 1)], [(0, 1)])])


def test_repeated_residue_rejected():
    with pytest.raises(RepeatedResidueError):
        normalize_parts(CTX, [raw(Poly.constant(CTX, 1), ((), ()), [], [(0, 1), (0, 2)])])


def test_pv_powers_merge():
    out = normalize_parts(CTX, [raw(Poly.constant(CTX, 1), ((), ()), [(0, 1), (0, 2)], [])])
    assert out == pv_current(CTX, 0, 3)


def test_residue_reordering_sign():
    plus = normalize_parts(CTX, [raw(Poly.constant(CTX, 1), ((), ()), [], [(0, 1), (1, 1)])])
    minus = normalize_parts(CTX, [raw(Poly.constant(CTX, 1), ((), ()), [], [(1, 1), (0, 1)])])
    assert minus == -plus
    assert equals(plus, -minus)


def test_residue_permutation_parity_s3():
    import itertools

    ctx = VarContext(3)
    base = normalize_parts(
        ctx, [(Poly.constant(ctx, 1), ((), ()), (),
               ((0, 1), (1, 2), (2, 1)), QQi(1))])
    for perm in itertools.permutations([(0, 1), (1, 2), (2, 1)]):
        out = normalize_parts(
            ctx, [(Poly.constant(ctx, 1), ((), ()), (), tuple(perm), QQi(1))])
        # parity of the variable sequence
        seq = [v for v, _ in perm]
        sign = 1
        for i in range(len(seq)):
            for j in range(i + 1, len(seq)):
                if seq[i] > seq[j]:
                    sign = -sign
        assert out == (base if sign == 1 else -base)


def test_normalize_idempotent_random():
    rng = random.Random(101)
    ctx = VarContext(3)
    for _ in range(250):
        cur = random_current(ctx, rng)
        again = normalize_parts(ctx, [(t.coeff, t.basis, t.pv, t.res, ONE)
                                      for t in cur.terms])
        assert again == cur


def test_add_group_laws():
    rng = random.Random(55)
    ctx = VarContext(3)
    zero = Current.zero(ctx)
    for _ in range(120):
        a = random_current(ctx, rng)
        b = random_current(ctx, rng)
        c = random_current(ctx, rng)
        assert add(a, b) == add(b, a)
        assert add(add(a, b), c) == add(a, add(b, c))
        assert add(a, zero) == a
        assert add(a, -a).is_zero()


def test_spec_add_example():
    # [1/t1] + t1 [1/t1^2] = 2 [1/t1]
    reduced = normalize_parts(CTX, [raw(Poly.var(CTX, 0), ((), ()), [(0, 2)], [])])
    assert add(pv_current(CTX, 0, 1), reduced) == pv_current(CTX, 0, 1).scale(2)


def test_wedge_examples():
    r1 = res_current(CTX, 0, 1)
    out = wedge(SmoothForm.d(CTX, 0), r1)
    assert len(out.terms) == 1 and out.terms[0].basis == ((0,), ())
    assert wedge(SmoothForm.from_poly(Poly.cvar(CTX, 1)), res_current(CTX, 1, 1)).is_zero()
    d1 = SmoothForm.d(CTX, 0)
    inner = wedge(d1, pv_current(CTX, 1, 1))
    assert wedge(d1, inner).is_zero()


def test_bidegree():
    assert bidegree(res_current(CTX, 0, 1)) == {(0, 1)}
    ctx3 = VarContext(3)
    two = normalize_parts(ctx3, [
        (Poly.constant(ctx3, 1), ((0,), ()), (), ((0, 1), (1, 1)), ONE)])
    assert bidegree(two) == {(1, 2)}
    mixed = add(pv_current(CTX, 0, 1), res_current(CTX, 0, 1))
    assert bidegree(mixed) == {(0, 0), (0, 1)}
    assert bidegree(Current.zero(CTX)) == set()


def test_bidegree_additivity_no_annihilation():
    rng = random.Random(7)
    ctx = VarContext(3)
    for _ in range(60):
        tau = random_current(ctx, rng, max_terms=1)
        beta = random_smooth_form(ctx, rng, max_terms=1)
        out = wedge(beta, tau)
        if out.is_zero() or tau.is_zero() or beta.is_zero():
            continue
        degs_beta = beta.degrees()
        expect = {(p + bp, q + bq) for (p, q) in bidegree(tau)
                  for (bp, bq) in degs_beta}
        assert bidegree(out) <= expect


def test_elementary_support():
    two = normalize_parts(CTX, [raw(Poly.constant(CTX, 1), ((), ()), [], [(0, 1), (1, 1)])])
    assert elementary_support(two.terms[0]) == {0, 1}
    assert elementary_support(pv_current(CTX, 0, 1).terms[0]) == set()
    ctx3 = VarContext(3)
    t = res_current(ctx3, 2, 1)
    assert elementary_support(t.terms[0]) == {2}


def test_equals_examples():
    lhs = normalize_parts(CTX, [raw(Poly.var(CTX, 0), ((), ()), [(0, 2)], [])])
    assert equals(lhs, pv_current(CTX, 0, 1))
    assert not equals(pv_current(CTX, 0, 1), pv_current(CTX, 0, 2))


def test_graded_product_collisions():
    with pytest.raises(RepeatedResidueError):
        graded_product(res_current(CTX, 0, 1), res_current(CTX, 0, 2))
    with pytest.raises(MixedFactorError):
        graded_product(res_current(CTX, 0, 1), pv_current(CTX, 0, 2))
    out = graded_product(pv_current(CTX, 0, 1), pv_current(CTX, 0, 2))
    assert out == pv_current(CTX, 0, 3)


def test_graded_product_anticommutes_residues():
    a = res_current(CTX, 0, 1)
    b = res_current(CTX, 1, 1)
    assert graded_product(a, b) == -graded_product(b, a)


def test_normalize_spec_entry():
    form = SmoothForm.from_poly(Poly.var(CTX, 0))
    out = normalize([(form, [(0, 2)], [], 1)])
    assert out == pv_current(CTX, 0, 1)


def test_mul_poly_keeps_invariants():
    rng = random.Random(9)
    ctx = VarContext(2)
    for _ in range(80):
        cur = random_current(ctx, rng)
        p = Poly.var(ctx, 0) + Poly.cvar(ctx, 1)
        out = mul_poly(p, cur)
        for t in out.terms:
            rv = t.res_vars()
            pvv = t.pv_vars()
            assert not rv & pvv
            for (a, b) in t.coeff.terms:
                for j in rv:
                    assert a[j] == 0 and b[j] == 0
                for j in pvv:
                    assert a[j] == 0
