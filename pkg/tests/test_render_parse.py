"""Canonical rendering and the expression grammar."""

import random

import pytest

from pmcurrents import (
    Current, Poly, QQi, VarContext, normalize_parts, pv_current,
    res_current, render,
)
from pmcurrents.cli import Session
from pmcurrents.parser import EvalError, Evaluator, ParseError, Parser
from pmcurrents.randgen import random_current


def make_eval(dim=2, seed=0):
    s = Session(dim=dim, seed=seed)
    return s, Evaluator(s)


def test_render_examples():
    ctx = VarContext(2)
    assert render(res_current(ctx, 0, 2)) == "res(t1,2)"
    assert render(Current.zero(ctx)) == "0"
    prod = normalize_parts(
        ctx, [(Poly.constant(ctx, 1), ((), ()), ((0, 1),), ((1, 1),), QQi(-1))])
    assert render(prod) == "-(pv(t1,1)^res(t2,1))"


def test_render_styles():
    ctx = VarContext(2)
    x = normalize_parts(
        ctx, [(Poly.var(ctx, 0), ((0,), (1,)), ((1, 2),), ((0, 1),), QQi(1))])
    # the t1 coefficient is eaten by the residue factor: res(t1,1) absorbs t1
    y = pv_current(ctx, 0, 2) + res_current(ctx, 1, 1)
    assert "[1/t" in render(y, "unicode")
    assert "\\frac{1}{t_{1}" in render(y, "latex")
    with pytest.raises(ValueError):
        render(y, "html")


def test_roundtrip_random():
    s, ev = make_eval(dim=3, seed=11)
    rng = random.Random(99)
    for _ in range(250):
        tau = random_current(s.ctx, rng)
        text = render(tau)
        back = ev.eval(Parser(text).parse())
        assert back == tau, text


def test_parse_operator_application():
    s, ev = make_eval()
    out = ev.eval(Parser("dbar(pv(t1,1))").parse())
    assert out == res_current(s.ctx, 0, 1)


def test_parse_errors():
    s, ev = make_eval()
    with pytest.raises(ParseError):
        Parser("pv(t1,").parse()
    with pytest.raises(ParseError) as ei:
        Parser("dbar(pv(t1,1)) @").parse()
    assert "column" in str(ei.value)
    with pytest.raises(EvalError):
        ev.eval(Parser("pv(t1,0)").parse())
    with pytest.raises(EvalError):
        ev.eval(Parser("res(t1,1)^res(t1,2)").parse())
    with pytest.raises(EvalError):
        ev.eval(Parser("pv(t9,1)").parse())
    with pytest.raises(EvalError):
        ev.eval(Parser("dbar(pv(t1,1), pv(t2,1))").parse())
    with pytest.raises(EvalError):
        ev.eval(Parser("nosuchfn(t1)").parse())


def test_scalar_literals():
    from fractions import Fraction

    s, ev = make_eval()
    val = ev.eval(Parser("(1/2 + 3*i) * t1").parse())
    (a, b), c = val.terms[0].coeff.sorted_terms()[0]
    assert a == (1, 0) and b == (0, 0)
    assert c == QQi(Fraction(1, 2), 3)


def test_wedge_and_power_sugar():
    s, ev = make_eval()
    assert ev.eval(Parser("t1**2").parse()) == \
        ev.eval(Parser("t1*t1").parse())
    assert ev.eval(Parser("d(t1)^d(t1)").parse()).is_zero()
    a = ev.eval(Parser("pv(t1,1)^pv(t1,2)").parse())
    assert a == pv_current(s.ctx, 0, 3)
