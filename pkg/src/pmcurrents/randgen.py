"""Seeded random generators for currents, forms and geometry data.

Used by the property-test suites and by the CLI's rcur/rtf builtins;
everything is driven by an explicit random.Random so runs reproduce.
"""

from __future__ import annotations

import random

from .context import VarContext
from .currents import Current, normalize_parts
from .forms import SmoothForm
from .geometry import CoordinateVariety, LaurentForm
from .calculus import HoloVectorField
from .poly import Monomial, Poly
from .scalars import QQi, ONE


def random_scalar(rng: random.Random) -> QQi:
    while True:
        c = QQi(rng.randint(-3, 3), rng.randint(-2, 2))
        if not c.is_zero():
            return c


def random_poly(ctx: VarContext, rng, max_terms=2, max_deg=2, holomorphic=False,
                avoid_vars=()):
    terms = {}
    for _ in range(rng.randint(1, max_terms)):
        a = [0] * ctx.n
        b = [0] * ctx.n
        for j in range(ctx.n):
            if j in avoid_vars:
                continue
            a[j] = rng.randint(0, max_deg)
            if not holomorphic:
                b[j] = rng.randint(0, max_deg)
        key = (tuple(a), tuple(b))
        terms[key] = terms.get(key, QQi(0)) + random_scalar(rng)
    p = Poly(ctx, terms)
    return p if not p.is_zero() else Poly.constant(ctx, 1)


def random_smooth_form(ctx, rng, max_terms=2, max_deg=2):
    comps = {}
    for _ in range(rng.randint(1, max_terms)):
        I = tuple(sorted(rng.sample(range(ctx.n), rng.randint(0, min(ctx.n, 1)))))
        J = tuple(sorted(rng.sample(range(ctx.n), rng.randint(0, min(ctx.n, 1)))))
        p = random_poly(ctx, rng, max_terms=2, max_deg=max_deg)
        comps[(I, J)] = comps[(I, J)] + p if (I, J) in comps else p
    return SmoothForm(ctx, comps)


def random_current(ctx, rng, max_terms=3, max_pow=3, max_deg=3) -> Current:
    """A random normalized current with bounded powers and degrees."""
    parts = []
    for _ in range(rng.randint(1, max_terms)):
        pv, res = [], []
        for j in range(ctx.n):
            kind = rng.choice(("none", "none", "pv", "res"))
            if kind == "pv":
                pv.append((j, rng.randint(1, max_pow)))
            elif kind == "res":
                res.append((j, rng.randint(1, max_pow)))
        I = tuple(sorted(rng.sample(range(ctx.n), rng.randint(0, ctx.n))))
        Jpool = [j for j in range(ctx.n) if j not in {v for v, _ in res}]
        J = tuple(sorted(rng.sample(Jpool, rng.randint(0, len(Jpool)))))
        p = random_poly(ctx, rng, max_terms=2, max_deg=max_deg)
        parts.append((p, (I, J), tuple(pv), tuple(res), ONE))
    return normalize_parts(ctx, parts)


def random_monomial(ctx, rng, max_pow=2, nonconstant=True) -> Monomial:
    while True:
        exps = tuple(rng.randint(0, max_pow) for _ in range(ctx.n))
        if not nonconstant or any(exps):
            return Monomial(ctx, exps)


def random_variety(ctx, rng, max_gens=2) -> CoordinateVariety:
    gens = [random_monomial(ctx, rng, max_pow=1) for _ in range(rng.randint(1, max_gens))]
    return CoordinateVariety(ctx, gens)


def random_laurent(ctx, rng, max_deg=2, max_pow=2) -> LaurentForm:
    num = random_smooth_form(ctx, rng, max_terms=2, max_deg=max_deg)
    den = Monomial(ctx, tuple(rng.randint(0, max_pow) for _ in range(ctx.n)))
    return LaurentForm(num, den)


def random_vector_field(ctx, rng, max_deg=2) -> HoloVectorField:
    comps = []
    for _ in range(ctx.n):
        if rng.random() < 0.3:
            comps.append(Poly.zero(ctx))
        else:
            comps.append(random_poly(ctx, rng, max_terms=2, max_deg=max_deg, holomorphic=True))
    return HoloVectorField(ctx, comps)
