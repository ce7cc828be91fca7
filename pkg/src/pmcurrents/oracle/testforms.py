"""Compactly supported test forms for the pairing oracle.

A test form is a sum of components, each a complex-coefficient polynomial
in t, cj(t) times one radial bump per variable times a single basis
dt_K ^ dtbar_L.  The class is closed under dbar and dele: differentiating
a bump contributes t_j (resp. cj(t_j)) times the bump's dbar-factor, which
is again a component of the same shape.
"""

from __future__ import annotations

import random

from ..context import VarContext
from ..forms import insert_signed
from ..poly import Poly
from .profiles import SmoothBump, PolyBump

__all__ = ["TFComponent", "TestForm", "random_test_form"]


def _poly_diff(poly, j, conj):
    out = {}
    for (a, b), c in poly.items():
        e = b[j] if conj else a[j]
        if not e:
            continue
        na, nb = list(a), list(b)
        if conj:
            nb[j] -= 1
        else:
            na[j] -= 1
        key = (tuple(na), tuple(nb))
        out[key] = out.get(key, 0j) + c * e
    return out


def _poly_shift(poly, j, conj):
    out = {}
    for (a, b), c in poly.items():
        na, nb = list(a), list(b)
        if conj:
            nb[j] += 1
        else:
            na[j] += 1
        out[(tuple(na), tuple(nb))] = c
    return out


class TFComponent:
    __slots__ = ("poly", "profiles", "basis")

    def __init__(self, poly, profiles, basis):
        self.poly = {k: complex(c) for k, c in poly.items() if c != 0}
        self.profiles = tuple(profiles)
        self.basis = (tuple(basis[0]), tuple(basis[1]))

    def scaled(self, c):
        return TFComponent({k: v * c for k, v in self.poly.items()}, self.profiles, self.basis)

    def bidegree(self):
        K, L = self.basis
        return (len(K), len(L))


class TestForm:
    """Sum of polynomial x bump x basis components on a fixed context."""

    __test__ = False  # keep pytest from collecting this as a test class

    def __init__(self, ctx: VarContext, components):
        self.ctx = ctx
        self.components = [c for c in components if c.poly]

    # -- constructors ---------------------------------------------------

    @staticmethod
    def monomial(ctx, a, b, basis, coeff=1.0, radius=2.0, kind="smooth", order=8):
        profiles = tuple(_make_bump(radius, kind, order) for _ in range(ctx.n))
        comp = TFComponent({(tuple(a), tuple(b)): coeff}, profiles, basis)
        return TestForm(ctx, [comp])

    @staticmethod
    def from_poly(p: Poly, basis, radius=2.0, kind="smooth", order=8, profiles=None):
        ctx = p.ctx
        if profiles is None:
            profiles = tuple(_make_bump(radius, kind, order) for _ in range(ctx.n))
        poly = {(a, b): c for a, b, c in p.to_complex_terms()}
        return TestForm(ctx, [TFComponent(poly, profiles, basis)])

    # -- algebra ----------------------------------------------------------

    def __add__(self, other):
        self.ctx.check(other.ctx)
        return TestForm(self.ctx, self.components + other.components)

    def scale(self, c):
        return TestForm(self.ctx, [comp.scaled(c) for comp in self.components])

    def __neg__(self):
        return self.scale(-1.0)

    def bidegrees(self):
        return {c.bidegree() for c in self.components}

    # -- calculus -----------------------------------------------------------

    def dbar(self) -> "TestForm":
        out = []
        for comp in self.components:
            K, L = comp.basis
            for j in range(self.ctx.n):
                s, nL = insert_signed(j, L)
                if s == 0:
                    continue
                sign = s * (-1) ** len(K)
                dp = _poly_diff(comp.poly, j, conj=True)
                if dp:
                    out.append(TFComponent(
                        {k: sign * c for k, c in dp.items()}, comp.profiles, (K, nL)))
                shifted = _poly_shift(comp.poly, j, conj=False)
                profs = list(comp.profiles)
                profs[j] = profs[j].dbar_factor()
                out.append(TFComponent(
                    {k: sign * c for k, c in shifted.items()}, tuple(profs), (K, nL)))
        return TestForm(self.ctx, out)

    def dele(self) -> "TestForm":
        out = []
        for comp in self.components:
            K, L = comp.basis
            for j in range(self.ctx.n):
                s, nK = insert_signed(j, K)
                if s == 0:
                    continue
                dp = _poly_diff(comp.poly, j, conj=False)
                if dp:
                    out.append(TFComponent(
                        {k: s * c for k, c in dp.items()}, comp.profiles, (nK, L)))
                shifted = _poly_shift(comp.poly, j, conj=True)
                profs = list(comp.profiles)
                profs[j] = profs[j].dbar_factor()  # conj symmetry: same radial factor
                out.append(TFComponent(
                    {k: s * c for k, c in shifted.items()}, tuple(profs), (nK, L)))
        return TestForm(self.ctx, out)


def _make_bump(radius, kind, order):
    if kind == "smooth":
        return SmoothBump(radius)
    if kind == "poly":
        return PolyBump(radius, order)
    raise ValueError(f"unknown bump kind {kind!r}")


def random_test_form(ctx, rng: random.Random, p: int, q: int, max_deg=2,
                     kind="smooth", radius_range=(1.3, 2.1)) -> TestForm:
    """A random (p, q) test form with a couple of polynomial terms."""
    if not (0 <= p <= ctx.n and 0 <= q <= ctx.n):
        raise ValueError("bidegree out of range")
    K = tuple(sorted(rng.sample(range(ctx.n), p)))
    L = tuple(sorted(rng.sample(range(ctx.n), q)))
    poly = {}
    for _ in range(rng.randint(1, 3)):
        a = tuple(rng.randint(0, max_deg) for _ in range(ctx.n))
        b = tuple(rng.randint(0, max_deg) for _ in range(ctx.n))
        c = complex(rng.uniform(-1, 1), rng.uniform(-1, 1))
        poly[(a, b)] = poly.get((a, b), 0j) + c
    profiles = tuple(
        _make_bump(rng.uniform(*radius_range), kind, rng.randint(5, 9))
        for _ in range(ctx.n)
    )
    return TestForm(ctx, [TFComponent(poly, profiles, (K, L))])
