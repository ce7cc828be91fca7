"""Differential and algebraic operators on currents.

Sign conventions: the written order of a term is
coeff * dt_I ^ dtbar_J ^ pv ^ res, with dt's, dtbar's and residue
factors all odd and pv factors even.  dbar and dele act as graded
derivations in that written order; the residue-factor rule

    dele res(t_j, m) = -m * dt_j ^ res(t_j, m+1)

realizes dele o dbar = -dbar o dele, and is pinned by the exactness
invariants together with the oracle Stokes checks.
"""

from __future__ import annotations

from .context import VarContext
from .currents import Current, normalize_parts, add
from .forms import insert_signed
from .poly import Monomial, Poly
from .scalars import QQi, ONE

__all__ = [
    "HoloVectorField",
    "dbar",
    "del_",
    "mul_monomial",
    "mul_poly",
    "contract",
    "lie",
    "coeff_extract",
    "wedge_dt_right",
]


class HoloVectorField:
    """sum_j p_j(t) d/dt_j with holomorphic polynomial components.

    Anti-holomorphic components are rejected at construction: contraction
    by them does not preserve the current class, so they are simply not
    representable.
    """

    __slots__ = ("ctx", "components")

    def __init__(self, ctx: VarContext, components):
        components = tuple(components)
        if len(components) != ctx.n:
            raise ValueError("need one component per variable")
        for p in components:
            ctx.check(p.ctx)
            if not p.is_holomorphic():
                raise ValueError("vector field components must be holomorphic")
        self.ctx = ctx
        self.components = components

    @staticmethod
    def coordinate(ctx, j: int) -> "HoloVectorField":
        comps = [Poly.zero(ctx) for _ in range(ctx.n)]
        comps[j] = Poly.constant(ctx, 1)
        return HoloVectorField(ctx, comps)

    def __repr__(self):
        return f"HoloVectorField({self.components!r})"


def dbar(tau: Current) -> Current:
    parts = []
    for t in tau.terms:
        I, J = t.basis
        # coefficient derivatives: dtbar_j enters left, crosses dt_I
        for j in range(tau.ctx.n):
            dp = t.coeff.diff_tbar(j)
            if dp.is_zero():
                continue
            s, nJ = insert_signed(j, J)
            if s == 0:
                continue
            sign = QQi.of(s * (-1) ** len(I))
            parts.append((dp, (I, nJ), t.pv, t.res, sign))
        # pv factor conversion: [1/t_j^m] -> res(t_j, m); the new residue
        # factor is born left of the res block, normalize sorts it in
        for v, m in t.pv:
            sign = QQi.of((-1) ** (len(I) + len(J)))
            new_pv = tuple(x for x in t.pv if x[0] != v)
            new_res = ((v, m),) + t.res
            parts.append((t.coeff, t.basis, new_pv, new_res, sign))
        # residue factors are dbar-closed
    return normalize_parts(tau.ctx, parts)


def del_(tau: Current) -> Current:
    parts = []
    for t in tau.terms:
        I, J = t.basis
        for j in range(tau.ctx.n):
            dp = t.coeff.diff_t(j)
            if dp.is_zero():
                continue
            s, nI = insert_signed(j, I)
            if s == 0:
                continue
            parts.append((dp, (nI, J), t.pv, t.res, QQi.of(s)))
        for v, m in t.pv:
            s, nI = insert_signed(v, I)
            if s == 0:
                continue
            new_pv = tuple((x, (p + 1 if x == v else p)) for x, p in t.pv)
            parts.append((t.coeff, (nI, J), new_pv, t.res, QQi.of(-m * s)))
        for v, m in t.res:
            s, nI = insert_signed(v, I)
            if s == 0:
                continue
            new_res = tuple((x, (p + 1 if x == v else p)) for x, p in t.res)
            parts.append((t.coeff, (nI, J), t.pv, new_res, QQi.of(-m * s)))
    return normalize_parts(tau.ctx, parts)


def mul_monomial(m: Monomial, tau: Current) -> Current:
    """t^m * tau, with all pv/res cancellations re-established."""
    m.ctx.check(tau.ctx)
    return mul_poly(m.as_poly(), tau)


def mul_poly(p: Poly, tau: Current) -> Current:
    p.ctx.check(tau.ctx)
    parts = [(p * t.coeff, t.basis, t.pv, t.res, ONE) for t in tau.terms]
    return normalize_parts(tau.ctx, parts)


def contract(xi: HoloVectorField, tau: Current) -> Current:
    """Interior product: dt_j -> p_j, dtbar_j -> 0, pv/res factors -> 0."""
    xi.ctx.check(tau.ctx)
    parts = []
    for t in tau.terms:
        I, J = t.basis
        for pos, j in enumerate(I):
            pj = xi.components[j]
            if pj.is_zero():
                continue
            sign = ONE if pos % 2 == 0 else QQi.of(-1)
            nI = tuple(x for x in I if x != j)
            parts.append((pj * t.coeff, (nI, J), t.pv, t.res, sign))
    return normalize_parts(tau.ctx, parts)


def lie(xi: HoloVectorField, tau: Current) -> Current:
    """Cartan formula against dele: L_xi = xi . dele + dele . xi."""
    return add(contract(xi, del_(tau)), del_(contract(xi, tau)))


def coeff_extract(mu: Current, I_sel) -> Current:
    """Coefficient mu_I with the sign from moving dt_I to the right.

    Satisfies  sum_I wedge_dt_right(coeff_extract(mu, I), I) = mu.
    """
    I_sel = tuple(I_sel)
    if tuple(sorted(I_sel)) != I_sel or len(set(I_sel)) != len(I_sel):
        raise ValueError("multi-index must be strictly increasing")
    parts = []
    for t in mu.terms:
        I, J = t.basis
        if I != I_sel:
            continue
        # the whole dt_I block crosses dtbar_J and the residue factors
        swaps = len(I_sel) * (len(J) + len(t.res))
        parts.append((t.coeff, ((), J), t.pv, t.res, QQi.of((-1) ** swaps)))
    return normalize_parts(mu.ctx, parts)


def wedge_dt_right(tau: Current, I_sel) -> Current:
    """tau ^ dt_I (from the right); inverse direction of coeff_extract."""
    I_sel = tuple(I_sel)
    parts = []
    for t in tau.terms:
        I, J = t.basis
        swaps = len(I_sel) * (len(J) + len(t.res))
        s, nI = _merge_right(I, I_sel)
        if s == 0:
            continue
        parts.append((t.coeff, (nI, J), t.pv, t.res, QQi.of(s * (-1) ** swaps)))
    return normalize_parts(tau.ctx, parts)


def _merge_right(I, I_new):
    from .forms import merge_signed

    return merge_signed(I, I_new)
