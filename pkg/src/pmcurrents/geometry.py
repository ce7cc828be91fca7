"""Restrictions, divisions, semi-meromorphic products and support checks.

Varieties are common zero sets of monomial tuples, so containment of an
elementary support {t_j = 0 : j in res} is decidable by pure exponent
inspection: a generator vanishes on the subspace iff it involves one of
the residue variables.
"""

from __future__ import annotations

from enum import Enum

from .calculus import dbar
from .context import VarContext
from .currents import Current, normalize_parts, wedge
from .forms import SmoothForm
from .poly import Monomial, Poly
from .scalars import ONE

__all__ = [
    "CoordinateVariety",
    "LaurentForm",
    "SepVerdict",
    "SupportPreconditionError",
    "restrict_to",
    "restrict_complement",
    "pv_divide",
    "solve_divide",
    "zss_of",
    "asm_mul",
    "dbar_asm_mul",
    "ch_product",
    "residue_of",
    "sep_check",
    "dimension_check",
]


class SupportPreconditionError(ValueError):
    """The asserted support containment fails symbolically."""


class CoordinateVariety:
    """V = {g = 0 for all generators g}, generators monomial and non-constant.

    The empty *set* (not the empty generator list) is a distinguished
    value: it absorbs intersections and contains no coordinate subspace.
    """

    __slots__ = ("ctx", "generators", "is_empty_set")

    def __init__(self, ctx: VarContext, generators, _empty=False):
        self.ctx = ctx
        self.is_empty_set = _empty
        if _empty:
            self.generators = ()
            return
        gens = []
        seen = set()
        for g in generators:
            ctx.check(g.ctx)
            if g.is_constant():
                raise ValueError("variety generators must be non-constant monomials")
            if g.exps not in seen:
                seen.add(g.exps)
                gens.append(g)
        if not gens:
            raise ValueError("a variety needs at least one generator")
        self.generators = tuple(sorted(gens, key=lambda m: m.exps))

    @staticmethod
    def empty(ctx) -> "CoordinateVariety":
        return CoordinateVariety(ctx, (), _empty=True)

    @staticmethod
    def of_vars(ctx, vars_) -> "CoordinateVariety":
        return CoordinateVariety(ctx, [Monomial.var(ctx, j) for j in sorted(vars_)])

    def contains_subspace(self, res_vars: set) -> bool:
        """Does V contain {t_j = 0 : j in res_vars}?  (res_vars empty = whole chart)."""
        if self.is_empty_set:
            return False
        return all(g.variables() & res_vars for g in self.generators)

    def intersect(self, other: "CoordinateVariety") -> "CoordinateVariety":
        self.ctx.check(other.ctx)
        if self.is_empty_set or other.is_empty_set:
            return CoordinateVariety.empty(self.ctx)
        return CoordinateVariety(self.ctx, self.generators + other.generators)

    def codim(self) -> int:
        """Codimension: smallest variable set hitting every generator."""
        if self.is_empty_set:
            return self.ctx.n + 1
        from itertools import combinations

        gen_vars = [g.variables() for g in self.generators]
        for size in range(0, self.ctx.n + 1):
            for subset in combinations(range(self.ctx.n), size):
                s = set(subset)
                if all(gv & s for gv in gen_vars):
                    return size
        return self.ctx.n

    def __eq__(self, other):
        return (
            isinstance(other, CoordinateVariety)
            and self.ctx == other.ctx
            and self.is_empty_set == other.is_empty_set
            and self.generators == other.generators
        )

    def __hash__(self):
        return hash((self.ctx, self.is_empty_set, self.generators))

    def __repr__(self):
        if self.is_empty_set:
            return "CoordinateVariety(empty set)"
        return f"V[{', '.join(str(g) for g in self.generators)}]"


class LaurentForm:
    """A smooth polynomial form divided by a monomial: omega / t^c.

    Common holomorphic powers between numerator and denominator are
    cancelled at construction, so the denominator exponents are minimal.
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: SmoothForm, denominator: Monomial):
        numerator.ctx.check(denominator.ctx)
        ctx = numerator.ctx
        if numerator.is_zero():
            self.numerator = SmoothForm.zero(ctx)
            self.denominator = Monomial.one(ctx)
            return
        den = list(denominator.exps)
        shift = [0] * ctx.n
        for j in range(ctx.n):
            if den[j] == 0:
                continue
            low = min(p.min_hol_exponent(j) for p in numerator.comps.values())
            k = min(den[j], low)
            if k:
                den[j] -= k
                shift[j] = -k
        if any(shift):
            numerator = SmoothForm(
                ctx, {b: p.shift_hol(tuple(shift)) for b, p in numerator.comps.items()}
            )
        self.numerator = numerator
        self.denominator = Monomial(ctx, den)

    @property
    def ctx(self):
        return self.numerator.ctx

    @staticmethod
    def of_poly(p: Poly, denominator: Monomial) -> "LaurentForm":
        return LaurentForm(SmoothForm.from_poly(p), denominator)

    @staticmethod
    def one_over(m: Monomial) -> "LaurentForm":
        return LaurentForm(SmoothForm.constant(m.ctx, 1), m)

    def is_zero(self) -> bool:
        return self.numerator.is_zero()

    def is_smooth(self) -> bool:
        return self.denominator.is_constant()

    def degrees(self) -> set:
        return self.numerator.degrees()

    def homogeneous_parts(self):
        return {
            d: LaurentForm(f, self.denominator)
            for d, f in self.numerator.homogeneous_parts().items()
        }

    def wedge(self, other: "LaurentForm") -> "LaurentForm":
        """The combined form (omega1 ^ omega2) / (t^c1 t^c2), recancelled."""
        return LaurentForm(
            self.numerator.wedge(other.numerator),
            self.denominator * other.denominator,
        )

    def as_current(self) -> Current:
        """The principal value current omega ^ [1/t^c]."""
        pv = tuple((j, e) for j, e in enumerate(self.denominator.exps) if e)
        return normalize_parts(
            self.ctx,
            [(p, basis, pv, (), ONE) for basis, p in self.numerator.comps.items()],
        )

    def __eq__(self, other):
        return (
            isinstance(other, LaurentForm)
            and self.numerator == other.numerator
            and self.denominator == other.denominator
        )

    def __repr__(self):
        return f"LaurentForm({self.numerator!r} / {self.denominator})"


# ----------------------------------------------------------------------
# restrictions
# ----------------------------------------------------------------------


def restrict_to(V: CoordinateVariety, mu: Current) -> Current:
    """1_V mu: keep exactly the terms whose elementary support lies in V."""
    V.ctx.check(mu.ctx)
    kept = [t for t in mu.terms if V.contains_subspace(t.res_vars())]
    return Current(mu.ctx, kept)


def restrict_complement(V: CoordinateVariety, mu: Current) -> Current:
    """1_{X \\ V} mu = mu - 1_V mu."""
    return mu - restrict_to(V, mu)


# ----------------------------------------------------------------------
# divisions
# ----------------------------------------------------------------------


def pv_divide(h: Monomial, mu: Current) -> Current:
    """[1/h] mu: the extension of (1/h) mu with no mass on {h = 0}.

    Terms whose elementary support meets {h = 0} (a residue variable of h)
    are killed; elsewhere the exponents of h join the pv factors.
    """
    h.ctx.check(mu.ctx)
    if h.is_constant():
        return mu
    hv = h.variables()
    parts = []
    for t in mu.terms:
        if hv & t.res_vars():
            continue
        pv_pw = dict(t.pv)
        for j in hv:
            pv_pw[j] = pv_pw.get(j, 0) + h.exps[j]
        parts.append((t.coeff, t.basis, tuple(pv_pw.items()), t.res, ONE))
    return normalize_parts(mu.ctx, parts)


def solve_divide(h: Monomial, mu: Current) -> Current:
    """A current mu' with h mu' = mu exactly.

    On a residue variable the residue power is raised; elsewhere this is
    pv_divide.  The round trip mul_monomial(h, solve_divide(h, mu)) == mu
    holds term by term.
    """
    h.ctx.check(mu.ctx)
    parts = []
    for t in mu.terms:
        pv_pw = dict(t.pv)
        res_pw = dict(t.res)
        for j in h.variables():
            e = h.exps[j]
            if j in res_pw:
                res_pw[j] += e
            else:
                pv_pw[j] = pv_pw.get(j, 0) + e
        parts.append((t.coeff, t.basis, tuple(pv_pw.items()), tuple(res_pw.items()), ONE))
    return normalize_parts(mu.ctx, parts)


# ----------------------------------------------------------------------
# semi-meromorphic products
# ----------------------------------------------------------------------


def zss_of(a: LaurentForm) -> CoordinateVariety:
    """Zariski-singular support: the hypersurface of the reduced denominator."""
    if a.is_zero() or a.denominator.is_constant():
        return CoordinateVariety.empty(a.ctx)
    return CoordinateVariety(a.ctx, [a.denominator.radical()])


def asm_mul(a: LaurentForm, tau: Current) -> Current:
    """The product a ^ tau with no mass on zss(a)."""
    a.ctx.check(tau.ctx)
    return wedge(a.numerator, pv_divide(a.denominator, tau))


def dbar_asm_mul(a: LaurentForm, tau: Current) -> Current:
    """dbar(a) ^ tau defined through the Leibniz rule:

        dbar(a) ^ tau = dbar(a ^ tau) - (-1)^{deg a} a ^ dbar(tau)
    """
    a.ctx.check(tau.ctx)
    out = Current.zero(tau.ctx)
    for d, part in a.homogeneous_parts().items():
        lhs = dbar(asm_mul(part, tau))
        rhs = asm_mul(part, dbar(tau))
        if d % 2 == 0:
            out = out + lhs - rhs
        else:
            out = out + lhs + rhs
    return out


def ch_product(fs) -> Current:
    """Coleff-Herrera product of dbar[1/f] factors, rightmost applied first."""
    fs = list(fs)
    if not fs:
        raise ValueError("ch_product needs at least one monomial")
    ctx = fs[0].ctx
    cur = Current.one(ctx)
    for f in reversed(fs):
        cur = dbar_asm_mul(LaurentForm.one_over(f), cur)
    return cur


def residue_of(a: LaurentForm) -> Current:
    """The part of dbar(a) carried by the singular support."""
    return restrict_to(zss_of(a), dbar(a.as_current()))


# ----------------------------------------------------------------------
# support checks
# ----------------------------------------------------------------------


class SepVerdict(Enum):
    HOLDS = "holds"
    FAILS = "fails"
    UNKNOWN = "unknown"

    def __str__(self):
        return self.value


def sep_check(mu: Current, components) -> SepVerdict:
    """Standard extension property on Z = union of coordinate subspaces.

    Each component is a set of variables cutting {t_j = 0 : j in S}.
    holds: every term sits exactly on some component.  fails: a term sits
    strictly inside a component, or outside Z, with a coefficient that is
    generically nonzero on its elementary support.  unknown: the verdict
    would rest on coefficient vanishing this representation cannot certify.
    """
    comps = [frozenset(S) for S in components]
    if mu.is_zero():
        return SepVerdict.HOLDS
    verdict = SepVerdict.HOLDS
    for t in mu.terms:
        R = frozenset(t.res_vars())
        if any(R == S for S in comps):
            continue
        # strictly inside a component, or not contained in Z at all
        generic = not t.coeff.subst_zero(set(R)).is_zero()
        if generic:
            return SepVerdict.FAILS
        verdict = SepVerdict.UNKNOWN
    return verdict


def dimension_check(mu: Current, V: CoordinateVariety, q: int) -> bool:
    """Dimension principle assertion helper.

    Caller asserts supp mu inside V and mu of anti-degree q.  True iff
    codim V <= q or mu == 0; a False return flags a calculus bug.
    """
    V.ctx.check(mu.ctx)
    if restrict_to(V, mu) != mu:
        raise SupportPreconditionError(
            "support is not contained in the given variety"
        )
    if mu.is_zero():
        return True
    return V.codim() <= q
