"""Exact polynomial coefficients in t and conj(t).

A `Poly` is a finite sum of monomials c * t^a * cj(t)^b with Gaussian
rational c.  This is the model of "smooth coefficient" used throughout
the symbolic layer; genuinely smooth (bump) factors exist only on the
oracle side.
"""

from __future__ import annotations

from .context import VarContext
from .scalars import QQi, ZERO, ONE

ExpVec = tuple


def exp_add(a: ExpVec, b: ExpVec) -> ExpVec:
    return tuple(x + y for x, y in zip(a, b))


def exp_unit(n: int, j: int, k: int = 1) -> ExpVec:
    return tuple(k if i == j else 0 for i in range(n))


class Poly:
    """dict-backed polynomial: {(a, b): QQi} for t^a * cj(t)^b."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VarContext, terms=None):
        self.ctx = ctx
        clean = {}
        for key, c in (terms or {}).items():
            c = QQi.of(c)
            if not c.is_zero():
                clean[key] = clean.get(key, ZERO) + c
        self.terms = {k: v for k, v in clean.items() if not v.is_zero()}

    # -- constructors --------------------------------------------------

    @staticmethod
    def zero(ctx) -> "Poly":
        return Poly(ctx)

    @staticmethod
    def constant(ctx, c) -> "Poly":
        z = ctx.zero_exp()
        return Poly(ctx, {(z, z): QQi.of(c)})

    @staticmethod
    def var(ctx, j: int, power: int = 1) -> "Poly":
        return Poly(ctx, {(exp_unit(ctx.n, j, power), ctx.zero_exp()): ONE})

    @staticmethod
    def cvar(ctx, j: int, power: int = 1) -> "Poly":
        return Poly(ctx, {(ctx.zero_exp(), exp_unit(ctx.n, j, power)): ONE})

    @staticmethod
    def monomial(ctx, a: ExpVec, b: ExpVec, c=1) -> "Poly":
        return Poly(ctx, {(tuple(a), tuple(b)): QQi.of(c)})

    # -- ring operations ------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        self.ctx.check(other.ctx)
        out = dict(self.terms)
        for key, c in other.terms.items():
            out[key] = out.get(key, ZERO) + c
        return Poly(self.ctx, out)

    def __neg__(self):
        return Poly(self.ctx, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, QQi)):
            return self.scale(other)
        self.ctx.check(other.ctx)
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (exp_add(a1, a2), exp_add(b1, b2))
                c = c1 * c2
                out[key] = out.get(key, ZERO) + c
        return Poly(self.ctx, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Poly":
        c = QQi.of(c)
        if c.is_zero():
            return Poly.zero(self.ctx)
        return Poly(self.ctx, {k: v * c for k, v in self.terms.items()})

    def conjugate(self) -> "Poly":
        return Poly(self.ctx, {(b, a): c.conjugate() for (a, b), c in self.terms.items()})

    # -- calculus --------------------------------------------------------

    def diff_t(self, j: int) -> "Poly":
        out = {}
        for (a, b), c in self.terms.items():
            if a[j] == 0:
                continue
            na = list(a)
            na[j] -= 1
            key = (tuple(na), b)
            out[key] = out.get(key, ZERO) + c * a[j]
        return Poly(self.ctx, out)

    def diff_tbar(self, j: int) -> "Poly":
        out = {}
        for (a, b), c in self.terms.items():
            if b[j] == 0:
                continue
            nb = list(b)
            nb[j] -= 1
            key = (a, tuple(nb))
            out[key] = out.get(key, ZERO) + c * b[j]
        return Poly(self.ctx, out)

    def subst_zero(self, vars_: set) -> "Poly":
        """Set t_j = cj(t_j) = 0 for j in vars_."""
        out = {}
        for (a, b), c in self.terms.items():
            if any(a[j] or b[j] for j in vars_):
                continue
            out[(a, b)] = out.get((a, b), ZERO) + c
        return Poly(self.ctx, out)

    # -- queries ----------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_holomorphic(self) -> bool:
        return all(not any(b) for (_, b) in self.terms)

    def depends_on(self, j: int, conj: bool = None) -> bool:
        for (a, b), _ in self.terms.items():
            if conj is None and (a[j] or b[j]):
                return True
            if conj is False and a[j]:
                return True
            if conj is True and b[j]:
                return True
        return False

    def total_degree(self) -> int:
        return max((sum(a) + sum(b) for (a, b) in self.terms), default=0)

    def min_hol_exponent(self, j: int) -> int:
        """Smallest power of t_j over all monomials (for cancellation)."""
        if not self.terms:
            return 0
        return min(a[j] for (a, _b) in self.terms)

    def shift_hol(self, delta: ExpVec) -> "Poly":
        """Multiply by t^delta; negative entries must cancel exactly."""
        out = {}
        for (a, b), c in self.terms.items():
            na = tuple(x + d for x, d in zip(a, delta))
            if any(x < 0 for x in na):
                raise ValueError("negative exponent in shift_hol")
            out[(na, b)] = c
        return Poly(self.ctx, out)

    def __eq__(self, other):
        return isinstance(other, Poly) and self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, tuple(sorted(self.terms.items(), key=lambda kv: kv[0]))))

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda kv: kv[0])

    def to_complex_terms(self):
        """Exact terms converted to machine complex, for the oracle."""
        return [(a, b, c.to_complex()) for (a, b), c in self.sorted_terms()]

    def __repr__(self):
        return f"Poly({self.terms!r})"


class Monomial:
    """A holomorphic monomial t^a with unit coefficient."""

    __slots__ = ("ctx", "exps")

    def __init__(self, ctx: VarContext, exps):
        exps = tuple(exps)
        if len(exps) != ctx.n or any(e < 0 or not isinstance(e, int) for e in exps):
            raise ValueError("monomial exponents must be non-negative integers")
        self.ctx = ctx
        self.exps = exps

    @staticmethod
    def one(ctx) -> "Monomial":
        return Monomial(ctx, ctx.zero_exp())

    @staticmethod
    def var(ctx, j: int, k: int = 1) -> "Monomial":
        return Monomial(ctx, exp_unit(ctx.n, j, k))

    def __mul__(self, other: "Monomial") -> "Monomial":
        self.ctx.check(other.ctx)
        return Monomial(self.ctx, exp_add(self.exps, other.exps))

    def is_constant(self) -> bool:
        return not any(self.exps)

    def variables(self) -> set:
        return {j for j, e in enumerate(self.exps) if e}

    def total_degree(self) -> int:
        return sum(self.exps)

    def as_poly(self) -> Poly:
        return Poly.monomial(self.ctx, self.exps, self.ctx.zero_exp())

    def radical(self) -> "Monomial":
        return Monomial(self.ctx, tuple(1 if e else 0 for e in self.exps))

    def __eq__(self, other):
        return isinstance(other, Monomial) and self.ctx == other.ctx and self.exps == other.exps

    def __hash__(self):
        return hash((self.ctx, self.exps))

    def __repr__(self):
        return f"Monomial({self.exps})"

    def __str__(self):
        parts = []
        for j, e in enumerate(self.exps):
            if e == 1:
                parts.append(self.ctx.name(j))
            elif e > 1:
                parts.append(f"{self.ctx.name(j)}**{e}")
        return "*".join(parts) if parts else "1"
