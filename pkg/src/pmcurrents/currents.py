"""Canonical normal form for elementary currents on a chart.

A term is  coeff * dt_I ^ dtbar_J ^ (pv factors) ^ (res factors), where
pv(t_j, m) stands for the principal value [1/t_j^m] and res(t_j, m) for
dbar[1/t_j^m].  Construction rewrites eagerly:

  * t_j * pv(t_j, m)  ->  pv(t_j, m-1)        (pv(t_j, 0) = 1)
  * t_j * res(t_j, m) ->  res(t_j, m-1)       (res(t_j, 0) = 0)
  * cj(t_j) * res(t_j, m) = 0,   dtbar_j ^ res(t_j, m) = 0
  * residue factors anticommute and are stored sorted by variable,
    principal value factors commute and merge by adding powers.

A same-variable pv * res product has no preferred meaning (the two
divisions differ there) and is rejected at construction.
"""

from __future__ import annotations

from .context import VarContext
from .forms import Basis, SmoothForm, merge_signed, sort_signed
from .poly import Poly
from .scalars import QQi, ONE

__all__ = [
    "Term",
    "Current",
    "NormalizeError",
    "MixedFactorError",
    "RepeatedResidueError",
    "normalize",
    "normalize_parts",
    "add",
    "wedge",
    "bidegree",
    "elementary_support",
    "equals",
    "pv_current",
    "res_current",
    "const_current",
    "smooth_current",
]


class NormalizeError(ValueError):
    pass


class MixedFactorError(NormalizeError):
    """Same variable carries both a pv and a residue factor."""


class RepeatedResidueError(NormalizeError):
    """Same variable appears in two residue factors."""


class Term:
    """One normalized elementary term."""

    __slots__ = ("coeff", "basis", "pv", "res")

    def __init__(self, coeff: Poly, basis: Basis, pv: tuple, res: tuple):
        self.coeff = coeff
        self.basis = (tuple(basis[0]), tuple(basis[1]))
        self.pv = tuple(sorted(pv))
        self.res = tuple(sorted(res))

    @property
    def ctx(self):
        return self.coeff.ctx

    def signature(self):
        return (self.res, self.pv, self.basis)

    def sort_key(self):
        rv = tuple(v for v, _ in self.res)
        pvv = tuple(v for v, _ in self.pv)
        return (rv, self.res, pvv, self.pv, self.basis)

    def pv_vars(self) -> set:
        return {v for v, _ in self.pv}

    def res_vars(self) -> set:
        return {v for v, _ in self.res}

    def bidegree(self):
        I, J = self.basis
        return (len(I), len(J) + len(self.res))

    def form(self) -> SmoothForm:
        return SmoothForm(self.ctx, {self.basis: self.coeff})

    def scale(self, c) -> "Term":
        return Term(self.coeff.scale(c), self.basis, self.pv, self.res)

    def __eq__(self, other):
        return (
            isinstance(other, Term)
            and self.signature() == other.signature()
            and self.coeff == other.coeff
        )

    def __hash__(self):
        return hash((self.signature(), self.coeff))

    def __repr__(self):
        return f"Term(coeff={self.coeff!r}, basis={self.basis}, pv={self.pv}, res={self.res})"


class Current:
    """A normalized, canonically ordered sum of elementary terms."""

    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: VarContext, terms=()):
        self.ctx = ctx
        self.terms = tuple(terms)

    @staticmethod
    def zero(ctx) -> "Current":
        return Current(ctx)

    @staticmethod
    def one(ctx) -> "Current":
        return const_current(ctx, 1)

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "Current") -> "Current":
        return add(self, other)

    def __neg__(self):
        return Current(self.ctx, tuple(t.scale(QQi(-1)) for t in self.terms))

    def __sub__(self, other):
        return add(self, -other)

    def scale(self, c) -> "Current":
        c = QQi.of(c)
        if c.is_zero():
            return Current.zero(self.ctx)
        return Current(self.ctx, tuple(t.scale(c) for t in self.terms))

    def __eq__(self, other):
        return equals(self, other) if isinstance(other, Current) else NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.terms))

    def bidegrees(self) -> set:
        return bidegree(self)

    def raw(self):
        """Terms as raw tuples suitable for re-normalization."""
        return [(t.coeff, t.basis, t.pv, t.res, ONE) for t in self.terms]

    def __repr__(self):
        return f"Current({self.terms!r})"

    def __str__(self):
        from .render import render

        return render(self)


# ----------------------------------------------------------------------
# normalization
# ----------------------------------------------------------------------


def _reduce_monomial(a, b, res_pw, pv_pw, J, ctx):
    """Apply the one-variable relations to a single coefficient monomial.

    Returns (a', res', pv') or None when the monomial annihilates.
    """
    res_pw = dict(res_pw)
    pv_pw = dict(pv_pw)
    a = list(a)
    for j, m in list(res_pw.items()):
        if b[j] > 0:
            return None  # cj(t_j) res(t_j, m) = 0
        k = a[j]
        if k:
            if k >= m:
                return None  # t_j^m res(t_j, m) = 0 already at k = m
            res_pw[j] = m - k
            a[j] = 0
    for j, m in list(pv_pw.items()):
        k = a[j]
        if k:
            if k < m:
                pv_pw[j] = m - k
                a[j] = 0
            else:
                del pv_pw[j]
                a[j] = k - m
    return tuple(a), res_pw, pv_pw


def normalize_parts(ctx: VarContext, raw_terms) -> Current:
    """Build a Current from raw (coeff, basis, pv, res, scalar) tuples."""
    buckets = {}
    for coeff, basis, pv, res, scalar in raw_terms:
        scalar = QQi.of(scalar)
        if scalar.is_zero() or coeff.is_zero():
            continue
        ctx.check(coeff.ctx)
        I, J = tuple(basis[0]), tuple(basis[1])
        si, I = sort_signed(I)
        if si == 0:
            continue
        sj, J = sort_signed(J)
        if sj == 0:
            continue
        sign = si * sj

        pv_pw = {}
        for v, m in pv:
            if m < 1:
                raise NormalizeError(f"pv power must be >= 1, got {m}")
            pv_pw[v] = pv_pw.get(v, 0) + m

        res_list = [v for v, _ in res]
        sr, _sorted = sort_signed(tuple(res_list))
        if sr == 0:
            dup = next(v for i, v in enumerate(res_list) if v in res_list[:i])
            raise RepeatedResidueError(
                f"repeated residue factor in variable {ctx.name(dup)}"
            )
        sign *= sr
        res_pw = {}
        for v, m in res:
            if m < 1:
                raise NormalizeError(f"res power must be >= 1, got {m}")
            res_pw[v] = m

        overlap = set(pv_pw) & set(res_pw)
        if overlap:
            v = min(overlap)
            raise MixedFactorError(
                f"variable {ctx.name(v)} carries both a principal value and a "
                "residue factor; apply pv_divide or solve_divide instead"
            )
        if any(j in res_pw for j in J):
            continue  # dtbar_j ^ res(t_j, m) = 0

        for (a, b), c in coeff.terms.items():
            red = _reduce_monomial(a, b, res_pw, pv_pw, J, ctx)
            if red is None:
                continue
            na, nres, npv = red
            sig = (
                tuple(sorted(nres.items())),
                tuple(sorted(npv.items())),
                (I, J),
            )
            val = c * scalar
            if sign == -1:
                val = -val
            mono = buckets.setdefault(sig, {})
            key = (na, b)
            prev = mono.get(key)
            mono[key] = val if prev is None else prev + val

    terms = []
    for (res_t, pv_t, basis), monos in buckets.items():
        p = Poly(ctx, monos)
        if p.is_zero():
            continue
        terms.append(Term(p, basis, pv_t, res_t))
    terms.sort(key=Term.sort_key)
    return Current(ctx, terms)


def normalize(raw_terms) -> Current:
    """Spec-shaped entry: raw terms are (SmoothForm, pv list, res list, sign)."""
    raw_terms = list(raw_terms)
    if not raw_terms:
        raise NormalizeError("normalize needs at least one raw term for a context")
    ctx = raw_terms[0][0].ctx
    parts = []
    for form, pv, res, sign in raw_terms:
        ctx.check(form.ctx)
        for basis, p in form.comps.items():
            parts.append((p, basis, tuple(pv), tuple(res), QQi.of(sign)))
    return normalize_parts(ctx, parts)


# ----------------------------------------------------------------------
# algebra
# ----------------------------------------------------------------------


def add(a: Current, b: Current) -> Current:
    a.ctx.check(b.ctx)
    merged = {}
    order = {}
    for t in a.terms + b.terms:
        sig = t.signature()
        if sig in merged:
            merged[sig] = merged[sig] + t.coeff
        else:
            merged[sig] = t.coeff
            order[sig] = t
    terms = []
    for sig, coeff in merged.items():
        if coeff.is_zero():
            continue
        t = order[sig]
        terms.append(Term(coeff, t.basis, t.pv, t.res))
    terms.sort(key=Term.sort_key)
    return Current(a.ctx, terms)


def wedge(beta: SmoothForm, tau: Current) -> Current:
    """Left exterior product by a smooth form."""
    beta.ctx.check(tau.ctx)
    parts = []
    for (K, L), p in beta.comps.items():
        for t in tau.terms:
            I, J = t.basis
            cross = (-1) ** (len(I) * len(L))
            si, nI = merge_signed(K, I)
            if si == 0:
                continue
            sj, nJ = merge_signed(L, J)
            if sj == 0:
                continue
            sign = QQi.of(cross * si * sj)
            parts.append((p * t.coeff, (nI, nJ), t.pv, t.res, sign))
    return normalize_parts(tau.ctx, parts)


def graded_product(a: Current, b: Current) -> Current:
    """Tensor-style graded product of currents.

    Defined termwise when the singular factors are compatible: pv factors
    in a shared variable merge (commuting principal values), while a
    same-variable pv/res or res/res collision is the usual construction
    error.  Smooth factors reduce to `wedge`.
    """
    a.ctx.check(b.ctx)
    parts = []
    for s in a.terms:
        for t in b.terms:
            overlap = s.res_vars() & t.res_vars()
            if overlap:
                raise RepeatedResidueError(
                    f"repeated residue factor in variable {a.ctx.name(min(overlap))}"
                )
            I1, J1 = s.basis
            I2, J2 = t.basis
            syms = (
                [(0, i) for i in I1] + [(1, j) for j in J1]
                + [(2, v) for v, _ in s.res]
                + [(0, i) for i in I2] + [(1, j) for j in J2]
                + [(2, v) for v, _ in t.res]
            )
            if len(set(syms)) != len(syms):
                continue  # repeated dt or dtbar annihilates the term
            sign = 1
            arr = list(syms)
            for x in range(1, len(arr)):
                y = x
                while y > 0 and arr[y - 1] > arr[y]:
                    arr[y - 1], arr[y] = arr[y], arr[y - 1]
                    sign = -sign
                    y -= 1
            nI = tuple(v for k, v in arr if k == 0)
            nJ = tuple(v for k, v in arr if k == 1)
            nres = tuple(sorted(dict(s.res + t.res).items()))
            pv_pw = {}
            for v, m in s.pv + t.pv:
                pv_pw[v] = pv_pw.get(v, 0) + m
            parts.append((s.coeff * t.coeff, (nI, nJ), tuple(sorted(pv_pw.items())),
                          nres, QQi.of(sign)))
    return normalize_parts(a.ctx, parts)


def bidegree(tau: Current) -> set:
    """Set of (p, q) present; residue factors count toward q."""
    return {t.bidegree() for t in tau.terms}


def elementary_support(term: Term) -> set:
    """Variables j with {t_j = 0} cut out by the residue factors."""
    return term.res_vars()


def equals(a: Current, b: Current) -> bool:
    a.ctx.check(b.ctx)
    return a.terms == b.terms


# ----------------------------------------------------------------------
# convenience constructors
# ----------------------------------------------------------------------


def const_current(ctx, c=1) -> Current:
    return normalize_parts(
        ctx, [(Poly.constant(ctx, c), ((), ()), (), (), ONE)]
    )


def smooth_current(form: SmoothForm) -> Current:
    return normalize_parts(
        form.ctx, [(p, basis, (), (), ONE) for basis, p in form.comps.items()]
    )


def pv_current(ctx, j: int, m: int = 1) -> Current:
    return normalize_parts(
        ctx, [(Poly.constant(ctx, 1), ((), ()), ((j, m),), (), ONE)]
    )


def res_current(ctx, j: int, m: int = 1) -> Current:
    return normalize_parts(
        ctx, [(Poly.constant(ctx, 1), ((), ()), (), ((j, m),), ONE)]
    )
