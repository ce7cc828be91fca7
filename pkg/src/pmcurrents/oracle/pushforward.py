"""Pairings of direct images under monomial chart maps.

<pi_* tau, psi> = <tau, w . pi^* psi>: the polynomial part of the pullback
is composed exactly (exponent arithmetic, differentials expanded), bump
factors become composite radial profiles bump(prod r_j^m_ij), and the
optional per-variable chart weights w supply compact support where the
pullback alone does not (blowup atlases).  Angular integrals stay exact;
what remains is a coupled radial tensor quadrature, with residue
variables of tau evaluated by discrete Cauchy transforms nested around
the radial grid.
"""

from __future__ import annotations

import itertools
import math

import numpy as np

from ..context import VarContext
from ..currents import Current
from ..poly import Poly
from .pairing import OracleConfig, DEFAULT_CONFIG, slot_sign
from .quadrature import neville_at_zero, radial_rule
from .testforms import TestForm

__all__ = ["MonomialMap", "pushforward_pair", "ChartSupportError"]


class ChartSupportError(RuntimeError):
    """The weighted pullback is not compactly supported in the chart."""


class MonomialMap:
    """Monomial substitution target_i = prod_j source_j^rows[i][j].

    `weights` optionally carries per-source-variable radial chart weights
    (a blowup atlas' partition of unity); pushforward_pair uses them when
    no explicit weights are passed.
    """

    def __init__(self, source: VarContext, target: VarContext, rows, weights=None):
        rows = tuple(tuple(r) for r in rows)
        if len(rows) != target.n or any(len(r) != source.n for r in rows):
            raise ValueError("need one exponent row per target variable")
        if any(e < 0 for r in rows for e in r):
            raise ValueError("exponents must be non-negative")
        self.source = source
        self.target = target
        self.rows = rows
        self.weights = dict(weights or {})
        if not self._generically_finite():
            raise ValueError("map is degenerate: no nonzero Jacobian minor")

    def _generically_finite(self) -> bool:
        """Some target.n x target.n Jacobian minor is a nonzero polynomial."""
        nt, ns = self.target.n, self.source.n
        if nt > ns:
            return False
        for cols in itertools.combinations(range(ns), nt):
            det = Poly.zero(self.source)
            for perm in itertools.permutations(range(nt)):
                sign = _perm_sign(perm)
                entry = Poly.constant(self.source, sign)
                ok = True
                for i in range(nt):
                    j = cols[perm[i]]
                    e = self.rows[i][j]
                    if e == 0:
                        ok = False
                        break
                    shifted = list(self.rows[i])
                    shifted[j] -= 1
                    entry = entry * Poly.monomial(
                        self.source, tuple(shifted), self.source.zero_exp(), e
                    )
                if ok:
                    det = det + entry
            if not det.is_zero():
                return True
        return False

    @staticmethod
    def identity(ctx: VarContext) -> "MonomialMap":
        rows = [[1 if i == j else 0 for j in range(ctx.n)] for i in range(ctx.n)]
        return MonomialMap(ctx, ctx, rows)

    def pull_exp(self, alpha) -> tuple:
        out = [0] * self.source.n
        for i, e in enumerate(alpha):
            if e:
                for j, m in enumerate(self.rows[i]):
                    out[j] += e * m
        return tuple(out)

    def __repr__(self):
        comps = []
        for i, row in enumerate(self.rows):
            body = "*".join(
                f"{self.source.name(j)}" + (f"**{e}" if e > 1 else "")
                for j, e in enumerate(row) if e
            )
            comps.append(f"{self.target.name(i)}={body or '1'}")
        return f"MonomialMap({', '.join(comps)})"


def _perm_sign(perm):
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


class _Pulled:
    """One component of w . pi^* psi on the source chart."""

    __slots__ = ("coeff", "a", "b", "factors", "basis")

    def __init__(self, coeff, a, b, factors, basis):
        self.coeff = coeff      # complex
        self.a = a              # source holomorphic exponents
        self.b = b              # source anti-holomorphic exponents
        self.factors = factors  # ((profile, row exponents), ...)
        self.basis = basis      # (K, L) in source variables


def _pullback(pi: MonomialMap, psi: TestForm, weights):
    ns = pi.source.n
    base_factors = []
    if weights:
        for v, prof in sorted(weights.items()):
            row = tuple(1 if j == v else 0 for j in range(ns))
            base_factors.append((prof, row))
    out = []
    for comp in psi.components:
        K, L = comp.basis
        factors = list(base_factors)
        for i in range(pi.target.n):
            factors.append((comp.profiles[i], pi.rows[i]))
        # expand pi^*(dt_K ^ dtbar_L): each dt_i becomes a sum over j
        hol_choices = []
        for i in K:
            opts = []
            for j in range(ns):
                e = pi.rows[i][j]
                if e:
                    shifted = list(pi.rows[i])
                    shifted[j] -= 1
                    opts.append((e, tuple(shifted), j))
            hol_choices.append(opts)
        anti_choices = []
        for i in L:
            opts = []
            for j in range(ns):
                e = pi.rows[i][j]
                if e:
                    shifted = list(pi.rows[i])
                    shifted[j] -= 1
                    opts.append((e, tuple(shifted), j))
            anti_choices.append(opts)
        for (alpha, beta), c in comp.poly.items():
            a0 = pi.pull_exp(alpha)
            b0 = pi.pull_exp(beta)
            for hol in itertools.product(*hol_choices):
                for anti in itertools.product(*anti_choices):
                    # sort the du and dubar choices within their own blocks,
                    # matching the dt_K ^ dtbar_L written order
                    from ..forms import sort_signed

                    sh, _ = sort_signed(tuple(j for (_e, _s, j) in hol))
                    sa, _ = sort_signed(tuple(j for (_e, _s, j) in anti))
                    if sh == 0 or sa == 0:
                        continue
                    coeff = c * sh * sa
                    a = list(a0)
                    b = list(b0)
                    for e, shifted, _j in hol:
                        coeff *= e
                        a = [x + y for x, y in zip(a, shifted)]
                    for e, shifted, _j in anti:
                        coeff *= e
                        b = [x + y for x, y in zip(b, shifted)]
                    Ksrc = tuple(sorted(j for (_e, _s, j) in hol))
                    Lsrc = tuple(sorted(j for (_e, _s, j) in anti))
                    out.append(_Pulled(coeff, tuple(a), tuple(b),
                                       tuple(factors), (Ksrc, Lsrc)))
    return out


def _var_bounds(factors, ns):
    bounds = [math.inf] * ns
    for prof, row in factors:
        nz = [j for j, e in enumerate(row) if e]
        if len(nz) == 1 and math.isfinite(prof.radius):
            j = nz[0]
            bounds[j] = min(bounds[j], prof.radius ** (1.0 / row[j]))
    return bounds


def pushforward_pair(pi: MonomialMap, tau: Current, psi: TestForm,
                     weights=None, config: OracleConfig = None) -> complex:
    """<tau, w . pi^* psi> with per-source-variable radial chart weights."""
    config = config or DEFAULT_CONFIG
    pi.source.check(tau.ctx)
    pi.target.check(psi.ctx)
    ns = pi.source.n
    weights = dict(pi.weights if weights is None else weights)
    pulled = _pullback(pi, psi, weights)
    total = 0j
    nrad = getattr(config, "push_radial_n", 48)

    for term in tau.terms:
        res = dict(term.res)
        pv = dict(term.pv)
        if len(res) > 1:
            raise NotImplementedError(
                "pushforward pairing nests at most one residue variable"
            )
        I, J = term.basis
        tsyms = [(i, 0) for i in I] + [(j, 1) for j in J] + [(v, 1) for v in sorted(res)]
        for comp in pulled:
            K, L = comp.basis
            sign = slot_sign(tsyms + [(k, 0) for k in K] + [(l, 1) for l in L], ns)
            if sign == 0:
                continue
            bounds = _var_bounds(comp.factors, ns)
            for v in range(ns):
                if not math.isfinite(bounds[v]):
                    raise ChartSupportError(
                        f"variable {pi.source.name(v)} is unbounded on the chart; "
                        "supply a chart weight"
                    )
            for ac, bc, cc in term.coeff.to_complex_terms():
                coeff = sign * cc * comp.coeff
                A = [comp.a[v] + ac[v] for v in range(ns)]
                B = [comp.b[v] + bc[v] for v in range(ns)]
                grid_vars, powers = [], []
                cont = None
                dead = False
                for v in range(ns):
                    if v in res:
                        cont = (v, res[v], A[v], B[v])
                        continue
                    pole = pv.get(v, 0)
                    if A[v] - pole != B[v]:
                        dead = True
                        break
                    grid_vars.append(v)
                    powers.append(A[v] - pole + B[v] + 1)
                    coeff *= -4j * math.pi
                if dead or coeff == 0:
                    continue

                def radial_block(fixed):
                    rules = [radial_rule(bounds[v], nrad) for v in grid_vars]
                    mesh = np.ones([nrad] * len(grid_vars))
                    integ = np.array(1.0)
                    shape = [nrad] * len(grid_vars)
                    rgrids = {}
                    for idx, v in enumerate(grid_vars):
                        sh = [1] * len(grid_vars)
                        sh[idx] = nrad
                        rgrids[v] = rules[idx][0].reshape(sh)
                    rgrids.update(fixed)
                    vals = np.ones(shape) if grid_vars else np.array(1.0)
                    for idx, v in enumerate(grid_vars):
                        sh = [1] * len(grid_vars)
                        sh[idx] = nrad
                        vals = vals * (rules[idx][0] ** powers[idx] * rules[idx][1]).reshape(sh)
                    for prof, row in comp.factors:
                        arg = np.array(1.0)
                        for j, e in enumerate(row):
                            if e:
                                arg = arg * rgrids[j] ** e
                        vals = vals * prof(arg)
                    return complex(np.sum(vals))

                if cont is None:
                    total += coeff * radial_block({})
                else:
                    v, m, Av, Bv = cont
                    mode = Av - Bv - (m - 1)
                    nc = config.contour_n
                    thc = 2.0 * np.pi * np.arange(nc) / nc
                    angfac = complex(np.mean(np.exp(1j * mode * thc)))
                    if abs(angfac) < 1e-12:
                        continue
                    sweep = [bounds[v] * config.contour_base * config.contour_ratio**i
                             for i in range(config.contour_count)]
                    samples = [rho ** (Av + Bv - (m - 1)) * radial_block({v: rho})
                               for rho in sweep]
                    lim, _err = neville_at_zero([r * r for r in sweep], samples)
                    cfac = -config.residue_constant(m) * math.factorial(m - 1)
                    total += coeff * cfac * angfac * lim
    return complex(total)
