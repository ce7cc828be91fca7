"""Bochner-Martinelli type pairings for monomial tuples, trivial metric.

For f = (f_1, .., f_k) the minimal dual section is sigma = sum conj(f_i)
e_i* / |f|^2.  The scalar integrands after extracting the e*-volume are

  k = 1:   dbar chi(|f|^2/eps) ^ (conj(f_1)/|f|^2) ^ psi
           = (chi'/eps) * sum_j d_j conj(t)^(d-e_j) dtbar_j ^ psi,

  k = 2:   dbar chi ^ (sigma ^ dbar sigma) ^ psi
           = (chi'/(eps |f|^2)) * dbar conj(f_1) ^ dbar conj(f_2) ^ psi,

both smooth for each eps since chi' vanishes near |f| = 0.  Full tensor
quadrature on polar product grids, then Richardson extrapolation in eps.
The e*-extraction convention is pinned by requiring agreement with the
iterated Leibniz (Coleff-Herrera) product for coordinate tuples.
"""

from __future__ import annotations

import time

import numpy as np

from .kernels import block_sum_1, block_sum_2
from .pairing import OracleConfig, DEFAULT_CONFIG, slot_sign
from .quadrature import neville_at_zero
from .regularized import RegularizationSpec, PairingReport, _layered_radial_rule
from .testforms import TestForm

__all__ = ["bm_pair"]


def bm_pair(f, psi: TestForm, reg: RegularizationSpec = None,
            config: OracleConfig = None) -> PairingReport:
    """Report for lim_eps < dbar chi(|f|^2/eps) ^ sigma ^ (dbar sigma)^(k-1), psi >."""
    t0 = time.perf_counter()
    config = config or DEFAULT_CONFIG
    f = tuple(f)
    k = len(f)
    if k not in (1, 2):
        raise ValueError("bm_pair supports tuples of length 1 or 2")
    ctx = psi.ctx
    for g in f:
        g.ctx.check(ctx)
        if g.is_constant():
            raise ValueError("tuple entries must be non-constant monomials")
    n = ctx.n
    if n > 2:
        raise ValueError("bm_pair is desk-scale: at most 2 variables")
    if reg is None:
        reg = RegularizationSpec(h=f)
    chi = reg.chi

    radii = [psi.components[0].profiles[v].radius for v in range(n)] \
        if psi.components else [2.0] * n
    eps_seq = reg.eps_for(radii)

    # expand the dtbar choices of dbar(conj f_i) once
    choices = []  # (coeff, badd exponents, dtbar symbol list)
    if k == 1:
        d = f[0].exps
        for j in range(n):
            if d[j]:
                e = list(d)
                e[j] -= 1
                choices.append((float(d[j]), tuple(e), [(j, 1)]))
    else:
        d1, d2 = f[0].exps, f[1].exps
        for j in range(n):
            if not d1[j]:
                continue
            for l in range(n):
                if not d2[l] or l == j:
                    continue
                e1 = list(d1)
                e1[j] -= 1
                e2 = list(d2)
                e2[l] -= 1
                badd = tuple(x + y for x, y in zip(e1, e2))
                choices.append((float(d1[j] * d2[l]), badd, [(j, 1), (l, 1)]))

    tasks = []  # (coeff, P per var, Q per var, profiles)
    for coeff0, badd, bsyms in choices:
        for comp in psi.components:
            K, L = comp.basis
            sign = slot_sign(bsyms + [(x, 0) for x in K] + [(x, 1) for x in L], n)
            if sign == 0:
                continue
            for (alpha, beta), c in comp.poly.items():
                A = list(alpha)
                B = [beta[v] + badd[v] for v in range(n)]
                P = tuple(A[v] + B[v] for v in range(n))
                Q = tuple(A[v] - B[v] for v in range(n))
                tasks.append((coeff0 * sign * c, P, Q, comp.profiles))

    if not tasks:
        return PairingReport(0j, [0j] * len(eps_seq), 0j, 0.0, 0,
                             time.perf_counter() - t0, {"degree": True})

    dmax = max(max(g.exps) for g in f)
    r_resolve = 0.3 * (min(eps_seq) / 2.0) ** (1.0 / (2.0 * dmax))
    nth = getattr(config, "reg_angular_n", 24)
    theta = 2.0 * np.pi * np.arange(nth) / nth
    wth = 2.0 * np.pi / nth
    state = {"npoints": 0}

    def S_on(rdict):
        S = 0.0
        for g in f:
            term = 1.0
            for j, e in enumerate(g.exps):
                if e:
                    term = term * rdict[j] ** (2 * e)
            S = S + term
        if reg.v is not None:
            S = S * reg.v(rdict)
        return S

    def value_at(eps, per_panel=20):
        total = 0j
        groups = {}
        for c, P, Q, profs in tasks:
            groups.setdefault(tuple(id(p) for p in profs), []).append((c, P, Q, profs))
        for group in groups.values():
            profs = group[0][3]
            if n == 1:
                r, w = _layered_radial_rule(profs[0].radius, r_resolve, per_panel)
                S = S_on({0: r})
                rfac = chi.deriv(S / eps) / eps / S ** (k - 1) * profs[0](r)
                coeffs = np.array([g[0] for g in group], dtype=complex)
                P = np.array([g[1][0] for g in group], dtype=float)
                Q = np.array([g[2][0] for g in group], dtype=float)
                state["npoints"] += r.size * nth
                total += block_sum_1(r, w * r, theta, wth, rfac, None,
                                     coeffs, P, Q) * (-2j)
            else:
                r1, w1 = _layered_radial_rule(profs[0].radius, r_resolve, per_panel)
                r2, w2 = _layered_radial_rule(profs[1].radius, r_resolve, per_panel)
                S = S_on({0: r1[:, None], 1: r2[None, :]})
                rfac = chi.deriv(S / eps) / eps / S ** (k - 1) \
                    * profs[0](r1)[:, None] * profs[1](r2)[None, :]
                coeffs = np.array([g[0] for g in group], dtype=complex)
                P1 = np.array([g[1][0] for g in group], dtype=float)
                Q1 = np.array([g[2][0] for g in group], dtype=float)
                P2 = np.array([g[1][1] for g in group], dtype=float)
                Q2 = np.array([g[2][1] for g in group], dtype=float)
                state["npoints"] += r1.size * r2.size * nth * nth
                total += block_sum_2(r1, w1 * r1, theta, wth, r2, w2 * r2,
                                     theta, wth, rfac, None, coeffs,
                                     P1, Q1, P2, Q2) * (-2j) ** 2
        return total

    eps_vals = [value_at(e) for e in eps_seq]
    xs = [e ** (1.0 / (2.0 * dmax)) for e in eps_seq]
    extrapolated, err = neville_at_zero(xs, eps_vals)
    floor = abs(value_at(eps_seq[0], per_panel=28) - eps_vals[0])
    scale = abs(extrapolated)
    err = max(err, floor, 1e-6 * scale)
    return PairingReport(
        value=extrapolated,
        eps_values=eps_vals,
        extrapolated=extrapolated,
        error_indicator=err / scale if scale > 1e-9 else err,
        quad_points=state["npoints"],
        seconds=time.perf_counter() - t0,
    )
