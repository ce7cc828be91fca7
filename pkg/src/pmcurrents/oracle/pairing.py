"""Numerical evaluation of <current, test form> pairings.

Per variable the pairing separates exactly:

  * plain variables: angular Fourier selection (exact for monomials)
    leaves a smooth radial integrand for Gauss-Legendre;
  * principal value variables: the pole shifts the selected angular
    mode, after which the radial integrand is again smooth -- the
    quadrature never sees the singularity;
  * residue variables: the calibrated constant c_m times the (m-1)-st
    holomorphic derivative of the remaining factor at 0, computed by a
    discrete Cauchy transform with a geometric radius sweep.

Orientation convention: integrals are taken against dt ^ dtbar per
variable (dt ^ dtbar = -2i dLebesgue), with one global permutation sign
from sorting all differential symbols into dt1, dtbar1, dt2, dtbar2, ...
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from ..currents import Current
from .cauchy import default_radii, taylor_coeff
from .profiles import PolyBump, SmoothBump
from .quadrature import radial_integral
from .testforms import TestForm

__all__ = ["OracleConfig", "DEFAULT_CONFIG", "pair", "pair_report",
           "calibrate_residue_constants", "CalibrationError", "slot_sign"]


class CalibrationError(RuntimeError):
    pass


@dataclass
class OracleConfig:
    radial_n: int = 64
    contour_n: int = 32
    contour_count: int = 7
    contour_base: float = 0.5
    contour_ratio: float = 0.67
    max_residue_power: int = 6
    constants: dict = field(default_factory=dict)
    calibration_spreads: dict = field(default_factory=dict)

    def residue_constant(self, m: int) -> complex:
        if m not in self.constants:
            calibrate_residue_constants(max(m, 4), self)
        return self.constants[m]


DEFAULT_CONFIG = OracleConfig()


def slot_sign(symbols, n):
    """Permutation parity sorting (var, kind) symbols into slot order.

    kind 0 is dt, kind 1 is dtbar; slot order dt1, dtbar1, dt2, ...
    Returns 0 unless the symbols fill all 2n slots exactly once.
    """
    if len(symbols) != 2 * n:
        return 0
    keys = [2 * v + k for v, k in symbols]
    if len(set(keys)) != len(keys):
        return 0
    sign = 1
    arr = list(keys)
    for i in range(1, len(arr)):
        j = i
        while j > 0 and arr[j - 1] > arr[j]:
            arr[j - 1], arr[j] = arr[j], arr[j - 1]
            sign = -sign
            j -= 1
    return sign


def _plain_value(A, B, prof, config, cache):
    if A != B:
        return 0.0
    return -4j * math.pi * _rad(A + B + 1, prof, config, cache)


def _pv_value(m, A, B, prof, config, cache):
    if A - m != B:
        return 0.0
    return -4j * math.pi * _rad(A - m + B + 1, prof, config, cache)


def _res_value(m, A, B, prof, config, cache):
    c_m = config.residue_constant(m)
    radii = default_radii(prof.radius, config.contour_count,
                          config.contour_base, config.contour_ratio)

    def u(t):
        return t**A * np.conj(t) ** B * prof(np.abs(t))

    coeff, _err = taylor_coeff(u, m - 1, radii, config.contour_n)
    return -c_m * math.factorial(m - 1) * coeff


def _rad(power, prof, config, cache):
    key = (id(prof), power)
    if key not in cache:
        cache[key] = radial_integral(power, prof, config.radial_n)
    return cache[key]


def pair(tau: Current, psi: TestForm, config: OracleConfig = None) -> complex:
    """<tau, psi>; exact 0 on any bidegree mismatch."""
    val, _ = pair_report(tau, psi, config)
    return val


def pair_report(tau: Current, psi: TestForm, config: OracleConfig = None):
    """Pairing value plus a flag dict ({'degree': True} when orthogonal)."""
    config = config or DEFAULT_CONFIG
    tau.ctx.check(psi.ctx)
    n = tau.ctx.n
    cache = {}
    total = 0.0 + 0.0j
    matched = False
    for term in tau.terms:
        I, J = term.basis
        res = dict(term.res)
        pv = dict(term.pv)
        base_syms = (
            [(i, 0) for i in I]
            + [(j, 1) for j in J]
            + [(v, 1) for v in sorted(res)]
        )
        for comp in psi.components:
            K, L = comp.basis
            syms = base_syms + [(k, 0) for k in K] + [(l, 1) for l in L]
            sign = slot_sign(syms, n)
            if sign == 0:
                continue
            matched = True
            for a, b, c1 in term.coeff.to_complex_terms():
                for (alpha, beta), c2 in comp.poly.items():
                    val = sign * c1 * c2
                    for v in range(n):
                        A = a[v] + alpha[v]
                        B = b[v] + beta[v]
                        prof = comp.profiles[v]
                        if v in res:
                            val *= _res_value(res[v], A, B, prof, config, cache)
                        elif v in pv:
                            val *= _pv_value(pv[v], A, B, prof, config, cache)
                        else:
                            val *= _plain_value(A, B, prof, config, cache)
                        if val == 0:
                            break
                    total += val
    flags = {} if matched else {"degree": True}
    return complex(total), flags


# ----------------------------------------------------------------------
# calibration
# ----------------------------------------------------------------------


def calibrate_residue_constants(max_m: int, config: OracleConfig = None):
    """Fix the residue constants c_m by enforcing Stokes duality.

    <res(t,m), phi dt> must equal -<pv(t,m), dbar(phi dt)>; the right
    side needs only principal value quadrature.  With phi = t^{m-1} b(|t|)
    the (m-1)-st derivative at 0 is (m-1)! b(0) by construction, so c_m is
    read off directly.  Spread across test bumps is reported and must be
    tiny; the expected values are c_m = 2 pi i / (m-1)!.
    """
    from ..context import VarContext
    from ..currents import pv_current

    config = config or DEFAULT_CONFIG
    if max_m > config.max_residue_power:
        raise CalibrationError(f"residue power {max_m} beyond desk scale")
    ctx = VarContext(1)
    bumps = [
        SmoothBump(1.0), SmoothBump(1.5), SmoothBump(2.0),
        PolyBump(1.3, 7), PolyBump(1.8, 9),
    ]
    out = []
    for m in range(1, max_m + 1):
        samples = []
        for bump in bumps:
            phi = TestForm.monomial(ctx, (m - 1,), (0,), ((0,), ()))
            phi.components[0].profiles = (bump,)
            rhs, _ = pair_report(pv_current(ctx, 0, m), phi.dbar(), config)
            deriv = math.factorial(m - 1) * bump.at_zero()
            samples.append(-rhs / deriv)
        mean = sum(samples) / len(samples)
        spread = max(abs(s - mean) for s in samples) / abs(mean)
        if spread > 1e-6:
            raise CalibrationError(
                f"residue constant c_{m} spread {spread:.2e} exceeds 1e-6"
            )
        config.constants[m] = mean
        config.calibration_spreads[m] = spread
        out.append(mean)
    return out
