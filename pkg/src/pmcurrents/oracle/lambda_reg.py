"""Analytic continuation of |s|^(2 lambda) / s^m pairings in one variable.

Angular Fourier selection is exact for polynomial x radial test data and
leaves the radial integral  int_0^R r^(2 lambda + A - m + B + 1) b(r) dr,
an entire function of lambda continued by repeated integration by parts;
its poles sit where an accumulated exponent hits -1.  At lambda = 0 the
value is the principal value pairing of [1/s^m].
"""

from __future__ import annotations

import math

import numpy as np

from .pairing import OracleConfig, DEFAULT_CONFIG, slot_sign
from .quadrature import radial_rule
from .testforms import TestForm

__all__ = ["pair_lambda", "PoleError"]


class PoleError(ArithmeticError):
    """lambda sits on a pole of the meromorphic continuation."""


def _continued_radial(mu: float, prof, config: OracleConfig, depth: int = 0):
    """int_0^R r^mu prof(r) dr, continued below mu = -1 by parts."""
    if depth > 24:
        raise PoleError("integration-by-parts recursion did not terminate")
    if mu > -0.5:
        r, w = radial_rule(prof.radius, config.radial_n)
        return complex(np.sum(w * r**mu * prof(r)))
    if abs(mu + 1.0) < 1e-10:
        raise PoleError(f"radial exponent {mu} at a pole of the continuation")
    # boundary terms vanish: compact support at R, r^{mu+1} -> 0 handled by
    # the recursion entering only when the continued integral exists
    return -_continued_radial(mu + 1.0, prof.r_derivative(), config, depth + 1) / (mu + 1.0)


def pair_lambda(m: int, lam: float, psi: TestForm, config: OracleConfig = None) -> complex:
    """< |s|^(2 lambda) / s^m, psi > on a one-variable chart."""
    config = config or DEFAULT_CONFIG
    if psi.ctx.n != 1:
        raise ValueError("pair_lambda works on a one-variable chart")
    if m < 1:
        raise ValueError("pole order m must be >= 1")
    total = 0j
    for comp in psi.components:
        K, L = comp.basis
        sign = slot_sign([(k, 0) for k in K] + [(j, 1) for j in L], 1)
        if sign == 0:
            continue
        prof = comp.profiles[0]
        for (a, b), c in comp.poly.items():
            A, B = a[0], b[0]
            if A - m != B:
                continue  # angular selection
            mu = 2.0 * lam + A - m + B + 1
            total += sign * c * (-4j * math.pi) * _continued_radial(mu, prof, config)
    return complex(total)
