"""Quadrature rules and extrapolation helpers."""

from __future__ import annotations

import numpy as np


def radial_rule(radius: float, n: int):
    """Gauss-Legendre nodes/weights on [0, radius]."""
    x, w = np.polynomial.legendre.leggauss(n)
    r = 0.5 * radius * (x + 1.0)
    return r, 0.5 * radius * w


def angular_rule(n: int):
    """Uniform (trapezoidal) nodes on the circle; spectrally accurate."""
    theta = 2.0 * np.pi * np.arange(n) / n
    return theta, 2.0 * np.pi / n


def radial_integral(power: int, profile, n: int) -> float:
    """integral_0^R r^power profile(r) dr for integer power >= 0."""
    r, w = radial_rule(profile.radius, n)
    return float(np.sum(w * r**power * profile(r)))


def neville_at_zero(xs, ys):
    """Polynomial extrapolation of (xs, ys) to x = 0.

    Returns (value, error_indicator); the indicator is the difference of
    the last two diagonal extrapolants and is reported, never hidden.
    """
    xs = [float(x) for x in xs]
    m = len(xs)
    if m == 0:
        raise ValueError("no samples to extrapolate")
    if m == 1:
        return ys[0], abs(ys[0])
    tab = list(ys)
    diags = [tab[0]]
    for j in range(1, m):
        new = [None] * (m - j)
        for i in range(m - j):
            xi, xij = xs[i], xs[i + j]
            new[i] = (xij * tab[i] - xi * tab[i + 1]) / (xij - xi)
        tab = new
        diags.append(tab[0])
    return diags[-1], abs(diags[-1] - diags[-2])


def geometric_sequence(start: float, ratio: float, levels: int):
    if not (0 < ratio < 1) or levels < 2 or start <= 0:
        raise ValueError("need start > 0, 0 < ratio < 1, levels >= 2")
    return tuple(start * ratio**k for k in range(levels))
