"""Holomorphic derivatives at 0 by discrete Cauchy transforms.

A trapezoidal sum over a circle extracts one Fourier mode of the sampled
function, which for the Taylor coefficient of a holomorphic function is
spectrally accurate.  Anti-holomorphic contamination (conj-powers, radial
bump factors) enters as even powers of the radius and is removed by
extrapolating a geometric radius sweep to r = 0.
"""

from __future__ import annotations

import math

import numpy as np

from .quadrature import neville_at_zero


def taylor_coeff(fn, k: int, radii, n_theta: int = 32):
    """Estimate the k-th Taylor coefficient of fn at 0.

    fn is a vectorized callable on complex arrays; radii a decreasing
    sweep.  Returns (value, error_indicator).
    """
    theta = 2.0 * np.pi * np.arange(n_theta) / n_theta
    phase = np.exp(-1j * k * theta)
    samples = []
    for r in radii:
        pts = r * np.exp(1j * theta)
        vals = fn(pts)
        samples.append(complex(np.sum(vals * phase)) / (n_theta * r**k))
    return neville_at_zero([r * r for r in radii], samples)


def derivative_at_zero(fn, k: int, radii, n_theta: int = 32):
    """k-th holomorphic derivative at 0: k! times the Taylor coefficient."""
    coeff, err = taylor_coeff(fn, k, radii, n_theta)
    f = math.factorial(k)
    return f * coeff, f * err


def default_radii(scale: float, count: int = 5, base: float = 0.5, ratio: float = 0.7):
    """Geometric sweep of contour radii below the profile support."""
    return tuple(scale * base * ratio**i for i in range(count))
