"""Radial bump profiles and smoothed step functions.

Test forms are polynomials times per-variable radial bumps, so every
singular integral reduces to angular Fourier selection plus a smooth
radial quadrature.  Profiles know their own dbar-factor: for a radial
b(|t|) one has  d/dtbar b(|t|) = t * b'(r)/(2r),  and b'(r)/(2r) extends
smoothly through r = 0.
"""

from __future__ import annotations

import math

import numpy as np


class RadialProfile:
    """Callable radial factor with compact support [0, radius]."""

    radius = math.inf

    def __call__(self, r):
        raise NotImplementedError

    def at_zero(self) -> float:
        return float(self(np.array([0.0]))[0])

    def dbar_factor(self) -> "RadialProfile":
        """Profile p with d/dtbar self(|t|) = t * p(|t|)."""
        raise NotImplementedError(f"{type(self).__name__} has no dbar factor")

    def r_derivative(self) -> "RadialProfile":
        """d/dr of the profile; b'(r) = 2 r * dbar_factor(r)."""
        p = self.dbar_factor()
        return CallableProfile(lambda r, p=p: 2.0 * np.asarray(r) * p(r), self.radius)


class SmoothBump(RadialProfile):
    """exp(-r^2 / (R^2 - r^2)) inside |t| < R, identically 0 outside; C-infinity."""

    def __init__(self, radius: float = 2.0):
        self.radius = float(radius)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        inside = r < self.radius * (1 - 1e-12)
        ri = r[inside]
        out[inside] = np.exp(-(ri * ri) / (self.radius**2 - ri * ri))
        return out

    def dbar_factor(self):
        R2 = self.radius**2

        def fn(r, R2=R2, base=self):
            r = np.asarray(r, dtype=float)
            out = np.zeros_like(r)
            inside = r < self.radius * (1 - 1e-12)
            ri = r[inside]
            d = R2 - ri * ri
            out[inside] = -R2 / (d * d) * np.exp(-(ri * ri) / d)
            return out

        return CallableProfile(fn, self.radius)

    def __repr__(self):
        return f"SmoothBump(R={self.radius})"


class PolyBump(RadialProfile):
    """(1 - (r/R)^2)^k inside, 0 outside; C^{k-1} at the boundary.

    Being polynomial in r on its support, it has exact derivatives of all
    orders, which the lambda-continuation's integration by parts needs.
    """

    def __init__(self, radius: float = 2.0, order: int = 8):
        if order < 1:
            raise ValueError("order must be >= 1")
        self.radius = float(radius)
        self.order = int(order)

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        x = 1.0 - (r / self.radius) ** 2
        return np.where(r <= self.radius, np.maximum(x, 0.0) ** self.order, 0.0)

    def dbar_factor(self):
        # d/dr (1-(r/R)^2)^k = -2kr/R^2 (1-(r/R)^2)^{k-1}; divide by 2r
        k, R = self.order, self.radius

        def fn(r, k=k, R=R):
            r = np.asarray(r, dtype=float)
            x = 1.0 - (r / R) ** 2
            return np.where(r <= R, -(k / R**2) * np.maximum(x, 0.0) ** (k - 1), 0.0)

        return CallableProfile(fn, R)

    def radial_poly_coeffs(self):
        """Coefficients of the profile as a polynomial in r on [0, R]."""
        # (1 - r^2/R^2)^k expanded in powers of r
        coeffs = np.zeros(2 * self.order + 1)
        for j in range(self.order + 1):
            coeffs[2 * j] = math.comb(self.order, j) * (-1.0 / self.radius**2) ** j
        return coeffs

    def __repr__(self):
        return f"PolyBump(R={self.radius}, k={self.order})"


class CallableProfile(RadialProfile):
    """Wrapper for derived radial factors (derivatives, chart weights)."""

    def __init__(self, fn, radius):
        self._fn = fn
        self.radius = float(radius)

    def __call__(self, r):
        return self._fn(np.asarray(r, dtype=float))

    def __repr__(self):
        return f"CallableProfile(R={self.radius})"


class InverseStepProfile(RadialProfile):
    """chi(1/r)-style weight: 1 near r = 0, 0 for r >= 1/lo; compact support.

    Useful as a blowup chart weight; together with (1 - chi(r)) on the
    companion chart it forms a radial partition of unity across charts.
    """

    def __init__(self, step: "ChiStep"):
        self.step = step
        self.radius = 1.0 / step.lo

    def __call__(self, r):
        r = np.asarray(r, dtype=float)
        out = np.zeros_like(r)
        nz = r > 1e-300
        out[nz] = self.step(1.0 / r[nz])
        out[~nz] = 1.0
        return out

    def __repr__(self):
        return f"InverseStepProfile({self.step!r})"


class OneMinusStepProfile(RadialProfile):
    """1 - chi(r): 1 near 0, vanishes for r >= hi; compact support."""

    def __init__(self, step: "ChiStep"):
        self.step = step
        self.radius = step.hi

    def __call__(self, r):
        return 1.0 - self.step(np.asarray(r, dtype=float))

    def __repr__(self):
        return f"OneMinusStepProfile({self.step!r})"


def _smoothstep_coeffs(n: int):
    # S_n(u) = u^{n+1} * sum_k C(n+k,k) C(2n+1, n-k) (-u)^k, C^n at both ends
    return [math.comb(n + k, k) * math.comb(2 * n + 1, n - k) * (-1) ** k for k in range(n + 1)]


class ChiStep:
    """Smooth approximand of the characteristic function of [1, inf).

    0 up to lo, 1 from hi on, a C^order polynomial ramp in between.
    """

    def __init__(self, order: int = 5, lo: float = 1.0, hi: float = 2.0):
        if not (0 < lo < hi):
            raise ValueError("need 0 < lo < hi")
        self.order = int(order)
        self.lo = float(lo)
        self.hi = float(hi)
        self._c = _smoothstep_coeffs(self.order)

    def _ramp(self, u):
        s = np.zeros_like(u)
        for c in reversed(self._c):
            s = s * u + c
        return s * u ** (self.order + 1)

    def __call__(self, x):
        x = np.asarray(x, dtype=float)
        u = np.clip((x - self.lo) / (self.hi - self.lo), 0.0, 1.0)
        return self._ramp(u)

    def deriv(self, x):
        x = np.asarray(x, dtype=float)
        u = (x - self.lo) / (self.hi - self.lo)
        inside = (u > 0.0) & (u < 1.0)
        out = np.zeros_like(x)
        ui = u[inside]
        # d/du of the ramp polynomial
        s = np.zeros_like(ui)
        for k, c in reversed(list(enumerate(self._c))):
            s = s * ui + c * (self.order + 1 + k)
        out[inside] = s * ui**self.order / (self.hi - self.lo)
        return out

    def __repr__(self):
        return f"ChiStep(order={self.order}, lo={self.lo}, hi={self.hi})"
