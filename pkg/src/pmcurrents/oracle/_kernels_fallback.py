"""Pure-numpy fallback for the hot grid-summation kernels.

Same contract as the compiled extension `_gridkernels`: full tensor sums
over polar product grids of monomial terms r^P e^{iQ theta} against a
radial factor (chi weights, bumps, 1/|f|^2 powers) and an optional fully
angular-coupled factor.
"""

from __future__ import annotations

import numpy as np


def block_sum_1(r, wr, theta, wtheta, radial_fac, angular_fac, coeffs, P, Q):
    """sum over the (r, theta) grid of radial_fac * sum_t c_t r^P_t e^(i Q_t theta)."""
    coeffs = np.asarray(coeffs, dtype=complex)
    rp = r[None, :] ** np.asarray(P, dtype=float)[:, None]          # (T, nr)
    ph = np.exp(1j * np.outer(np.asarray(Q, dtype=float), theta))   # (T, nth)
    if angular_fac is None:
        grid = np.einsum("ti,tj->ij", rp * coeffs[:, None], ph)
        total = np.sum(grid * (wr * radial_fac)[:, None]) * wtheta
    else:
        grid = np.einsum("ti,tj->ij", rp * coeffs[:, None], ph)
        total = np.sum(grid * (wr * radial_fac)[:, None] * angular_fac) * wtheta
    return complex(total)


def block_sum_2(r1, wr1, th1, wth1, r2, wr2, th2, wth2,
                radial_fac, angular_fac, coeffs, P1, Q1, P2, Q2):
    """Full tensor sum over the product polar grid of two variables."""
    coeffs = np.asarray(coeffs, dtype=complex)
    rp1 = r1[None, :] ** np.asarray(P1, dtype=float)[:, None]        # (T, n1)
    rp2 = r2[None, :] ** np.asarray(P2, dtype=float)[:, None]        # (T, n2)
    ph1 = np.exp(1j * np.outer(np.asarray(Q1, dtype=float), th1))    # (T, m1)
    ph2 = np.exp(1j * np.outer(np.asarray(Q2, dtype=float), th2))    # (T, m2)
    W = np.outer(wr1, wr2) * radial_fac                              # (n1, n2)
    if angular_fac is None:
        # contract angular axes first, then the coupled radial factor
        a1 = ph1.sum(axis=1) * wth1                                  # (T,)
        a2 = ph2.sum(axis=1) * wth2
        rad = np.einsum("ti,tk,ik->t", rp1, rp2, W)
        return complex(np.sum(coeffs * a1 * a2 * rad))
    total = np.einsum(
        "ti,tj,tk,tl,ik,ijkl->",
        rp1 * coeffs[:, None], ph1, rp2, ph2, W, angular_fac,
    ) * (wth1 * wth2)
    return complex(total)
