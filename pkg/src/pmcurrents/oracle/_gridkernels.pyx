# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled twins of the grid-summation kernels.

Same contract as _kernels_fallback.  Per-term radial powers and angular
phases are tabulated once; the tensor contraction itself runs as pure
multiply-accumulate loops without temporaries.
"""

import numpy as np


def _tables(r, P, theta, Q):
    rp = np.asarray(r)[None, :] ** np.asarray(P, dtype=float)[:, None]
    ph = np.exp(1j * np.outer(np.asarray(Q, dtype=float), theta))
    return np.ascontiguousarray(rp), np.ascontiguousarray(ph)


def block_sum_1(double[::1] r, double[::1] wr, double[::1] theta, double wtheta,
                double[::1] radial_fac, object angular_fac,
                double complex[::1] coeffs, object P, object Q):
    cdef Py_ssize_t T = coeffs.shape[0]
    cdef Py_ssize_t nr = r.shape[0]
    cdef Py_ssize_t nth = theta.shape[0]
    cdef Py_ssize_t t, i, j
    cdef double complex total = 0
    cdef double complex ang, c, acc
    cdef double rad, s
    rp_np, ph_np = _tables(r, P, theta, Q)
    cdef double[:, ::1] rp = rp_np
    cdef double complex[:, ::1] ph = ph_np
    cdef double[:, ::1] af
    if angular_fac is None:
        for t in range(T):
            c = coeffs[t]
            ang = 0
            for j in range(nth):
                ang = ang + ph[t, j]
            rad = 0.0
            for i in range(nr):
                rad += wr[i] * radial_fac[i] * rp[t, i]
            total = total + c * ang * wtheta * rad
        return complex(total)
    af = np.ascontiguousarray(angular_fac, dtype=np.float64)
    for t in range(T):
        c = coeffs[t]
        for i in range(nr):
            s = wr[i] * radial_fac[i] * rp[t, i]
            acc = 0
            for j in range(nth):
                acc = acc + af[i, j] * ph[t, j]
            total = total + c * s * acc * wtheta
    return complex(total)


def block_sum_2(double[::1] r1, double[::1] wr1, double[::1] th1, double wth1,
                double[::1] r2, double[::1] wr2, double[::1] th2, double wth2,
                double[:, ::1] radial_fac, object angular_fac,
                double complex[::1] coeffs,
                object P1, object Q1, object P2, object Q2):
    cdef Py_ssize_t T = coeffs.shape[0]
    cdef Py_ssize_t n1 = r1.shape[0], n2 = r2.shape[0]
    cdef Py_ssize_t m1 = th1.shape[0], m2 = th2.shape[0]
    cdef Py_ssize_t t, i, j, k, l
    cdef double complex total = 0
    cdef double complex ang1, ang2, c, acc, block, ph1c
    cdef double rad, s1, s2
    rp1_np, ph1_np = _tables(r1, P1, th1, Q1)
    rp2_np, ph2_np = _tables(r2, P2, th2, Q2)
    cdef double[:, ::1] rp1 = rp1_np
    cdef double[:, ::1] rp2 = rp2_np
    cdef double complex[:, ::1] ph1 = ph1_np
    cdef double complex[:, ::1] ph2 = ph2_np
    cdef double[:, :, :, ::1] af
    if angular_fac is None:
        for t in range(T):
            c = coeffs[t]
            ang1 = 0
            for j in range(m1):
                ang1 = ang1 + ph1[t, j]
            ang2 = 0
            for l in range(m2):
                ang2 = ang2 + ph2[t, l]
            rad = 0.0
            for i in range(n1):
                s1 = wr1[i] * rp1[t, i]
                for k in range(n2):
                    rad += s1 * wr2[k] * radial_fac[i, k] * rp2[t, k]
            total = total + c * ang1 * ang2 * wth1 * wth2 * rad
        return complex(total)
    af = np.ascontiguousarray(angular_fac, dtype=np.float64)
    for t in range(T):
        c = coeffs[t]
        for i in range(n1):
            s1 = wr1[i] * rp1[t, i]
            for j in range(m1):
                ph1c = ph1[t, j]
                block = 0
                for k in range(n2):
                    s2 = s1 * wr2[k] * radial_fac[i, k] * rp2[t, k]
                    acc = 0
                    for l in range(m2):
                        acc = acc + af[i, j, k, l] * ph2[t, l]
                    block = block + s2 * acc
                total = total + c * ph1c * block
    return complex(total * wth1 * wth2)
