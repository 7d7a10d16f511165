# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled stepping kernels: the hot twin of ``_core_py``.

Same functions, same state layout, same operation order; see ``_core_py``
for the contract. Selected at import by ``varchaos.backend``.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport log, sqrt

W1 = 1.0 / (2.0 - 2.0 ** (1.0 / 3.0))
W0 = 1.0 - 2.0 * W1

BACKEND_NAME = "compiled"

cdef double C_W1 = W1
cdef double C_W0 = W0


cdef bint _leapfrog4(double* y, double e, double m, double hbar,
                     double dt, double rho_min) nogil:
    cdef double A = y[0], pA = y[1], rG = y[2], pG = y[3]
    cdef double h2 = 0.5 * dt
    cdef double ee = e * e
    cdef double g2 = rG * rG
    pA += h2 * (-hbar * ee * A * g2)
    pG += h2 * (hbar / (4.0 * rG * g2) - hbar * (m * m + ee * A * A) * rG)
    A += dt * pA
    rG += dt * pG
    if rG < rho_min:
        return 0
    g2 = rG * rG
    pA += h2 * (-hbar * ee * A * g2)
    pG += h2 * (hbar / (4.0 * rG * g2) - hbar * (m * m + ee * A * A) * rG)
    y[0] = A; y[1] = pA; y[2] = rG; y[3] = pG
    return 1


cdef bint _leapfrog6(double* y, double N, double e, double m, double hbar,
                     double dt, double rho_min) nogil:
    cdef double A = y[0], pA = y[1], rG = y[2], pG = y[3], rD = y[4], pD = y[5]
    cdef double h2 = 0.5 * dt
    cdef double ee = e * e
    cdef double g2 = rG * rG
    cdef double d2 = rD * rD
    cdef double msq = m * m + ee * (A * A + hbar * d2)
    pA += h2 * (-hbar * N * ee * A * g2)
    pG += h2 * (hbar * N / (4.0 * rG * g2) - hbar * N * msq * rG)
    pD += h2 * (hbar / (4.0 * rD * d2) - hbar * hbar * N * ee * rD * g2)
    A += dt * pA
    rG += dt * pG / N
    rD += dt * pD
    if rG < rho_min or rD < rho_min:
        return 0
    g2 = rG * rG
    d2 = rD * rD
    msq = m * m + ee * (A * A + hbar * d2)
    pA += h2 * (-hbar * N * ee * A * g2)
    pG += h2 * (hbar * N / (4.0 * rG * g2) - hbar * N * msq * rG)
    pD += h2 * (hbar / (4.0 * rD * d2) - hbar * hbar * N * ee * rD * g2)
    y[0] = A; y[1] = pA; y[2] = rG; y[3] = pG; y[4] = rD; y[5] = pD
    return 1


cdef bint _leapfrog4_tan(double* y, double* v, double e, double m, double hbar,
                         double dt, double rho_min) nogil:
    cdef double A = y[0], pA = y[1], rG = y[2], pG = y[3]
    cdef double dA = v[0], dpA = v[1], drG = v[2], dpG = v[3]
    cdef double h2 = 0.5 * dt
    cdef double ee = e * e
    cdef double g2, hAA, hAG, hGG

    g2 = rG * rG
    hAA = hbar * ee * g2
    hAG = 2.0 * hbar * ee * A * rG
    hGG = 3.0 * hbar / (4.0 * g2 * g2) + hbar * (m * m + ee * A * A)
    pA += h2 * (-hbar * ee * A * g2)
    pG += h2 * (hbar / (4.0 * rG * g2) - hbar * (m * m + ee * A * A) * rG)
    dpA -= h2 * (hAA * dA + hAG * drG)
    dpG -= h2 * (hAG * dA + hGG * drG)

    A += dt * pA
    rG += dt * pG
    dA += dt * dpA
    drG += dt * dpG
    if rG < rho_min:
        return 0

    g2 = rG * rG
    hAA = hbar * ee * g2
    hAG = 2.0 * hbar * ee * A * rG
    hGG = 3.0 * hbar / (4.0 * g2 * g2) + hbar * (m * m + ee * A * A)
    pA += h2 * (-hbar * ee * A * g2)
    pG += h2 * (hbar / (4.0 * rG * g2) - hbar * (m * m + ee * A * A) * rG)
    dpA -= h2 * (hAA * dA + hAG * drG)
    dpG -= h2 * (hAG * dA + hGG * drG)

    y[0] = A; y[1] = pA; y[2] = rG; y[3] = pG
    v[0] = dA; v[1] = dpA; v[2] = drG; v[3] = dpG
    return 1


cdef bint _leapfrog6_tan(double* y, double* v, double N, double e, double m,
                         double hbar, double dt, double rho_min) nogil:
    cdef double A = y[0], pA = y[1], rG = y[2], pG = y[3], rD = y[4], pD = y[5]
    cdef double dA = v[0], dpA = v[1], drG = v[2], dpG = v[3], drD = v[4], dpD = v[5]
    cdef double h2 = 0.5 * dt
    cdef double ee = e * e
    cdef double g2, d2, msq, hAA, hAG, hGG, hGD, hDD

    g2 = rG * rG
    d2 = rD * rD
    msq = m * m + ee * (A * A + hbar * d2)
    hAA = hbar * N * ee * g2
    hAG = 2.0 * hbar * N * ee * A * rG
    hGG = 3.0 * hbar * N / (4.0 * g2 * g2) + hbar * N * msq
    hGD = 2.0 * hbar * hbar * N * ee * rD * rG
    hDD = 3.0 * hbar / (4.0 * d2 * d2) + hbar * hbar * N * ee * g2
    pA += h2 * (-hbar * N * ee * A * g2)
    pG += h2 * (hbar * N / (4.0 * rG * g2) - hbar * N * msq * rG)
    pD += h2 * (hbar / (4.0 * rD * d2) - hbar * hbar * N * ee * rD * g2)
    dpA -= h2 * (hAA * dA + hAG * drG)
    dpG -= h2 * (hAG * dA + hGG * drG + hGD * drD)
    dpD -= h2 * (hGD * drG + hDD * drD)

    A += dt * pA
    rG += dt * pG / N
    rD += dt * pD
    dA += dt * dpA
    drG += dt * dpG / N
    drD += dt * dpD
    if rG < rho_min or rD < rho_min:
        return 0

    g2 = rG * rG
    d2 = rD * rD
    msq = m * m + ee * (A * A + hbar * d2)
    hAA = hbar * N * ee * g2
    hAG = 2.0 * hbar * N * ee * A * rG
    hGG = 3.0 * hbar * N / (4.0 * g2 * g2) + hbar * N * msq
    hGD = 2.0 * hbar * hbar * N * ee * rD * rG
    hDD = 3.0 * hbar / (4.0 * d2 * d2) + hbar * hbar * N * ee * g2
    pA += h2 * (-hbar * N * ee * A * g2)
    pG += h2 * (hbar * N / (4.0 * rG * g2) - hbar * N * msq * rG)
    pD += h2 * (hbar / (4.0 * rD * d2) - hbar * hbar * N * ee * rD * g2)
    dpA -= h2 * (hAA * dA + hAG * drG)
    dpG -= h2 * (hAG * dA + hGG * drG + hGD * drD)
    dpD -= h2 * (hGD * drG + hDD * drD)

    y[0] = A; y[1] = pA; y[2] = rG; y[3] = pG; y[4] = rD; y[5] = pD
    v[0] = dA; v[1] = dpA; v[2] = drG; v[3] = dpG; v[4] = drD; v[5] = dpD
    return 1


cdef bint _advance(double* y, int kind, double N, double e, double m,
                   double hbar, double dt, int scheme, double rho_min) nogil:
    if kind == 0:
        if scheme == 2:
            return _leapfrog4(y, e, m, hbar, dt, rho_min)
        return (_leapfrog4(y, e, m, hbar, C_W1 * dt, rho_min)
                and _leapfrog4(y, e, m, hbar, C_W0 * dt, rho_min)
                and _leapfrog4(y, e, m, hbar, C_W1 * dt, rho_min))
    if scheme == 2:
        return _leapfrog6(y, N, e, m, hbar, dt, rho_min)
    return (_leapfrog6(y, N, e, m, hbar, C_W1 * dt, rho_min)
            and _leapfrog6(y, N, e, m, hbar, C_W0 * dt, rho_min)
            and _leapfrog6(y, N, e, m, hbar, C_W1 * dt, rho_min))


cdef bint _advance_tan(double* y, double* v, int kind, double N, double e,
                       double m, double hbar, double dt, int scheme,
                       double rho_min) nogil:
    if kind == 0:
        if scheme == 2:
            return _leapfrog4_tan(y, v, e, m, hbar, dt, rho_min)
        return (_leapfrog4_tan(y, v, e, m, hbar, C_W1 * dt, rho_min)
                and _leapfrog4_tan(y, v, e, m, hbar, C_W0 * dt, rho_min)
                and _leapfrog4_tan(y, v, e, m, hbar, C_W1 * dt, rho_min))
    if scheme == 2:
        return _leapfrog6_tan(y, v, N, e, m, hbar, dt, rho_min)
    return (_leapfrog6_tan(y, v, N, e, m, hbar, C_W1 * dt, rho_min)
            and _leapfrog6_tan(y, v, N, e, m, hbar, C_W0 * dt, rho_min)
            and _leapfrog6_tan(y, v, N, e, m, hbar, C_W1 * dt, rho_min))


def step_kernel(y, int kind, double N, double e, double m, double hbar,
                double dt, int scheme, double rho_min):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.array(y, dtype=np.float64)
    cdef bint ok = _advance(&out[0], kind, N, e, m, hbar, dt, scheme, rho_min)
    return out, ok


def integrate_kernel(y0, int kind, double N, double e, double m, double hbar,
                     double dt, long n_steps, long sample_every, int scheme,
                     double rho_min, cnp.ndarray[cnp.float64_t, ndim=2] out):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] y = np.array(y0, dtype=np.float64)
    cdef int dim = y.shape[0]
    cdef long written = 1, s
    cdef int i
    cdef double* yp = &y[0]
    for i in range(dim):
        out[0, i] = yp[i]
    for s in range(1, n_steps + 1):
        if not _advance(yp, kind, N, e, m, hbar, dt, scheme, rho_min):
            return written, s
        if s % sample_every == 0:
            for i in range(dim):
                out[written, i] = yp[i]
            written += 1
    return written, -1


def lyapunov_kernel(y0, v0, int kind, double N, double e, double m, double hbar,
                    double dt, long renorm_every, long n_renorms, int scheme,
                    double rho_min, cnp.ndarray[cnp.float64_t, ndim=1] out_logs):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] y = np.array(y0, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] v = np.array(v0, dtype=np.float64)
    cdef int dim = y.shape[0]
    cdef double* yp = &y[0]
    cdef double* vp = &v[0]
    cdef long step = 0, j, k
    cdef int i
    cdef double norm
    for j in range(n_renorms):
        for k in range(renorm_every):
            step += 1
            if not _advance_tan(yp, vp, kind, N, e, m, hbar, dt, scheme, rho_min):
                return j, step
        norm = 0.0
        for i in range(dim):
            norm += vp[i] * vp[i]
        norm = sqrt(norm)
        out_logs[j] = log(norm)
        for i in range(dim):
            vp[i] /= norm
    return n_renorms, -1


def divergence_kernel(ya0, yb0, int kind, double N, double e, double m,
                      double hbar, double dt, long n_steps, long sample_every,
                      int scheme, double rho_min,
                      cnp.ndarray[cnp.float64_t, ndim=1] out_sep):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] ya = np.array(ya0, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] yb = np.array(yb0, dtype=np.float64)
    cdef int dim = ya.shape[0]
    cdef double* pa = &ya[0]
    cdef double* pb = &yb[0]
    cdef long written = 1, s
    cdef int i
    cdef double acc, d
    cdef bint ok_a, ok_b

    acc = 0.0
    for i in range(dim):
        d = pa[i] - pb[i]
        acc += d * d
    out_sep[0] = sqrt(acc)
    for s in range(1, n_steps + 1):
        ok_a = _advance(pa, kind, N, e, m, hbar, dt, scheme, rho_min)
        ok_b = _advance(pb, kind, N, e, m, hbar, dt, scheme, rho_min)
        if not (ok_a and ok_b):
            return written, s
        if s % sample_every == 0:
            acc = 0.0
            for i in range(dim):
                d = pa[i] - pb[i]
                acc += d * d
            out_sep[written] = sqrt(acc)
            written += 1
    return written, -1
