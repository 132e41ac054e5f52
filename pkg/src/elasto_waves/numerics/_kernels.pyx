# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled time-stepping kernels.

Arithmetic is written in the same order as ``_kernels_py`` so both backends
produce identical floating-point results.
"""
import numpy as np
cimport numpy as cnp
from libc.math cimport fabs

cnp.import_array()


cdef inline double _vdc(long n) noexcept nogil:
    # base 5, digit a mapped to 3a mod 5
    cdef double q = 0.0
    cdef double bk = 0.2
    while n > 0:
        q += ((3 * (n % 5)) % 5) * bk
        n = n // 5
        bk = bk / 5.0
    return q


def van_der_corput(long n):
    return _vdc(n)


cdef inline void _sample(double uL, double sL, double uR, double sR, double k, double xi,
                         double* uo, double* so) noexcept nogil:
    cdef double um = 0.5 * (uL + uR) + (sR - sL) / (2.0 * k)
    cdef double sm = 0.5 * (sL + sR) + 0.5 * k * (uR - uL)
    cdef double lo, hi
    if um > uL:
        lo = uL - k
        hi = um - k
        if xi < lo:
            uo[0] = uL; so[0] = sL
            return
        if xi < hi:
            uo[0] = xi + k; so[0] = k * xi + sL - k * (uL - k)
            return
    elif um < uL:
        lo = 0.5 * (um + uL) - k
        if xi < lo:
            uo[0] = uL; so[0] = sL
            return
    if uR > um:
        lo = um + k
        hi = uR + k
        if xi < lo:
            uo[0] = um; so[0] = sm
            return
        if xi < hi:
            uo[0] = xi - k; so[0] = -k * xi + sm + k * (um + k)
            return
    elif uR < um:
        lo = 0.5 * (uR + um) + k
        if xi < lo:
            uo[0] = um; so[0] = sm
            return
    uo[0] = uR; so[0] = sR


def rp_sample(double[::1] uL, double[::1] sL, double[::1] uR, double[::1] sR, double k, double[::1] xi):
    cdef Py_ssize_t n = uL.shape[0], i
    out_u = np.empty(n)
    out_s = np.empty(n)
    cdef double[::1] ou = out_u
    cdef double[::1] os = out_s
    with nogil:
        for i in range(n):
            _sample(uL[i], sL[i], uR[i], sR[i], k, xi[i], &ou[i], &os[i])
    return out_u, out_s


cdef double _amax(double[::1] u, double k) noexcept nogil:
    cdef double m = 0.0
    cdef Py_ssize_t i
    for i in range(u.shape[0]):
        if fabs(u[i]) > m:
            m = fabs(u[i])
    return m + k


def fv_evolve(double[::1] u, double[::1] s, double k, double dx, double cfl, double t_end):
    """Advance cell averages to ``t_end`` in place; returns the number of steps."""
    cdef Py_ssize_t n = u.shape[0], i
    cdef double[::1] dpu = np.zeros(n)
    cdef double[::1] dps = np.zeros(n)
    cdef double[::1] dmu = np.zeros(n)
    cdef double[::1] dms = np.zeros(n)
    cdef double t = 0.0, dt, r, du, ds, ub, al, au, as_, tu, ts
    cdef long steps = 0
    with nogil:
        while t < t_end:
            dt = cfl * dx / _amax(u, k)
            if t + dt >= t_end:
                dt = t_end - t
            r = dt / dx
            for i in range(n - 1):
                du = u[i + 1] - u[i]
                ds = s[i + 1] - s[i]
                ub = 0.5 * (u[i] + u[i + 1])
                al = fabs(u[i]) if fabs(u[i]) > fabs(u[i + 1]) else fabs(u[i + 1])
                al = al + k
                au = ub * du - ds
                as_ = ub * ds - k * k * du
                dpu[i] = 0.5 * (au + al * du)
                dps[i] = 0.5 * (as_ + al * ds)
                dmu[i] = 0.5 * (au - al * du)
                dms[i] = 0.5 * (as_ - al * ds)
            for i in range(n):
                tu = 0.0
                ts = 0.0
                if i > 0:
                    tu = tu + dpu[i - 1]
                    ts = ts + dps[i - 1]
                if i < n - 1:
                    tu = tu + dmu[i]
                    ts = ts + dms[i]
                u[i] = u[i] - r * tu
                s[i] = s[i] - r * ts
            t = t + dt
            steps += 1
    return steps


def glimm_evolve(double[::1] u, double[::1] s, double k, double dx, double cfl, double t_end, long seed):
    """Random-choice evolution to ``t_end`` in place; returns the number of steps."""
    cdef Py_ssize_t n = u.shape[0], i, il, ir
    cdef double[::1] nu = np.empty(n)
    cdef double[::1] ns = np.empty(n)
    cdef double t = 0.0, dt, theta, xi
    cdef long steps = 0
    with nogil:
        while t < t_end:
            dt = cfl * 0.5 * dx / _amax(u, k)
            if t + dt >= t_end:
                dt = t_end - t
            steps += 1
            theta = _vdc(steps + seed)
            for i in range(n):
                if theta <= 0.5:
                    il = i - 1 if i > 0 else 0
                    xi = theta * dx / dt
                    _sample(u[il], s[il], u[i], s[i], k, xi, &nu[i], &ns[i])
                else:
                    ir = i + 1 if i < n - 1 else n - 1
                    xi = (theta - 1.0) * dx / dt
                    _sample(u[i], s[i], u[ir], s[ir], k, xi, &nu[i], &ns[i])
            for i in range(n):
                u[i] = nu[i]
                s[i] = ns[i]
            t = t + dt
    return steps
