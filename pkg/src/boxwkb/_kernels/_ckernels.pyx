# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; algorithms mirror ``_pykernels.py`` line for line."""

from libc.math cimport fabs, fmax

cdef int _MAX_TERMS = 80
cdef double _EPS = 2.220446049250313e-16


def airy_local(double x0, double ai, double aip, double bi, double bip, double h):
    cdef double a2 = ai, a1 = aip, b2 = bi, b1 = bip
    cdef double a3 = 0.0, b3 = 0.0
    cdef double va = ai + aip * h, vb = bi + bip * h
    cdef double da = aip, db = bip
    cdef double hp = h, ca, cb, ta, tb
    cdef int k, small = 0
    for k in range(2, _MAX_TERMS):
        ca = (x0 * a2 + a3) / (k * (k - 1))
        cb = (x0 * b2 + b3) / (k * (k - 1))
        a3 = a2
        a2 = a1
        a1 = ca
        b3 = b2
        b2 = b1
        b1 = cb
        ta = ca * hp
        tb = cb * hp
        da += k * ta
        db += k * tb
        hp *= h
        va += ta * h
        vb += tb * h
        if (fabs(ta) <= _EPS * 1e-2 * (fabs(da) + fabs(va))
                and fabs(tb) <= _EPS * 1e-2 * (fabs(db) + fabs(vb))):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    return va, da, vb, db


cdef Py_ssize_t _count(const double[::1] diag, const double[::1] off2, double lam) noexcept nogil:
    cdef Py_ssize_t n = diag.shape[0], i, count = 0
    cdef double q = diag[0] - lam
    if q < 0.0:
        count += 1
    for i in range(1, n):
        if q == 0.0:
            q = _EPS * (fabs(lam) + 1.0)
        q = diag[i] - lam - off2[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def sturm_count(const double[::1] diag, const double[::1] off2, double lam):
    return _count(diag, off2, lam)


def bisect_eigenvalue(const double[::1] diag, const double[::1] off2, Py_ssize_t k,
                      double lo, double hi):
    cdef double mid
    with nogil:
        while True:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi or hi - lo <= 2.0 * _EPS * fmax(fabs(lo), fabs(hi)):
                break
            if _count(diag, off2, mid) > k:
                hi = mid
            else:
                lo = mid
    return mid
