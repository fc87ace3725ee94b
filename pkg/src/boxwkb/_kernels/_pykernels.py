"""Pure-Python kernels; same algorithms as ``_ckernels.pyx``."""

import math

_MAX_TERMS = 80
_EPS = 2.220446049250313e-16


def airy_local(x0, ai, aip, bi, bip, h):
    """Advance (Ai, Ai', Bi, Bi') from ``x0`` to ``x0 + h`` by a local power series.

    Coefficients follow from ``w'' = x w`` expanded about ``x0``.
    """
    a2, a1 = ai, aip
    b2, b1 = bi, bip
    a3 = 0.0
    b3 = 0.0
    # k = 0, 1 terms
    va = ai + aip * h
    vb = bi + bip * h
    da = aip
    db = bip
    hp = h  # h**(k-1) for k=2 below
    small = 0
    for k in range(2, _MAX_TERMS):
        # c_k = (x0 c_{k-2} + c_{k-3}) / (k (k-1)); a1, a2, a3 hold c_{k-1}, c_{k-2}, c_{k-3}
        ca = (x0 * a2 + a3) / (k * (k - 1))
        cb = (x0 * b2 + b3) / (k * (k - 1))
        a3, a2, a1 = a2, a1, ca
        b3, b2, b1 = b2, b1, cb
        ta = ca * hp
        tb = cb * hp
        da += k * ta
        db += k * tb
        hp *= h
        va += ta * h
        vb += tb * h
        if (abs(ta) <= _EPS * 1e-2 * (abs(da) + abs(va))
                and abs(tb) <= _EPS * 1e-2 * (abs(db) + abs(vb))):
            small += 1
            if small >= 3:
                break
        else:
            small = 0
    return va, da, vb, db


def sturm_count(diag, off2, lam):
    """Number of eigenvalues of the symmetric tridiagonal matrix below ``lam``.

    ``off2`` holds the squared off-diagonal entries.
    """
    n = len(diag)
    count = 0
    q = diag[0] - lam
    if q < 0.0:
        count += 1
    for i in range(1, n):
        if q == 0.0:
            q = _EPS * (abs(lam) + 1.0)
        q = diag[i] - lam - off2[i - 1] / q
        if q < 0.0:
            count += 1
    return count


def bisect_eigenvalue(diag, off2, k, lo, hi):
    """k-th (0-based) eigenvalue by Sturm-sequence bisection on ``[lo, hi]``."""
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi or hi - lo <= 2.0 * _EPS * max(abs(lo), abs(hi)):
            return mid
        if sturm_count(diag, off2, mid) > k:
            hi = mid
        else:
            lo = mid
