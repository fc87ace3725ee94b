"""Modified Airy Function (MAF) quantization and wavefunctions.

The uniform solution is ``psi = [c1 Ai(xi) + c2 Bi(xi)] / sqrt(xi')`` with
``xi(x)`` built from the action measured from the turning point. Imposing the
wall at ``b`` and the origin condition gives, with ``xi0 = xi(0)`` and
``xib = xi(b)``::

    psi(0) = 0:   Ai(xi0) Bi(xib) - Bi(xi0) Ai(xib) = 0
    psi'(0) = 0:  [4 xi0 Ai'(xi0) + Ai(xi0)] Bi(xib)
                  - [4 xi0 Bi'(xi0) + Bi(xi0)] Ai(xib) = 0

The second form relies on ``xi''(0) = -xi'(0)**2 / (2 xi(0))``, which holds
when ``V'(0) = 0``.
"""

from __future__ import annotations

import math

import numpy as np

from .airy import airy_all
from .model import (
    DomainError,
    EigenResult,
    Geometry,
    Method,
    Parity,
    Potential,
    SearchError,
    check_parity,
    classify_regime,
    turning_point,
)
from .phase import allowed_action, gamma_sq, xi_at
from .roots import SCAN_START, phase_stepper, scan_roots

DEFAULT_TOL = 1e-10


def _origin_factors(parity: Parity, xi0: float) -> tuple[float, float]:
    """Coefficients multiplying Bi(xib) and Ai(xib) in the residual."""
    q = airy_all(xi0)
    if parity.vanishes_at_origin:
        return q.ai, q.bi
    return 4.0 * xi0 * q.ai_prime + q.ai, 4.0 * xi0 * q.bi_prime + q.bi


def maf_residual(pot: Potential, geo: Geometry, parity: Parity, energy: float) -> float:
    """MAF eigenvalue function at ``energy``.

    When the wall lies in the forbidden region (``xib > 0``) both wall
    values are multiplied by ``exp(-2/3 xib**1.5)``; this keeps Bi(xib) of
    order one and leaves the zero set untouched.
    """
    check_parity(geo, parity)
    if pot.is_free:
        raise DomainError("MAF needs a turning point; the free box has none")
    xi0 = xi_at(pot, energy, 0.0).xi
    xib = xi_at(pot, energy, geo.b).xi
    wall = airy_all(xib)
    scale = math.exp(-2.0 / 3.0 * xib ** 1.5) if xib > 0 else 1.0
    f_ai, f_bi = _origin_factors(parity, xi0)
    return f_ai * (wall.bi * scale) - f_bi * (wall.ai * scale)


def _maf_roots(pot: Potential, geo: Geometry, parity: Parity, n_max: int, tol: float):
    step = phase_stepper(pot, geo)
    ceiling = (n_max + 3) * math.pi
    roots = []

    def give_up(energy):
        top = min(geo.b, turning_point(pot, energy))
        return allowed_action(pot, energy, 0.0, top) > ceiling

    for root in scan_roots(lambda e: maf_residual(pot, geo, parity, e),
                           SCAN_START, math.inf, step, tol, give_up=give_up):
        roots.append(root)
        if len(roots) > n_max:
            break
    return roots


def _to_result(root, pot, geo, parity, n) -> EigenResult:
    return EigenResult(
        energy=root.energy,
        method=Method.MAF,
        parity=parity,
        index=n,
        regime=classify_regime(pot, root.energy, geo),
        residual=root.residual,
        bracket=root.bracket,
        evaluations=root.evaluations,
    )


def maf_eigenvalue(pot: Potential, geo: Geometry, parity: Parity, n: int,
                   tol: float = DEFAULT_TOL) -> EigenResult:
    """The (n+1)-th ascending root of :func:`maf_residual`."""
    check_parity(geo, parity)
    if n < 0:
        raise ValueError(f"state index must be >= 0, got {n}")
    if not tol > 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    roots = _maf_roots(pot, geo, parity, n, tol)
    if len(roots) <= n:
        raise SearchError(f"only {len(roots)} MAF roots found for parity {parity.value}")
    return _to_result(roots[n], pot, geo, parity, n)


def maf_spectrum(pot: Potential, geo: Geometry, count: int,
                 tol: float = DEFAULT_TOL) -> list[EigenResult]:
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    levels = []
    for parity in geo.parities:
        per_parity = count if len(geo.parities) == 1 else (count + 2) // 2
        roots = _maf_roots(pot, geo, parity, per_parity - 1, tol)
        if len(roots) < per_parity:
            raise SearchError(f"only {len(roots)} MAF roots found for parity {parity.value}")
        levels.extend(_to_result(r, pot, geo, parity, n) for n, r in enumerate(roots))
    levels.sort(key=lambda r: r.energy)
    return levels[:count]


def maf_coefficients(pot: Potential, parity: Parity, energy: float) -> tuple[float, float]:
    """(c1, c2) fixed by the condition at the origin, with c1**2 + c2**2 = 1."""
    xi0 = xi_at(pot, energy, 0.0).xi
    f_ai, f_bi = _origin_factors(parity, xi0)
    norm = math.hypot(f_ai, f_bi)
    return f_bi / norm, -f_ai / norm


def _xi_prime(pot: Potential, energy: float, x: float, xi: float) -> float:
    if xi == 0.0:
        # xi ~ (V'(x_t))**(1/3) (x - x_t) near the turning point
        xt = turning_point(pot, energy)
        return (pot.strength * pot.exponent * xt ** (pot.exponent - 1.0)) ** (1.0 / 3.0)
    return math.sqrt(gamma_sq(pot, energy, x) / -xi)


def maf_wavefunction(pot: Potential, geo: Geometry, parity: Parity, result: EigenResult,
                     xs) -> np.ndarray:
    """Un-normalized MAF wavefunction at points ``0 <= x <= b``.

    For a symmetric box the values on ``[-b, 0]`` follow from the parity.
    """
    if result.method is not Method.MAF:
        raise DomainError(f"expected a MAF result, got {result.method.value}")
    check_parity(geo, parity)
    energy = result.energy
    c1, c2 = maf_coefficients(pot, parity, energy)
    out = []
    for x in np.atleast_1d(np.asarray(xs, dtype=float)):
        if not 0.0 <= x <= geo.b:
            raise DomainError(f"x={x} lies outside [0, {geo.b}]")
        xi = xi_at(pot, energy, x).xi
        slope = _xi_prime(pot, energy, x, xi)
        if slope == 0.0:
            raise ArithmeticError(f"xi' vanishes at x={x}")
        q = airy_all(xi)
        out.append((c1 * q.ai + c2 * q.bi) / math.sqrt(slope))
    return np.asarray(out)
