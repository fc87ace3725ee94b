"""Modified WKB quantization for hard-wall boxes.

Turning point inside the box (``x_t < b``), with ``alpha = int_0^{x_t} Gamma
+ pi/4`` and ``beta = int_{x_t}^b kappa``::

    antisymmetric / half-line:  sin(alpha) - 1/2 exp(-2 beta) cos(alpha) = 0
    symmetric:                  cos(alpha) + 1/2 exp(-2 beta) sin(alpha) = 0

(the usual ``exp(beta)`` prefactor is divided out; the zero set is the
same). Turning point at or beyond the wall, with ``theta_b = int_0^b Gamma``::

    antisymmetric / half-line:  sin(theta_b) = 0
    symmetric:                  cos(theta_b) = 0

The two families disagree at the seam ``E = V(b)``. Each one is scanned only
on its own side of the seam and every root gets a state label read off its
phase, so a state is never counted twice. If both sides produce a root with
the same label, the inside-regime root is kept.
"""

from __future__ import annotations

import math

from .model import (
    DegenerateRootError,
    EigenResult,
    Geometry,
    Method,
    Parity,
    Potential,
    Regime,
    SearchError,
    check_parity,
    classify_regime,
    seam_energy,
    turning_point,
)
from .phase import QUARTER_PI, allowed_action, forbidden_action
from .roots import SCAN_START, Root, phase_stepper, scan_roots

DEFAULT_TOL = 1e-10
SEAM_REL_TOL = 1e-6

# Centres of the alpha windows that hold the inside-regime roots:
# antisymmetric alpha in [m pi, m pi + atan(1/2)], symmetric alpha in
# (m pi - pi/2, m pi - atan(2)].
_ANTI_CENTRE = 0.5 * math.atan(0.5)
_SYM_CENTRE = -0.5 * (0.5 * math.pi + math.atan(2.0))


def _inside_phases(pot: Potential, geo: Geometry, energy: float) -> tuple[float, float]:
    top = min(turning_point(pot, energy), geo.b)
    alpha = allowed_action(pot, energy, 0.0, top) + QUARTER_PI
    beta = forbidden_action(pot, energy, top, geo.b) if top < geo.b else 0.0
    return alpha, beta


def inside_residual(pot: Potential, geo: Geometry, parity: Parity, energy: float) -> float:
    alpha, beta = _inside_phases(pot, geo, energy)
    damp = 0.5 * math.exp(-2.0 * beta)
    if parity.vanishes_at_origin:
        return math.sin(alpha) - damp * math.cos(alpha)
    return math.cos(alpha) + damp * math.sin(alpha)


def outside_residual(pot: Potential, geo: Geometry, parity: Parity, energy: float) -> float:
    theta = allowed_action(pot, energy, 0.0, geo.b)
    return math.sin(theta) if parity.vanishes_at_origin else math.cos(theta)


def wkb_residual(pot: Potential, geo: Geometry, parity: Parity, energy: float) -> float:
    """Regime-appropriate WKB quantization function at ``energy``."""
    check_parity(geo, parity)
    if classify_regime(pot, energy, geo) is Regime.INSIDE:
        return inside_residual(pot, geo, parity, energy)
    return outside_residual(pot, geo, parity, energy)


def _inside_label(pot, geo, parity, energy) -> int:
    alpha, _ = _inside_phases(pot, geo, energy)
    centre = _ANTI_CENTRE if parity.vanishes_at_origin else _SYM_CENTRE
    return round((alpha - centre) / math.pi) - 1


def _outside_label(pot, geo, parity, energy) -> int:
    theta = allowed_action(pot, energy, 0.0, geo.b)
    if parity.vanishes_at_origin:
        return round(theta / math.pi) - 1
    return round(theta / math.pi - 0.5)


def _labelled_roots(pot: Potential, geo: Geometry, parity: Parity, n_max: int,
                    tol: float) -> dict[int, tuple[Root, Regime]]:
    step = phase_stepper(pot, geo)
    seam = seam_energy(pot, geo)
    found: dict[int, tuple[Root, Regime]] = {}

    if seam > SCAN_START:
        labels_past = []

        def past_inside(energy):
            return bool(labels_past) and labels_past[-1] > n_max

        for root in scan_roots(lambda e: inside_residual(pot, geo, parity, e),
                               SCAN_START, seam, step, tol, give_up=past_inside):
            label = _inside_label(pot, geo, parity, root.energy)
            labels_past.append(label)
            if 0 <= label <= n_max:
                found.setdefault(label, (root, Regime.INSIDE))

    # theta_b >= (n_max + 2) pi is past every wanted outside root.
    ceiling = (n_max + 2) * math.pi

    def past_outside(energy):
        return allowed_action(pot, energy, 0.0, geo.b) > ceiling

    start = max(seam, SCAN_START)
    for root in scan_roots(lambda e: outside_residual(pot, geo, parity, e),
                           start, math.inf, step, tol, give_up=past_outside):
        label = _outside_label(pot, geo, parity, root.energy)
        if 0 <= label <= n_max:
            found.setdefault(label, (root, Regime.OUTSIDE))
        if label >= n_max:
            break
    return found


def _to_result(root: Root, regime: Regime, pot, geo, parity, n) -> EigenResult:
    seam = seam_energy(pot, geo)
    if seam > 0 and abs(root.energy - seam) <= SEAM_REL_TOL * seam:
        raise DegenerateRootError(
            f"WKB root E={root.energy!r} for {parity.value} n={n} sits on the regime seam V(b)={seam!r}",
            estimate=root.energy,
        )
    return EigenResult(
        energy=root.energy,
        method=Method.WKB,
        parity=parity,
        index=n,
        regime=classify_regime(pot, root.energy, geo),
        residual=root.residual,
        bracket=root.bracket,
        evaluations=root.evaluations,
    )


def wkb_eigenvalue(pot: Potential, geo: Geometry, parity: Parity, n: int,
                   tol: float = DEFAULT_TOL) -> EigenResult:
    """The n-th (0-based) WKB level of the given parity class."""
    check_parity(geo, parity)
    if n < 0:
        raise ValueError(f"state index must be >= 0, got {n}")
    if not tol > 0:
        raise ValueError(f"tol must be > 0, got {tol}")
    found = _labelled_roots(pot, geo, parity, n, tol)
    if n not in found:
        raise SearchError(f"no WKB root with label n={n} for parity {parity.value}")
    root, regime = found[n]
    return _to_result(root, regime, pot, geo, parity, n)


def wkb_spectrum(pot: Potential, geo: Geometry, count: int,
                 tol: float = DEFAULT_TOL) -> list[EigenResult]:
    """Lowest ``count`` WKB levels, parities interleaved for a symmetric box."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    levels = []
    for parity in geo.parities:
        per_parity = count if len(geo.parities) == 1 else (count + 2) // 2
        found = _labelled_roots(pot, geo, parity, per_parity - 1, tol)
        for n in range(per_parity):
            if n not in found:
                raise SearchError(f"no WKB root with label n={n} for parity {parity.value}")
            root, regime = found[n]
            levels.append(_to_result(root, regime, pot, geo, parity, n))
    levels.sort(key=lambda r: r.energy)
    return levels[:count]
