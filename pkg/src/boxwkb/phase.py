"""Phase and action integrals entering the quantization conditions.

Every integral against the turning point ``x_t`` is taken in the variable
``u = sqrt(|x - x_t|)``. The square-root behaviour of ``E - V`` at ``x_t`` is
then absorbed into a factor ``u`` and the integrand is smooth on both ends.
``E - V`` itself is formed as ``E * (1 - (x / x_t)**p)`` through
``expm1``/``log1p`` so it keeps full relative precision near ``x_t``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .model import DomainError, Geometry, Potential, Regime, classify_regime, turning_point
from .quadrature import integrate

QUARTER_PI = 0.25 * math.pi
_LIMIT_SLACK = 1e-12


class Side(enum.Enum):
    ALLOWED = "allowed"
    FORBIDDEN = "forbidden"


@dataclass(frozen=True)
class PhaseQuantities:
    """Actions at one energy.

    ``theta_b`` is the action over the allowed part of ``[0, b]``, i.e. up
    to ``min(b, x_t)``; it is continuous across the regime change and
    strictly increasing in E. ``alpha`` (which includes the quarter-period
    shift) and ``beta`` exist only when the turning point is inside the box.
    """

    theta_b: float
    regime: Regime
    alpha: float | None = None
    beta: float | None = None


@dataclass(frozen=True)
class XiValue:
    xi: float
    side: Side


def gamma_sq(pot: Potential, energy: float, x: float) -> float:
    return energy - pot.strength * abs(x) ** pot.exponent


def _allowed_integrand(pot: Potential, energy: float, xt: float):
    p = pot.exponent

    def f(u):
        w = u * u
        gap = -energy * np.expm1(p * np.log1p(-np.minimum(w / xt, 1.0)))
        return 2.0 * u * np.sqrt(np.maximum(gap, 0.0))

    return f


def _forbidden_integrand(pot: Potential, energy: float, xt: float):
    p = pot.exponent

    def f(u):
        gap = energy * np.expm1(p * np.log1p(u * u / xt))
        return 2.0 * u * np.sqrt(np.maximum(gap, 0.0))

    return f


def _check_order(x_lo: float, x_hi: float) -> None:
    if x_lo > x_hi:
        raise DomainError(f"integration limits out of order: {x_lo} > {x_hi}")


def allowed_action(pot: Potential, energy: float, x_lo: float, x_hi: float) -> float:
    """``int_{x_lo}^{x_hi} sqrt(E - V(x)) dx`` for ``0 <= x_lo <= x_hi <= x_t``."""
    _check_order(x_lo, x_hi)
    if x_lo < 0:
        raise DomainError(f"lower limit {x_lo} is negative")
    xt = turning_point(pot, energy)
    if math.isinf(xt):
        return math.sqrt(energy) * (x_hi - x_lo)
    if x_hi > xt * (1.0 + _LIMIT_SLACK):
        raise DomainError(f"upper limit {x_hi} lies past the turning point {xt}")
    u_lo = math.sqrt(max(xt - x_hi, 0.0))
    u_hi = math.sqrt(max(xt - x_lo, 0.0))
    return integrate(_allowed_integrand(pot, energy, xt), u_lo, u_hi)


def forbidden_action(pot: Potential, energy: float, x_lo: float, x_hi: float) -> float:
    """``int_{x_lo}^{x_hi} sqrt(V(x) - E) dx`` for ``x_t <= x_lo <= x_hi``."""
    _check_order(x_lo, x_hi)
    xt = turning_point(pot, energy)
    if x_lo < xt * (1.0 - _LIMIT_SLACK):
        raise DomainError(f"lower limit {x_lo} lies below the turning point {xt}")
    if x_lo == x_hi:
        return 0.0
    u_lo = math.sqrt(max(x_lo - xt, 0.0))
    u_hi = math.sqrt(max(x_hi - xt, 0.0))
    return integrate(_forbidden_integrand(pot, energy, xt), u_lo, u_hi)


def action_energy_derivative(pot: Potential, energy: float, geo: Geometry) -> float:
    """d(theta_b)/dE = ``int_0^{min(b, x_t)} dx / (2 sqrt(E - V))``."""
    xt = turning_point(pot, energy)
    if math.isinf(xt):
        return geo.b / (2.0 * math.sqrt(energy))
    top = min(geo.b, xt)
    p = pot.exponent

    def f(u):
        w = u * u
        gap = -energy * np.expm1(p * np.log1p(-np.minimum(w / xt, 1.0)))
        # u / sqrt(gap) -> finite limit as u -> 0; guard the exact zero node.
        with np.errstate(divide="ignore", invalid="ignore"):
            out = u / np.sqrt(gap)
        limit = math.sqrt(xt / (p * energy))
        return np.where(u > 0, out, limit)

    u_lo = math.sqrt(max(xt - top, 0.0))
    return integrate(f, u_lo, math.sqrt(xt))


def phase_quantities(pot: Potential, energy: float, geo: Geometry) -> PhaseQuantities:
    regime = classify_regime(pot, energy, geo)
    if regime is Regime.OUTSIDE:
        return PhaseQuantities(theta_b=allowed_action(pot, energy, 0.0, geo.b), regime=regime)
    xt = turning_point(pot, energy)
    inner = allowed_action(pot, energy, 0.0, xt)
    return PhaseQuantities(
        theta_b=inner,
        regime=regime,
        alpha=inner + QUARTER_PI,
        beta=forbidden_action(pot, energy, xt, geo.b),
    )


def xi_at(pot: Potential, energy: float, x: float) -> XiValue:
    """Airy argument of the uniform (MAF) solution at ``x >= 0``."""
    if x < 0:
        raise DomainError(f"xi is defined for x >= 0, got {x}")
    xt = turning_point(pot, energy)
    if math.isinf(xt):
        raise DomainError("the free box has no turning point; xi is undefined")
    if x <= xt:
        action = allowed_action(pot, energy, x, xt)
        return XiValue(-((1.5 * action) ** (2.0 / 3.0)), Side.ALLOWED)
    action = forbidden_action(pot, energy, xt, x)
    return XiValue((1.5 * action) ** (2.0 / 3.0), Side.FORBIDDEN)
