"""Bracketing and refinement of roots of oscillatory quantization functions.

Quantization residuals are quasi-periodic in the action ``theta_b(E)``, not
in E, so the scan advances E by a fixed action increment using the local
derivative ``d theta_b / dE``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterator

from scipy.optimize import brentq

from .model import ConvergenceError, Geometry, Potential, SearchError
from .phase import action_energy_derivative

SCAN_START = 1e-8
PHASE_STEP = math.pi / 8.0
ENERGY_CEILING = 1e12
_RTOL = 4.0 * 2.220446049250313e-16


@dataclass(frozen=True)
class Root:
    energy: float
    bracket: tuple[float, float]
    residual: float
    evaluations: int


class CountingFunction:
    def __init__(self, f: Callable[[float], float]):
        self.f = f
        self.calls = 0

    def __call__(self, energy: float) -> float:
        self.calls += 1
        return self.f(energy)


def phase_stepper(pot: Potential, geo: Geometry, phase_step: float = PHASE_STEP):
    """Energy step that advances ``theta_b`` by about ``phase_step``.

    The step never more than doubles E, which bounds the growth of the
    action rate within one step for every exponent in use.
    """

    def step(energy: float) -> float:
        return min(phase_step / action_energy_derivative(pot, energy, geo), energy)

    return step


def refine(f: Callable[[float], float], lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Root of ``f`` inside a sign-change bracket, with its residual.

    Brent's method first stops at ``|dE| <= 1e-12 max(1, E)``; if the
    residual is still above ``tol`` it is rerun down to a few ulps.
    """
    xtol = 1e-12 * max(1.0, abs(lo))
    root = brentq(f, lo, hi, xtol=xtol, rtol=_RTOL)
    res = f(root)
    if abs(res) <= tol:
        return root, res
    root = brentq(f, lo, hi, xtol=1e-300, rtol=_RTOL)
    res = f(root)
    if abs(res) > tol:
        raise ConvergenceError(
            f"sign change in [{lo!r}, {hi!r}] does not close to |residual| <= {tol:g} "
            f"(residual {res:.3e} at E={root!r})"
        )
    return root, res


def scan_roots(f: Callable[[float], float], start: float, stop: float,
               step: Callable[[float], float], tol: float,
               give_up: Callable[[float], bool] | None = None) -> Iterator[Root]:
    """Yield roots of ``f`` on ``[start, stop]`` in ascending order.

    ``step(E)`` gives the grid spacing at E. ``give_up(E)`` ends the scan
    early once no further root of interest can lie above E. Reaching
    ``ENERGY_CEILING`` without being told to stop raises SearchError.
    """
    fc = CountingFunction(f)
    a = start
    fa = fc(a)
    while a < stop:
        if give_up is not None and give_up(a):
            return
        if a > ENERGY_CEILING:
            raise SearchError(f"no root found below the scan ceiling E={ENERGY_CEILING:g}")
        b = min(a + step(a), stop)
        fb = fc(b)
        if fb == 0.0 and b < stop:
            b = b * (1.0 + 1e-9)
            fb = fc(b)
        if fa == 0.0 or (fa < 0.0) != (fb < 0.0):
            if fa == 0.0:
                energy, res = a, 0.0
                bracket = (math.nextafter(a, -math.inf), b)
            else:
                energy, res = refine(fc, a, b, tol)
                bracket = (a, b)
                if not bracket[0] < energy < bracket[1]:
                    bracket = (math.nextafter(a, -math.inf), math.nextafter(b, math.inf))
            yield Root(energy, bracket, res, fc.calls)
        a, fa = b, fb
