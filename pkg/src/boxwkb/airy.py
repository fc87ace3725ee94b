"""Airy functions Ai, Bi and their derivatives on the real line.

For ``|x| <= 10`` values come from a table of nodes spaced 0.5 apart, filled
once at import by stepping the ODE ``w'' = x w`` with local power series
(exact constants at the origin; Ai on the positive axis is seeded from the
asymptotic expansion at ``x = 10`` and stepped backwards, which is the
stable direction for the recessive solution). A query point is reached with
one more local series step of length at most 0.25. Beyond ``|x| = 10`` the
standard asymptotic expansions are summed to their smallest term, whose size
there is below ``exp(-2 * 21)``.
"""

from __future__ import annotations

import math
from functools import lru_cache
from typing import NamedTuple

from scipy.optimize import brentq

from ._kernels import airy_local
from .model import AiryRangeError

# Bi overflows soon after +100. On the oscillatory side only rounding of the
# phase (about eps * |x|**1.5) limits accuracy, so the range extends further.
MAX_ARG = 100.0
MIN_ARG = -1.0e5
X_SWITCH = 10.0
NODE_STEP = 0.5

_GAMMA_13 = math.gamma(1.0 / 3.0)
_GAMMA_23 = math.gamma(2.0 / 3.0)
AI0 = 3.0 ** (-2.0 / 3.0) / _GAMMA_23
AIP0 = -(3.0 ** (-1.0 / 3.0)) / _GAMMA_13
BI0 = 3.0 ** (-1.0 / 6.0) / _GAMMA_23
BIP0 = 3.0 ** (1.0 / 6.0) / _GAMMA_13

_SQRT_PI = math.sqrt(math.pi)


class AiryQuad(NamedTuple):
    ai: float
    bi: float
    ai_prime: float
    bi_prime: float


def _asymptotic_coefficients(count: int = 60) -> tuple[list[float], list[float]]:
    u = [1.0]
    for k in range(1, count):
        u.append(u[-1] * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k))
    v = [1.0] + [-(6 * k + 1) / (6 * k - 1) * u[k] for k in range(1, count)]
    return u, v


_U, _V = _asymptotic_coefficients()


def _sum_to_smallest(coeffs, inv_zeta, alternate: bool, parity: int | None = None) -> float:
    # Sums coeffs[k] * (+-1)**k * inv_zeta**k, stopping at the smallest term.
    # With ``parity`` set, only k of that parity enter and the sign alternates
    # over the selected terms.
    total = 0.0
    last = math.inf
    power = 1.0
    sign = 1.0
    for k, c in enumerate(coeffs):
        if parity is None or k % 2 == parity:
            term = sign * c * power
            if abs(term) > last:
                break
            total += term
            last = abs(term)
            if last < 1e-18 * abs(total):
                break
            if alternate:
                sign = -sign
        power *= inv_zeta
    return total


def _asymptotic_positive(x: float) -> AiryQuad:
    zeta = 2.0 / 3.0 * x * math.sqrt(x)
    inv = 1.0 / zeta
    q = x ** 0.25
    decay = math.exp(-zeta)
    grow = math.exp(zeta)
    ai = decay / (2.0 * _SQRT_PI * q) * _sum_to_smallest(_U, inv, True)
    aip = -q * decay / (2.0 * _SQRT_PI) * _sum_to_smallest(_V, inv, True)
    bi = grow / (_SQRT_PI * q) * _sum_to_smallest(_U, inv, False)
    bip = q * grow / _SQRT_PI * _sum_to_smallest(_V, inv, False)
    return AiryQuad(ai, bi, aip, bip)


def _asymptotic_negative(x: float) -> AiryQuad:
    z = -x
    zeta = 2.0 / 3.0 * z * math.sqrt(z)
    inv = 1.0 / zeta
    q = z ** 0.25
    s = math.sin(zeta + math.pi / 4.0)
    c = math.cos(zeta + math.pi / 4.0)
    pu = _sum_to_smallest(_U, inv, True, parity=0)
    qu = _sum_to_smallest(_U, inv, True, parity=1)
    pv = _sum_to_smallest(_V, inv, True, parity=0)
    qv = _sum_to_smallest(_V, inv, True, parity=1)
    ai = (s * pu - c * qu) / (_SQRT_PI * q)
    bi = (c * pu + s * qu) / (_SQRT_PI * q)
    aip = -q * (c * pv + s * qv) / _SQRT_PI
    bip = q * (s * pv - c * qv) / _SQRT_PI
    return AiryQuad(ai, bi, aip, bip)


def _build_nodes() -> dict[int, AiryQuad]:
    n_side = int(round(X_SWITCH / NODE_STEP))
    nodes = {0: AiryQuad(AI0, BI0, AIP0, BIP0)}
    ai, aip, bi, bip = AI0, AIP0, BI0, BIP0
    for j in range(1, n_side + 1):
        x0 = -(j - 1) * NODE_STEP
        ai, aip, bi, bip = airy_local(x0, ai, aip, bi, bip, -NODE_STEP)
        nodes[-j] = AiryQuad(ai, bi, aip, bip)
    # Bi forward from the origin (dominant direction).
    bi, bip = BI0, BIP0
    bi_pos = {}
    for j in range(1, n_side + 1):
        _, _, bi, bip = airy_local((j - 1) * NODE_STEP, 0.0, 0.0, bi, bip, NODE_STEP)
        bi_pos[j] = (bi, bip)
    # Ai backward from the asymptotic seed (its dominant direction).
    seed = _asymptotic_positive(X_SWITCH)
    ai, aip = seed.ai, seed.ai_prime
    ai_pos = {n_side: (ai, aip)}
    for j in range(n_side - 1, 0, -1):
        ai, aip, _, _ = airy_local((j + 1) * NODE_STEP, ai, aip, 0.0, 0.0, -NODE_STEP)
        ai_pos[j] = (ai, aip)
    for j in range(1, n_side + 1):
        nodes[j] = AiryQuad(ai_pos[j][0], bi_pos[j][0], ai_pos[j][1], bi_pos[j][1])
    return nodes


_NODES = _build_nodes()


def airy_all(x: float) -> AiryQuad:
    """Ai, Bi, Ai', Bi' at real ``x`` in ``[-1e5, 100]``.

    Raises AiryRangeError outside that range. Above it Bi overflows. Below
    ``x = -1000`` the error grows like ``eps * |x|**1.5`` relative to the
    oscillation amplitude, which is the conditioning of the functions
    themselves (one ulp of ``x`` moves the phase that much).
    """
    x = float(x)
    if not (MIN_ARG <= x <= MAX_ARG):
        raise AiryRangeError(f"Airy argument {x} outside [{MIN_ARG}, {MAX_ARG}]")
    if x > X_SWITCH:
        return _asymptotic_positive(x)
    if x < -X_SWITCH:
        return _asymptotic_negative(x)
    j = int(round(x / NODE_STEP))
    x0 = j * NODE_STEP
    h = x - x0
    node = _NODES[j]
    if h == 0.0:
        return node
    ai, aip, bi, bip = airy_local(x0, node.ai, node.ai_prime, node.bi, node.bi_prime, h)
    return AiryQuad(ai, bi, aip, bip)


def ai(x: float) -> float:
    return airy_all(x).ai


def bi(x: float) -> float:
    return airy_all(x).bi


@lru_cache(maxsize=None)
def airy_first_zero() -> float:
    """First negative zero of Ai, about -2.33811."""
    return brentq(ai, -3.0, -2.0, xtol=1e-15, rtol=1e-15)
