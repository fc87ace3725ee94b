"""Physical model shared by every solver.

Units throughout are hbar = 2m = 1, so the Schrodinger equation reads
``psi'' + (E - V(x)) psi = 0``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

TIE_TOL = 1e-12


class BoxwkbError(Exception):
    """Base class for solver failures."""


class DomainError(BoxwkbError, ValueError):
    pass


class AiryRangeError(BoxwkbError, ValueError):
    pass


class QuadratureError(BoxwkbError, ArithmeticError):
    pass


class SearchError(BoxwkbError):
    """No sign change was found below the scan ceiling."""


class DegenerateRootError(BoxwkbError):
    """A WKB root landed on the inside/outside regime seam.

    The near-root estimate is kept on ``estimate``.
    """

    def __init__(self, message: str, estimate: float):
        super().__init__(message)
        self.estimate = estimate


class ConvergenceError(BoxwkbError, ArithmeticError):
    pass


class BoxMode(enum.Enum):
    SYMMETRIC = "sym"
    HALF_LINE = "half"


class Parity(enum.Enum):
    SYMMETRIC = "sym"
    ANTISYMMETRIC = "anti"
    HALF_LINE = "half"

    @property
    def vanishes_at_origin(self) -> bool:
        return self is not Parity.SYMMETRIC


class Regime(enum.Enum):
    INSIDE = "inside"
    OUTSIDE = "outside"


class Method(enum.Enum):
    WKB = "wkb"
    MAF = "maf"
    ORACLE = "oracle"


@dataclass(frozen=True)
class Potential:
    """Power-law confining profile ``V(x) = strength * |x|**exponent``.

    ``strength == 0`` is the free box (V identically zero); it has no
    turning point and is always in the outside regime.
    """

    strength: float = 1.0
    exponent: float = 2.0

    def __post_init__(self):
        if not (self.strength >= 0 and math.isfinite(self.strength)):
            raise DomainError(f"strength must be >= 0, got {self.strength}")
        if not (self.exponent > 0 and math.isfinite(self.exponent)):
            raise DomainError(f"exponent must be > 0, got {self.exponent}")

    @classmethod
    def free(cls) -> "Potential":
        return cls(0.0, 1.0)

    @property
    def is_free(self) -> bool:
        return self.strength == 0.0

    def __call__(self, x):
        return evaluate_potential(self, x)


@dataclass(frozen=True)
class Geometry:
    """Hard-wall box: ``[-b, b]`` for SYMMETRIC mode, ``[0, b]`` for HALF_LINE."""

    mode: BoxMode
    b: float

    def __post_init__(self):
        if not (self.b > 0 and math.isfinite(self.b)):
            raise DomainError(f"box size must be > 0, got {self.b}")

    @classmethod
    def symmetric(cls, b: float) -> "Geometry":
        return cls(BoxMode.SYMMETRIC, float(b))

    @classmethod
    def half_line(cls, b: float) -> "Geometry":
        return cls(BoxMode.HALF_LINE, float(b))

    @property
    def parities(self) -> tuple[Parity, ...]:
        if self.mode is BoxMode.HALF_LINE:
            return (Parity.HALF_LINE,)
        return (Parity.SYMMETRIC, Parity.ANTISYMMETRIC)

    @property
    def span(self) -> tuple[float, float]:
        if self.mode is BoxMode.HALF_LINE:
            return (0.0, self.b)
        return (-self.b, self.b)


def check_parity(geo: Geometry, parity: Parity) -> None:
    if parity not in geo.parities:
        raise DomainError(f"parity {parity.value!r} is not valid for a {geo.mode.value!r} box")


@dataclass(frozen=True)
class EigenResult:
    energy: float
    method: Method
    parity: Parity
    index: int
    regime: Regime
    residual: float
    bracket: tuple[float, float]
    evaluations: int = 0


def evaluate_potential(pot: Potential, x):
    return pot.strength * abs(x) ** pot.exponent


def turning_point(pot: Potential, energy: float) -> float:
    """Positive root of ``V(x) = E``; infinite for the free box."""
    if not energy > 0:
        raise DomainError(f"energy must be > 0, got {energy}")
    if pot.is_free:
        return math.inf
    return (energy / pot.strength) ** (1.0 / pot.exponent)


def seam_energy(pot: Potential, geo: Geometry) -> float:
    """Energy at which the turning point reaches the wall, ``V(b)``."""
    return evaluate_potential(pot, geo.b)


def classify_regime(pot: Potential, energy: float, geo: Geometry) -> Regime:
    xt = turning_point(pot, energy)
    if xt < geo.b * (1.0 - TIE_TOL):
        return Regime.INSIDE
    return Regime.OUTSIDE
