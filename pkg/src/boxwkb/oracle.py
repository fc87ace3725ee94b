"""Finite-difference reference solver for the hard-wall Schrodinger problem.

``-psi'' + V psi = E psi`` is discretized with the 3-point Laplacian on the
interior nodes of a uniform mesh (the Dirichlet walls are the deleted end
rows). Eigenvalues of the symmetric tridiagonal matrix come from Sturm
sequence bisection, then Richardson extrapolation over ``h`` and ``h/2``
removes the ``O(h**2)`` term.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import solve_banded
from scipy.optimize import brentq

from ._kernels import bisect_eigenvalue, sturm_count
from .model import (
    BoxMode,
    ConvergenceError,
    EigenResult,
    Geometry,
    Method,
    Parity,
    Potential,
    classify_regime,
    evaluate_potential,
)

DEFAULT_POINTS = 2048
MIN_POINTS = 64


@dataclass(frozen=True)
class MeshSpec:
    """Interior node count; spacing is ``span / (points + 1)``."""

    points: int = DEFAULT_POINTS

    def __post_init__(self):
        if self.points < MIN_POINTS:
            raise ValueError(f"mesh needs at least {MIN_POINTS} interior points, got {self.points}")

    def spacing(self, geo: Geometry) -> float:
        lo, hi = geo.span
        return (hi - lo) / (self.points + 1)

    def refined(self) -> "MeshSpec":
        return MeshSpec(2 * self.points + 1)


def _matrix(pot: Potential, geo: Geometry, mesh: MeshSpec):
    lo, _ = geo.span
    h = mesh.spacing(geo)
    x = lo + h * np.arange(1, mesh.points + 1)
    inv_h2 = 1.0 / (h * h)
    diag = np.ascontiguousarray(2.0 * inv_h2 + evaluate_potential(pot, x), dtype=float)
    off2 = np.full(mesh.points - 1, inv_h2 * inv_h2)
    return x, diag, off2, inv_h2


def mesh_eigenvalues(pot: Potential, geo: Geometry, count: int, mesh: MeshSpec) -> np.ndarray:
    """Lowest ``count`` eigenvalues of the discretized operator on one mesh."""
    _, diag, off2, inv_h2 = _matrix(pot, geo, mesh)
    lower = float(diag.min()) - 2.0 * inv_h2
    upper = float(diag.max()) + 2.0 * inv_h2
    values = []
    for k in range(count):
        lam = bisect_eigenvalue(diag, off2, k, lower, upper)
        if sturm_count(diag, off2, upper) <= k:
            raise ConvergenceError(f"bisection lost eigenvalue {k} (Sturm count below upper bound)")
        values.append(lam)
        lower = lam
    return np.asarray(values)


def _level_parity(geo: Geometry, level: int) -> tuple[Parity, int]:
    if geo.mode is BoxMode.HALF_LINE:
        return Parity.HALF_LINE, level
    return (Parity.SYMMETRIC if level % 2 == 0 else Parity.ANTISYMMETRIC), level // 2


def oracle_spectrum(pot: Potential, geo: Geometry, count: int,
                    mesh: MeshSpec = MeshSpec()) -> list[EigenResult]:
    """Lowest ``count`` levels, extrapolated from meshes ``h`` and ``h/2``.

    Parities on a symmetric box follow the node count (level k has k nodes).
    ``residual`` holds the extrapolation correction to the fine-mesh value
    and the bracket spans the coarse-to-extrapolated change; both are error
    indicators, not quantization residuals.
    """
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if count > mesh.points // 8:
        raise ValueError(f"count={count} exceeds the resolution guard points/8={mesh.points // 8}")
    coarse = mesh_eigenvalues(pot, geo, count, mesh)
    fine = mesh_eigenvalues(pot, geo, count, mesh.refined())
    extrapolated = (4.0 * fine - coarse) / 3.0
    results = []
    for level in range(count):
        energy = float(extrapolated[level])
        spread = max(abs(energy - coarse[level]), 4.0 * np.spacing(energy))
        parity, index = _level_parity(geo, level)
        results.append(EigenResult(
            energy=energy,
            method=Method.ORACLE,
            parity=parity,
            index=index,
            regime=classify_regime(pot, energy, geo),
            residual=float(energy - fine[level]),
            bracket=(energy - spread, energy + spread),
            evaluations=0,
        ))
    return results


def oracle_eigenvalue(pot: Potential, geo: Geometry, parity: Parity, n: int,
                      mesh: MeshSpec = MeshSpec()) -> EigenResult:
    """Oracle level ``n`` within a parity class."""
    level = n if geo.mode is BoxMode.HALF_LINE else 2 * n + (parity is Parity.ANTISYMMETRIC)
    spectrum = oracle_spectrum(pot, geo, level + 1, mesh)
    result = spectrum[level]
    if result.parity is not parity:
        raise ValueError(f"parity {parity.value} is not valid for this geometry")
    return result


def oracle_eigenvector(pot: Potential, geo: Geometry, level: int,
                       mesh: MeshSpec = MeshSpec()) -> tuple[np.ndarray, np.ndarray]:
    """Mesh nodes and unit eigenvector of one level, by inverse iteration."""
    x, diag, _, inv_h2 = _matrix(pot, geo, mesh)
    lam = mesh_eigenvalues(pot, geo, level + 1, mesh)[level]
    # shift just off the eigenvalue so the solve stays well posed
    shift = lam * (1.0 + 1e-10) + 1e-12
    banded = np.zeros((3, mesh.points))
    banded[0, 1:] = -inv_h2
    banded[1, :] = diag - shift
    banded[2, :-1] = -inv_h2
    v = np.ones(mesh.points) + 0.01 * np.cos(np.arange(mesh.points))
    for _ in range(4):
        v = solve_banded((1, 1), banded, v)
        v /= np.linalg.norm(v)
    return x, v


@dataclass
class ConvergenceReport:
    """Per-mesh eigenvalues of one level and the observed convergence order."""

    points: list[tuple[float, float]]
    orders: list[float]
    extrapolated: float
    warnings: list[str] = field(default_factory=list)


def _observed_order(hs, es) -> float:
    (h1, h2, h3), (e1, e2, e3) = hs, es
    ratio = (e1 - e2) / (e2 - e3)

    def gap(p):
        return (h1 ** p - h2 ** p) / (h2 ** p - h3 ** p) - ratio

    return brentq(gap, 0.05, 20.0)


def oracle_convergence_report(pot: Potential, geo: Geometry, level: int,
                              meshes: list[MeshSpec]) -> ConvergenceReport:
    """Unextrapolated eigenvalue of ``level`` on each mesh, with order estimates.

    ``level`` counts nodes (0 is the ground state of the whole box).
    """
    if len(meshes) < 3:
        raise ValueError("need at least three meshes")
    hs = [m.spacing(geo) for m in meshes]
    if any(b >= a for a, b in zip(hs, hs[1:])):
        raise ValueError("mesh spacings must be strictly decreasing")
    es = [float(mesh_eigenvalues(pot, geo, level + 1, m)[level]) for m in meshes]
    report = ConvergenceReport(points=list(zip(hs, es)), orders=[], extrapolated=math.nan)
    for i in range(len(meshes) - 2):
        d1, d2 = es[i] - es[i + 1], es[i + 1] - es[i + 2]
        if d1 == 0.0 or d2 == 0.0 or (d1 > 0) != (d2 > 0):
            report.warnings.append(f"non-monotone convergence across meshes {i}..{i + 2}")
            report.orders.append(math.nan)
            continue
        try:
            order = _observed_order(hs[i:i + 3], es[i:i + 3])
        except ValueError:
            order = math.nan
        report.orders.append(order)
        if not 1.8 <= order <= 2.2:
            report.warnings.append(f"observed order {order:.3f} outside [1.8, 2.2] on meshes {i}..{i + 2}")
    r2 = (hs[-2] / hs[-1]) ** 2
    report.extrapolated = es[-1] + (es[-1] - es[-2]) / (r2 - 1.0)
    for message in report.warnings:
        warnings.warn(message, RuntimeWarning, stacklevel=2)
    return report
