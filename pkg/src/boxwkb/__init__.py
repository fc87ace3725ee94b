"""Semiclassical and Airy-function eigenvalues of particles in hard-wall boxes."""

from ._kernels import BACKEND
from .airy import AiryQuad, ai, airy_all, airy_first_zero, bi
from .maf import maf_coefficients, maf_eigenvalue, maf_residual, maf_spectrum, maf_wavefunction
from .model import (
    AiryRangeError,
    BoxMode,
    BoxwkbError,
    ConvergenceError,
    DegenerateRootError,
    DomainError,
    EigenResult,
    Geometry,
    Method,
    Parity,
    Potential,
    QuadratureError,
    Regime,
    SearchError,
    classify_regime,
    seam_energy,
    turning_point,
)
from .oracle import (
    ConvergenceReport,
    MeshSpec,
    oracle_convergence_report,
    oracle_eigenvalue,
    oracle_spectrum,
)
from .phase import PhaseQuantities, allowed_action, forbidden_action, phase_quantities, xi_at
from .tables import TableReport, TableSpec, run_table
from .wkb import wkb_eigenvalue, wkb_residual, wkb_spectrum

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
