"""Exact and asymptotic SU(2) / SU(1,1) Clebsch-Gordan coefficients.

Exact tables come from a tridiagonal eigenproblem with analytically known
eigenvalues; asymptotic tables from the shifted harmonic approximation.
"""

from .algebra import (
    HalfInt,
    Su2Context,
    Su11Context,
    F_and_derivs,
    make_su2_context,
    make_su11_context,
    su2_kernels,
    su11_kernels,
    target_eigenvalue,
)
from .hermite import OscillatorShape, hermite_poly, oscillator_wf
from .sha import ShaParams, approx_cg, simplified_params, solve_sha_full
from .stretched import stretched_cg_asymptotic, stretched_cg_exact
from .tables import CoeffTable
from .tridiag import SymTridiag, build_matrix, exact_cg, gram_residual

__all__ = [
    "HalfInt",
    "Su2Context",
    "Su11Context",
    "F_and_derivs",
    "make_su2_context",
    "make_su11_context",
    "su2_kernels",
    "su11_kernels",
    "target_eigenvalue",
    "OscillatorShape",
    "hermite_poly",
    "oscillator_wf",
    "ShaParams",
    "approx_cg",
    "simplified_params",
    "solve_sha_full",
    "stretched_cg_asymptotic",
    "stretched_cg_exact",
    "CoeffTable",
    "SymTridiag",
    "build_matrix",
    "exact_cg",
    "gram_residual",
]
