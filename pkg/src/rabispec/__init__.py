"""Spectra of the quantum Rabi model with static bias.

Numerically exact displaced-basis diagonalization plus the analytical
approximation ladder: variational ground state, zero-order (ZOA),
strong-coupling second-order perturbation (DSC), Van Vleck perturbation
(VVP), and the first/second-order displaced-basis schemes (GRWA, BRWA)
with closed-form polynomial root solvers.
"""

from ._kernels import backend_name
from .basis import (MAX_INDEX, ModelParams, OverlapTable, build_overlap_table,
                    laguerre, overlap)
from .closedform import (LevelPair, VariationalResult, dsc_levels,
                         strong_coupling_ground, variational_ground, vvp_ladder,
                         vvp_levels, vvp_single, weak_coupling_ground,
                         zoa_eigenstate, zoa_levels)
from .errors import (ComplexRadicalError, ConvergenceError, DiscriminantError,
                     DomainError, ResonanceError, ResourceLimitError)
from .exact import (HamiltonianMatrix, Spectrum, TRUNCATION_SCHEDULE, assemble,
                    converged_spectrum, eigen_spectrum, eigen_system,
                    parity_spectrum)
from .grwa import (BlockCoefficients, GrwaLevels, brwa_levels, brwa_manifold,
                   foa_excited, foa_ground, foa_levels, grwa_biased_levels,
                   grwa_biased_manifold)
from .polyroots import CubicRoots, QuarticRoots, cubic_real_roots, quartic_roots

__version__ = "0.1.0"

__all__ = [
    "MAX_INDEX", "ModelParams", "OverlapTable", "build_overlap_table",
    "laguerre", "overlap",
    "HamiltonianMatrix", "Spectrum", "TRUNCATION_SCHEDULE", "assemble",
    "converged_spectrum", "eigen_spectrum", "eigen_system", "parity_spectrum",
    "LevelPair", "VariationalResult", "variational_ground",
    "weak_coupling_ground", "strong_coupling_ground", "zoa_levels",
    "zoa_eigenstate", "dsc_levels", "vvp_levels", "vvp_single", "vvp_ladder",
    "BlockCoefficients", "GrwaLevels", "foa_excited", "foa_ground",
    "foa_levels", "grwa_biased_manifold", "grwa_biased_levels",
    "brwa_manifold", "brwa_levels",
    "CubicRoots", "QuarticRoots", "cubic_real_roots", "quartic_roots",
    "DomainError", "ResourceLimitError", "ConvergenceError",
    "DiscriminantError", "ComplexRadicalError", "ResonanceError",
    "backend_name", "__version__",
]
