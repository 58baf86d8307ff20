"""nlslab: a spectral laboratory for power-nonlinearity Schrodinger dynamics.

Periodic-box pseudospectral fields, a symmetric split-step integrator with
conservation guards, smoothing-multiplier (almost-conservation) diagnostics,
ground-state computation and orbital-distance fits, an exact-rational
Strichartz exponent solver, and a reproducible experiment harness.
"""

__version__ = "0.1.0"

from .backend import BACKEND
from .diagnostics import DiagnosticsRecord
from .functionals import (
    EquationParams,
    commutator_residual,
    gn_exponent,
    hamiltonian,
    lebesgue_norm,
    lyapunov,
    mass,
    nonlinearity,
    nonlinearity_gradient,
    sobolev_norm,
)
from .grid import BoxGrid, RepresentationError, SpectralField, transform
from .ground_state import GroundStateProfile, embed, ode_residual, shoot
from .integrator import (
    EvolutionError,
    EvolutionResult,
    SolverConfig,
    evolve,
    linear_substep,
    nonlinear_substep,
    strang_step,
)
from .operators import (
    MultiplierSpec,
    apply_smoothing,
    apply_symbol,
    fractional_derivative,
    frequency_split,
)
from .orbital import ModulationFit, dist_to_cylinder, optimal_phase, weinstein_ratio
from .exponents import (
    StrichartzExponents,
    check_subcritical,
    solve_exponents,
    verify_exponents,
)

__all__ = [
    "__version__",
    "BACKEND",
    "BoxGrid",
    "DiagnosticsRecord",
    "EquationParams",
    "EvolutionError",
    "EvolutionResult",
    "GroundStateProfile",
    "ModulationFit",
    "MultiplierSpec",
    "RepresentationError",
    "SolverConfig",
    "SpectralField",
    "StrichartzExponents",
    "apply_smoothing",
    "apply_symbol",
    "check_subcritical",
    "commutator_residual",
    "dist_to_cylinder",
    "embed",
    "evolve",
    "fractional_derivative",
    "frequency_split",
    "gn_exponent",
    "hamiltonian",
    "lebesgue_norm",
    "linear_substep",
    "lyapunov",
    "mass",
    "nonlinear_substep",
    "nonlinearity",
    "nonlinearity_gradient",
    "ode_residual",
    "optimal_phase",
    "shoot",
    "sobolev_norm",
    "solve_exponents",
    "strang_step",
    "transform",
    "verify_exponents",
    "weinstein_ratio",
]
