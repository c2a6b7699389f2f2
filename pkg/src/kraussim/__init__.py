"""Kraus-operator simulation of a decaying three-level atom-cavity system.

The package models a single two-level atom resonantly coupled to a leaky
cavity mode at zero temperature.  Only three product states take part in
the dynamics; throughout the code they are ordered

    index 0  --  atom excited, no photon
    index 1  --  atom in ground state, one photon in the cavity
    index 2  --  atom in ground state, no photon (the decay sink)

Density matrices are 3x3 complex arrays in that basis.  The main entry
points are :func:`evolve_analytic` (closed-form propagator), the exact and
differential Kraus constructions in :mod:`kraussim.kraus`, and an
independent integrator in :mod:`kraussim.oracle` used for cross-checks.
"""

from .backend import BACKEND, COMPILED
from .generating import GeneratingValues, LimitCase, generating_values, limit_case
from .kraus import (
    JumpSpec,
    KrausKind,
    KrausSet,
    NormalizationError,
    RegimeError,
    StepDiagnostics,
    apply_channel,
    completeness_defect,
    differential_kraus,
    evolve_discrete,
    exact_kraus,
)
from .metrics import (
    EvolutionRecord,
    distance,
    re_approx,
    relative_error,
    relative_error_magnitude,
    spectral_norm,
)
from .model import (
    ConsistencyError,
    ParameterError,
    Regime,
    SystemParams,
    ToleranceSet,
    ValidationReport,
    devectorize,
    initial_state,
    make_params,
    validate_density,
    vectorize,
)
from .oracle import IntegratorConfig, integrate_rk4, lindblad_rhs, matrix_exponential
from .propagator import analytic_propagator, drift_matrix, evolve_analytic

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "COMPILED",
    "ConsistencyError",
    "EvolutionRecord",
    "GeneratingValues",
    "IntegratorConfig",
    "JumpSpec",
    "KrausKind",
    "KrausSet",
    "LimitCase",
    "NormalizationError",
    "ParameterError",
    "Regime",
    "RegimeError",
    "StepDiagnostics",
    "SystemParams",
    "ToleranceSet",
    "ValidationReport",
    "analytic_propagator",
    "apply_channel",
    "completeness_defect",
    "devectorize",
    "differential_kraus",
    "distance",
    "drift_matrix",
    "evolve_analytic",
    "evolve_discrete",
    "exact_kraus",
    "generating_values",
    "initial_state",
    "integrate_rk4",
    "limit_case",
    "lindblad_rhs",
    "make_params",
    "matrix_exponential",
    "re_approx",
    "relative_error",
    "relative_error_magnitude",
    "spectral_norm",
    "validate_density",
    "vectorize",
    "__version__",
]
