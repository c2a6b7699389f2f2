"""Domain types for the dissipative three-level atom-cavity model.

Basis convention, fixed across the whole package: index 0 is |e0> (atom
excited, cavity empty), index 1 is |g1> (atom ground, one photon), index 2
is |g0> (atom ground, cavity empty).  Density matrices are 3x3 complex
arrays in this basis; vectorized states are 9-vectors in row-major order
(rho11, rho12, rho13, rho21, rho22, rho23, rho31, rho32, rho33).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from ._linalg import hermitian_eigenvalues

__all__ = [
    "ParameterError",
    "ConsistencyError",
    "Regime",
    "ToleranceSet",
    "DEFAULT_TOLERANCES",
    "SystemParams",
    "make_params",
    "initial_state",
    "vectorize",
    "devectorize",
    "ValidationReport",
    "validate_density",
]


class ParameterError(ValueError):
    """Rejected input value (non-finite, negative rate, bad step count, ...)."""


class ConsistencyError(RuntimeError):
    """An internally computed state violated its own validity tolerances."""


class Regime(enum.Enum):
    """Damping character of the coupled dynamics, set by gamma = kappa/(2 Omega)."""

    OSCILLATORY = "oscillatory"
    CRITICAL = "critical"
    DISSIPATIVE = "dissipative"
    UNCOUPLED = "uncoupled"


@dataclass(frozen=True)
class ToleranceSet:
    """Validation tolerances shared across the package.

    ``positivity`` is the most negative eigenvalue still accepted, and
    ``critical`` is the half-width of the critical-damping band in gamma.
    """

    trace: float = 1e-10
    hermiticity: float = 1e-12
    positivity: float = -1e-10
    critical: float = 1e-9


DEFAULT_TOLERANCES = ToleranceSet()


@dataclass(frozen=True)
class SystemParams:
    """Rates of the resonant atom-cavity-reservoir system.

    kappa is the cavity decay rate, rabi the atom-cavity coupling, omega the
    shared resonance frequency.  gamma = kappa/(2 rabi) classifies the
    damping regime and is +inf when the coupling is switched off.
    """

    kappa: float
    rabi: float
    omega: float
    gamma: float
    regime: Regime


def make_params(
    kappa: float,
    rabi: float,
    omega: float,
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
) -> SystemParams:
    """Validate raw rates and classify the damping regime."""
    for name, value in (("kappa", kappa), ("rabi", rabi), ("omega", omega)):
        if not math.isfinite(value):
            raise ParameterError(f"{name} must be finite, got {value!r}")
        if value < 0:
            raise ParameterError(f"{name} must be non-negative, got {value!r}")
    if rabi == 0.0:
        return SystemParams(float(kappa), 0.0, float(omega), math.inf, Regime.UNCOUPLED)
    gamma = float(kappa) / (2.0 * float(rabi))
    if abs(gamma - 1.0) < tolerances.critical:
        regime = Regime.CRITICAL
    elif gamma > 1.0:
        regime = Regime.DISSIPATIVE
    else:
        regime = Regime.OSCILLATORY
    return SystemParams(float(kappa), float(rabi), float(omega), gamma, regime)


def initial_state(theta: float) -> np.ndarray:
    """Pure initial state cos(theta)|g0> + sin(theta)|e0> as a density matrix."""
    if not math.isfinite(theta):
        raise ParameterError(f"theta must be finite, got {theta!r}")
    c = math.cos(theta)
    s = math.sin(theta)
    rho = np.zeros((3, 3), dtype=complex)
    rho[0, 0] = s * s
    rho[0, 2] = c * s
    rho[2, 0] = c * s
    rho[2, 2] = c * c
    return rho


def vectorize(rho: np.ndarray) -> np.ndarray:
    """Flatten a 3x3 matrix to the 9-vector component order (row-major)."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (3, 3):
        raise ParameterError(f"expected a 3x3 matrix, got shape {rho.shape}")
    return rho.reshape(9).copy()


def devectorize(vec: np.ndarray) -> np.ndarray:
    """Inverse of :func:`vectorize`; exact (bitwise) round trip."""
    vec = np.asarray(vec, dtype=complex)
    if vec.shape != (9,):
        raise ParameterError(f"expected a 9-vector, got shape {vec.shape}")
    return vec.reshape(3, 3).copy()


@dataclass(frozen=True)
class ValidationReport:
    """Measured deviations of a candidate density matrix plus pass flags."""

    trace_deviation: float
    hermiticity_defect: float
    min_eigenvalue: float
    trace_ok: bool
    hermitian_ok: bool
    positive_ok: bool

    @property
    def ok(self) -> bool:
        return self.trace_ok and self.hermitian_ok and self.positive_ok


def validate_density(
    rho: np.ndarray, tolerances: ToleranceSet = DEFAULT_TOLERANCES
) -> ValidationReport:
    """Check trace, Hermiticity and positivity of ``rho``; never raises on
    a merely unphysical matrix, only on a malformed one."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (3, 3):
        raise ParameterError(f"density matrix must be 3x3, got shape {rho.shape}")
    trace_deviation = abs(complex(np.trace(rho)) - 1.0)
    hermiticity_defect = float(np.max(np.abs(rho - rho.conj().T)))
    # Eigenvalues of the Hermitian part; the defect is reported separately.
    min_eigenvalue = float(hermitian_eigenvalues(rho)[0])
    return ValidationReport(
        trace_deviation=trace_deviation,
        hermiticity_defect=hermiticity_defect,
        min_eigenvalue=min_eigenvalue,
        trace_ok=trace_deviation <= tolerances.trace,
        hermitian_ok=hermiticity_defect <= tolerances.hermiticity,
        positive_ok=min_eigenvalue >= tolerances.positivity,
    )
