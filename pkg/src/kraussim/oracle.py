"""Numerical reference implementations, independent of the closed forms.

Everything here exists to certify the analytic modules: a fixed-step RK4
integrator driven by the component equations, and a scaling-and-squaring
matrix exponential for the vectorized generator.  To keep the check honest
this module must not import from :mod:`kraussim.propagator` or
:mod:`kraussim.kraus`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .model import (
    DEFAULT_TOLERANCES,
    ConsistencyError,
    ParameterError,
    SystemParams,
    ToleranceSet,
    validate_density,
)

__all__ = ["IntegratorConfig", "lindblad_rhs", "integrate_rk4", "matrix_exponential"]

# Scaling-and-squaring is reliable far beyond the ||A t|| ~ 50 this package
# ever produces; past this cap the result risks overflow, so refuse.
_EXP_NORM_CAP = 300.0


@dataclass(frozen=True)
class IntegratorConfig:
    steps: int = 10_000
    validate_each_step: bool = False


def lindblad_rhs(params: SystemParams, rho: np.ndarray) -> np.ndarray:
    """Right-hand side of the master equation, one component at a time.

    Accepts any leading batch dimensions on a trailing 3x3 matrix.
    """
    r = np.asarray(rho, dtype=complex)
    if r.shape[-2:] != (3, 3):
        raise ParameterError(f"expected trailing 3x3 axes, got shape {r.shape}")
    w2 = 0.5 * params.rabi
    k = params.kappa
    iw = 1j * params.omega
    out = np.empty_like(r)
    out[..., 0, 0] = -w2 * (r[..., 0, 1] + r[..., 1, 0])
    out[..., 1, 1] = w2 * (r[..., 0, 1] + r[..., 1, 0]) - k * r[..., 1, 1]
    out[..., 0, 1] = w2 * (r[..., 0, 0] - r[..., 1, 1]) - 0.5 * k * r[..., 0, 1]
    out[..., 1, 0] = w2 * (r[..., 0, 0] - r[..., 1, 1]) - 0.5 * k * r[..., 1, 0]
    out[..., 2, 2] = k * r[..., 1, 1]
    out[..., 0, 2] = -w2 * r[..., 1, 2] - iw * r[..., 0, 2]
    out[..., 1, 2] = w2 * r[..., 0, 2] - (0.5 * k + iw) * r[..., 1, 2]
    out[..., 2, 0] = -w2 * r[..., 2, 1] + iw * r[..., 2, 0]
    out[..., 2, 1] = w2 * r[..., 2, 0] - (0.5 * k - iw) * r[..., 2, 1]
    return out


def integrate_rk4(
    params: SystemParams,
    rho0: np.ndarray,
    t: float,
    config: IntegratorConfig | None = None,
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """Propagate ``rho0`` to time ``t`` with classical fixed-step RK4."""
    if config is None:
        config = IntegratorConfig()
    if not math.isfinite(t) or t < 0.0:
        raise ParameterError(f"time must be finite and non-negative, got {t!r}")
    if config.steps < 1:
        raise ParameterError(f"steps must be >= 1, got {config.steps!r}")
    rho = np.ascontiguousarray(np.asarray(rho0, dtype=complex))
    if rho.shape != (3, 3):
        raise ParameterError(f"expected a 3x3 state, got shape {rho.shape}")
    if t == 0.0:
        return rho.copy()
    if not config.validate_each_step:
        return np.asarray(
            backend.rk4_lindblad(params.kappa, params.rabi, params.omega, rho, t, config.steps)
        )
    h = t / config.steps
    for step in range(config.steps):
        rho = np.ascontiguousarray(
            backend.rk4_lindblad(params.kappa, params.rabi, params.omega, rho, h, 1)
        )
        report = validate_density(rho, tolerances)
        if not report.ok:
            raise ConsistencyError(
                f"integrator state invalid after step {step + 1}: "
                f"trace dev {report.trace_deviation:.3e}, "
                f"min eigenvalue {report.min_eigenvalue:.3e}"
            )
    return rho


def matrix_exponential(matrix: np.ndarray, t: float = 1.0) -> np.ndarray:
    """exp(matrix * t) by scaling and squaring with a Taylor core."""
    m = np.asarray(matrix, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ParameterError(f"expected a square matrix, got shape {m.shape}")
    if not math.isfinite(t):
        raise ParameterError(f"time must be finite, got {t!r}")
    if not np.all(np.isfinite(m.real)) or not np.all(np.isfinite(m.imag)):
        raise ParameterError("matrix entries must be finite")

    a = m * t
    norm = float(np.linalg.norm(a, 1))
    if norm > _EXP_NORM_CAP:
        raise OverflowError(f"||matrix * t|| = {norm:.3g} exceeds the supported range")
    squarings = 0
    if norm > 0.5:
        squarings = int(math.ceil(math.log2(norm / 0.5)))
        a = a / (2.0**squarings)
    result = np.eye(m.shape[0], dtype=complex)
    term = np.eye(m.shape[0], dtype=complex)
    for order in range(1, 30):
        term = term @ a / order
        result = result + term
        if float(np.linalg.norm(term, 1)) < 1e-20:
            break
    for _ in range(squarings):
        result = result @ result
    return result
