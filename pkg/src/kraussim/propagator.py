"""Closed-form vectorized propagator of the master equation.

The nine density-matrix components evolve linearly, d[rho]/dt = A [rho] with
the component order documented in :mod:`kraussim.model`.  The propagator
F(t) = exp(A t) is assembled entrywise from the generating functions; no
numerical exponential is involved (the numerical route lives in
:mod:`kraussim.oracle` precisely so the two stay independent).
"""

from __future__ import annotations

import cmath

import numpy as np

from .generating import generating_values
from .model import (
    DEFAULT_TOLERANCES,
    ConsistencyError,
    SystemParams,
    ToleranceSet,
    devectorize,
    validate_density,
    vectorize,
)

__all__ = ["drift_matrix", "analytic_propagator", "evolve_analytic"]


def drift_matrix(params: SystemParams) -> np.ndarray:
    """The 9x9 generator A of the vectorized master equation."""
    k = params.kappa
    w2 = 0.5 * params.rabi
    iw = 1j * params.omega
    a = np.zeros((9, 9), dtype=complex)
    a[0, 1] = -w2
    a[0, 3] = -w2
    a[1, 0] = w2
    a[1, 1] = -0.5 * k
    a[1, 4] = -w2
    a[2, 2] = -iw
    a[2, 5] = -w2
    a[3, 0] = w2
    a[3, 3] = -0.5 * k
    a[3, 4] = -w2
    a[4, 1] = w2
    a[4, 3] = w2
    a[4, 4] = -k
    a[5, 2] = w2
    a[5, 5] = -0.5 * k - iw
    a[6, 6] = iw
    a[6, 7] = -w2
    a[7, 6] = w2
    a[7, 7] = iw - 0.5 * k
    a[8, 4] = k
    return a


def analytic_propagator(params: SystemParams, t: float) -> np.ndarray:
    """Closed-form F(t) = exp(A t), assembled from the generating functions."""
    gv = generating_values(params, t)
    lp = gv.lambda_plus
    lm = gv.lambda_minus
    l0 = gv.lambda_zero
    # 2*gamma*Lambda0^2 written through the sum identity so the uncoupled
    # limit (gamma -> inf, Lambda0 -> 0) stays finite.
    cross = l0 * (lp + lm)
    phase = cmath.exp(-1j * params.omega * t)
    phase_c = phase.conjugate()

    f = np.zeros((9, 9), dtype=complex)
    f[0, 0] = lp * lp
    f[0, 1] = -lp * l0
    f[0, 3] = -lp * l0
    f[0, 4] = l0 * l0
    f[1, 0] = lp * l0
    f[1, 1] = -lm * lp
    f[1, 3] = -l0 * l0
    f[1, 4] = lm * l0
    f[2, 2] = phase * lp
    f[2, 5] = -phase * l0
    f[3, 0] = lp * l0
    f[3, 1] = -l0 * l0
    f[3, 3] = -lm * lp
    f[3, 4] = lm * l0
    f[4, 0] = l0 * l0
    f[4, 1] = -lm * l0
    f[4, 3] = -lm * l0
    f[4, 4] = lm * lm
    f[5, 2] = phase * l0
    f[5, 5] = -phase * lm
    f[6, 6] = phase_c * lp
    f[6, 7] = -phase_c * l0
    f[7, 6] = phase_c * l0
    f[7, 7] = -phase_c * lm
    f[8, 0] = gv.drain_plus
    f[8, 1] = cross
    f[8, 3] = cross
    f[8, 4] = gv.drain_minus
    f[8, 8] = 1.0
    return f


def evolve_analytic(
    params: SystemParams,
    rho0: np.ndarray,
    t: float,
    *,
    validate: bool = True,
    tolerances: ToleranceSet = DEFAULT_TOLERANCES,
) -> np.ndarray:
    """Propagate ``rho0`` to time ``t`` with the closed-form map.

    With ``validate`` the result must pass :func:`validate_density`; disable
    it to push non-physical matrices through the linear map (diagnostics).
    """
    rho = devectorize(analytic_propagator(params, t) @ vectorize(rho0))
    if validate:
        report = validate_density(rho, tolerances)
        if not report.ok:
            raise ConsistencyError(
                "analytic evolution produced an invalid state: "
                f"trace dev {report.trace_deviation:.3e}, "
                f"hermiticity defect {report.hermiticity_defect:.3e}, "
                f"min eigenvalue {report.min_eigenvalue:.3e}"
            )
    return rho
