"""Pure-numpy fallback for the compiled inner loops.

Same call signatures and same arithmetic as ``_kernels.pyx``; the test suite
cross-checks both backends.  The RK4 right-hand side is transcribed from the
nine component equations of the master equation and deliberately does not
reuse the analytic propagator construction.
"""

from __future__ import annotations

import numpy as np


def _generator_matrix(kappa: float, rabi: float, omega: float) -> np.ndarray:
    # Coefficients of the component ODEs in the row-major vector order
    # (rho11, rho12, rho13, rho21, rho22, rho23, rho31, rho32, rho33).
    w2 = 0.5 * rabi
    hk = 0.5 * kappa
    iw = 1j * omega
    gen = np.zeros((9, 9), dtype=complex)
    gen[0, 1] = -w2
    gen[0, 3] = -w2
    gen[1, 0] = w2
    gen[1, 1] = -hk
    gen[1, 4] = -w2
    gen[2, 2] = -iw
    gen[2, 5] = -w2
    gen[3, 0] = w2
    gen[3, 3] = -hk
    gen[3, 4] = -w2
    gen[4, 1] = w2
    gen[4, 3] = w2
    gen[4, 4] = -kappa
    gen[5, 2] = w2
    gen[5, 5] = -hk - iw
    gen[6, 6] = iw
    gen[6, 7] = -w2
    gen[7, 6] = w2
    gen[7, 7] = iw - hk
    gen[8, 4] = kappa
    return gen


def apply_channel_steps(
    ops: np.ndarray, rho0: np.ndarray, steps: int, renormalize: bool
) -> tuple[np.ndarray, float, float]:
    """Apply ``rho -> sum_k ops[k] rho ops[k]^dag`` ``steps`` times.

    Each step symmetrizes the result and tracks the change of the (real)
    trace; returns ``(rho, max_step_drift, final_trace)`` with the drift
    measured before any renormalization.
    """
    ops = np.asarray(ops, dtype=complex)
    ops_ct = np.conj(ops.transpose(0, 2, 1))
    rho = np.array(rho0, dtype=complex, copy=True)
    prev = float(np.trace(rho).real)
    max_drift = 0.0
    for _ in range(steps):
        rho = ((ops @ rho) @ ops_ct).sum(axis=0)
        rho = 0.5 * (rho + rho.conj().T)
        tr = float(np.trace(rho).real)
        drift = abs(tr - prev)
        if drift > max_drift:
            max_drift = drift
        if renormalize:
            rho /= tr
            prev = 1.0
        else:
            prev = tr
    return rho, max_drift, float(np.trace(rho).real)


def rk4_lindblad(
    kappa: float,
    rabi: float,
    omega: float,
    rho0: np.ndarray,
    t: float,
    steps: int,
) -> np.ndarray:
    """Classical fixed-step RK4 for the nine component equations."""
    gen = _generator_matrix(kappa, rabi, omega)
    y = np.asarray(rho0, dtype=complex).reshape(9).copy()
    h = t / steps
    h2 = 0.5 * h
    h6 = h / 6.0
    for _ in range(steps):
        k1 = gen @ y
        k2 = gen @ (y + h2 * k1)
        k3 = gen @ (y + h2 * k2)
        k4 = gen @ (y + h * k3)
        y += h6 * (k1 + 2.0 * (k2 + k3) + k4)
    return y.reshape(3, 3)
