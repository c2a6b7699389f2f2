# cython: boundscheck=False, wraparound=False, initializedcheck=False, cdivision=True
"""Compiled inner loops: repeated channel application and fixed-step RK4.

Kept in arithmetic lockstep with the numpy fallback in ``_kernels_py``; the
test suite cross-checks both backends.  The RK4 right-hand side transcribes
the nine component equations of the master equation directly and stays
independent of the analytic propagator construction.
"""

import numpy as np


def apply_channel_steps(double complex[:, :, ::1] ops, double complex[:, ::1] rho0,
                        Py_ssize_t steps, bint renormalize):
    """Apply ``rho -> sum_k ops[k] rho ops[k]^dag`` ``steps`` times.

    Each step symmetrizes the result and tracks the change of the (real)
    trace; returns ``(rho, max_step_drift, final_trace)`` with the drift
    measured before any renormalization.
    """
    cdef Py_ssize_t m = ops.shape[0]
    cdef Py_ssize_t s, k, i, j
    cdef double complex r[3][3]
    cdef double complex acc[3][3]
    cdef double complex row0, row1, row2
    cdef double prev, tr, drift, inv
    cdef double max_drift = 0.0

    for i in range(3):
        for j in range(3):
            r[i][j] = rho0[i, j]
    prev = (r[0][0] + r[1][1] + r[2][2]).real

    for s in range(steps):
        for i in range(3):
            for j in range(3):
                acc[i][j] = 0
        for k in range(m):
            for i in range(3):
                row0 = ops[k, i, 0] * r[0][0] + ops[k, i, 1] * r[1][0] + ops[k, i, 2] * r[2][0]
                row1 = ops[k, i, 0] * r[0][1] + ops[k, i, 1] * r[1][1] + ops[k, i, 2] * r[2][1]
                row2 = ops[k, i, 0] * r[0][2] + ops[k, i, 1] * r[1][2] + ops[k, i, 2] * r[2][2]
                for j in range(3):
                    acc[i][j] = acc[i][j] + (row0 * ops[k, j, 0].conjugate()
                                             + row1 * ops[k, j, 1].conjugate()
                                             + row2 * ops[k, j, 2].conjugate())
        for i in range(3):
            for j in range(i, 3):
                r[i][j] = 0.5 * (acc[i][j] + acc[j][i].conjugate())
                if j > i:
                    r[j][i] = 0.5 * (acc[j][i] + acc[i][j].conjugate())
        tr = (r[0][0] + r[1][1] + r[2][2]).real
        drift = tr - prev
        if drift < 0.0:
            drift = -drift
        if drift > max_drift:
            max_drift = drift
        if renormalize:
            inv = 1.0 / tr
            for i in range(3):
                for j in range(3):
                    r[i][j] = r[i][j] * inv
            prev = 1.0
        else:
            prev = tr

    out = np.empty((3, 3), dtype=np.complex128)
    cdef double complex[:, ::1] out_view = out
    for i in range(3):
        for j in range(3):
            out_view[i, j] = r[i][j]
    return out, max_drift, (r[0][0] + r[1][1] + r[2][2]).real


cdef inline void _rhs(double kappa, double rabi, double omega,
                      double complex* r, double complex* out) noexcept nogil:
    # Component order: (11, 12, 13, 21, 22, 23, 31, 32, 33).
    cdef double w2 = 0.5 * rabi
    cdef double hk = 0.5 * kappa
    cdef double complex iw = 1j * omega
    out[0] = -w2 * (r[1] + r[3])
    out[4] = w2 * (r[1] + r[3]) - kappa * r[4]
    out[1] = w2 * (r[0] - r[4]) - hk * r[1]
    out[3] = w2 * (r[0] - r[4]) - hk * r[3]
    out[8] = kappa * r[4]
    out[2] = -w2 * r[5] - iw * r[2]
    out[5] = w2 * r[2] - (hk + iw) * r[5]
    out[6] = -w2 * r[7] + iw * r[6]
    out[7] = w2 * r[6] - (hk - iw) * r[7]


def rk4_lindblad(double kappa, double rabi, double omega,
                 double complex[:, ::1] rho0, double t, Py_ssize_t steps):
    """Classical fixed-step RK4 for the nine component equations."""
    cdef double h = t / steps
    cdef double h2 = 0.5 * h
    cdef double h6 = h / 6.0
    cdef double complex y[9]
    cdef double complex k1[9]
    cdef double complex k2[9]
    cdef double complex k3[9]
    cdef double complex k4[9]
    cdef double complex stage[9]
    cdef Py_ssize_t s, i

    for i in range(9):
        y[i] = rho0[i // 3, i % 3]
    with nogil:
        for s in range(steps):
            _rhs(kappa, rabi, omega, y, k1)
            for i in range(9):
                stage[i] = y[i] + h2 * k1[i]
            _rhs(kappa, rabi, omega, stage, k2)
            for i in range(9):
                stage[i] = y[i] + h2 * k2[i]
            _rhs(kappa, rabi, omega, stage, k3)
            for i in range(9):
                stage[i] = y[i] + h * k3[i]
            _rhs(kappa, rabi, omega, stage, k4)
            for i in range(9):
                y[i] = y[i] + h6 * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i])

    out = np.empty((3, 3), dtype=np.complex128)
    cdef double complex[:, ::1] out_view = out
    for i in range(9):
        out_view[i // 3, i % 3] = y[i]
    return out
