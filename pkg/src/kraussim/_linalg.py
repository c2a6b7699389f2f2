"""Eigenvalues of the Hermitian part of 3x3 matrices via cyclic Jacobi.

Everything downstream (state validation, spectral norms) needs eigenvalues
of matrices that are Hermitian up to rounding, so the hermitization
convention lives here in one place.  At this fixed size cyclic Jacobi
converges in a handful of sweeps and, unlike the closed-form trigonometric
cubic, keeps full accuracy at (near-)degenerate eigenvalues -- the
positivity checks on nearly pure states cannot absorb the ~sqrt(eps) error
the cubic leaves near double roots.
"""

from __future__ import annotations

import math

import numpy as np

_MAX_SWEEPS = 24
_PAIRS = ((0, 1), (0, 2), (1, 2))


def hermitian_eigenvalues(matrix: np.ndarray) -> np.ndarray:
    """Eigenvalues of the Hermitian part of a 3x3 matrix, ascending.

    Only the Hermitian part of ``matrix`` enters; any anti-Hermitian
    remainder is discarded.
    """
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (3, 3):
        raise ValueError(f"expected a 3x3 matrix, got shape {m.shape}")
    h = 0.5 * (m + m.conj().T)

    scale = max(abs(h[i, j]) for i in range(3) for j in range(3))
    if scale == 0.0:
        return np.zeros(3)
    # Stop once every off-diagonal element is negligible against the matrix.
    threshold = 1e-30 * scale * scale

    for _ in range(_MAX_SWEEPS):
        off = abs(h[0, 1]) ** 2 + abs(h[0, 2]) ** 2 + abs(h[1, 2]) ** 2
        if off <= threshold:
            break
        for p, q in _PAIRS:
            apq = h[p, q]
            if apq == 0.0:
                continue
            # Phase-carrying Givens rotation zeroing h[p,q]; the conjugate
            # phase on s aligns both terms of the rotated entry.
            mag = abs(apq)
            theta = 0.5 * math.atan2(2.0 * mag, (h[p, p] - h[q, q]).real)
            c = math.cos(theta)
            s = math.sin(theta) * (apq.conjugate() / mag)
            row_p = c * h[p, :] + np.conj(s) * h[q, :]
            row_q = -s * h[p, :] + c * h[q, :]
            h[p, :] = row_p
            h[q, :] = row_q
            col_p = c * h[:, p] + s * h[:, q]
            col_q = -np.conj(s) * h[:, p] + c * h[:, q]
            h[:, p] = col_p
            h[:, q] = col_q
            h[p, q] = 0.0
            h[q, p] = 0.0

    return np.sort(np.array([h[0, 0].real, h[1, 1].real, h[2, 2].real]))
