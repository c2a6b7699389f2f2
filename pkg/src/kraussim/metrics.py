"""Norm-based figures of merit for comparing evolved states.

All comparisons use the spectral norm (largest singular value), computed
as the square root of the top eigenvalue of M^dag M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ._linalg import hermitian_eigenvalues
from .model import ParameterError

__all__ = [
    "hermitian_eigenvalues",
    "spectral_norm",
    "distance",
    "relative_error",
    "relative_error_magnitude",
    "re_approx",
    "EvolutionRecord",
]


def spectral_norm(matrix: np.ndarray) -> float:
    """Largest singular value of a 3x3 complex matrix."""
    m = np.asarray(matrix, dtype=complex)
    if m.shape != (3, 3):
        raise ParameterError(f"expected a 3x3 matrix, got shape {m.shape}")
    gram = m.conj().T @ m
    top = float(hermitian_eigenvalues(gram)[2])
    return math.sqrt(top) if top > 0.0 else 0.0


def distance(a: np.ndarray, b: np.ndarray) -> float:
    """Spectral-norm distance ||a - b||."""
    return spectral_norm(np.asarray(a, dtype=complex) - np.asarray(b, dtype=complex))


def relative_error(rho_discrete: np.ndarray, rho_analytic: np.ndarray) -> float:
    """Signed relative spectral-norm error (||discrete|| - ||analytic||) / ||analytic||."""
    base = spectral_norm(rho_analytic)
    if base == 0.0:
        raise ZeroDivisionError("reference state has zero spectral norm")
    return (spectral_norm(rho_discrete) - base) / base


def relative_error_magnitude(rho_discrete: np.ndarray, rho_analytic: np.ndarray) -> float:
    """|relative_error|, convenient for log-scale plots."""
    return abs(relative_error(rho_discrete, rho_analytic))


def re_approx(omega: float, n: int) -> float:
    """First-order estimate omega^2 / n of the discrete-step relative error."""
    if not math.isfinite(omega):
        raise ParameterError(f"omega must be finite, got {omega!r}")
    if n < 1:
        raise ParameterError(f"step count must be >= 1, got {n!r}")
    return omega * omega / n


@dataclass(frozen=True)
class EvolutionRecord:
    """One comparison row: analytic versus discrete at a grid point.

    ``n`` is the discrete step count (0 marks an analytic-only record).
    """

    theta: float
    t: float
    n: int
    norm_analytic: float
    norm_discrete: float
    distance: float
    relative_error: float
    re_approx: float
