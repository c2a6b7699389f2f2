"""Operator-sum (Kraus) form of the dissipative evolution.

Two constructions are provided.  The exact set reproduces the closed-form
propagator at any time: K0 carries the coherent part and two jump operators
feed the drained population into |g0>.  The differential set is the
first-order map for one short step tau; iterating it is the discrete engine
whose convergence the metrics module quantifies.
"""

from __future__ import annotations

import cmath
import enum
import logging
import math
from dataclasses import dataclass

import numpy as np

from . import backend
from .generating import GeneratingValues, generating_values
from .metrics import spectral_norm
from .model import (
    ParameterError,
    SystemParams,
    ValidationReport,
    validate_density,
)

__all__ = [
    "NormalizationError",
    "RegimeError",
    "KrausKind",
    "JumpSpec",
    "KrausSet",
    "completeness_defect",
    "exact_kraus",
    "differential_kraus",
    "apply_channel",
    "StepDiagnostics",
    "evolve_discrete",
]

_log = logging.getLogger(__name__)

# Below this drain weight the printed jump rows are 0/0; substitute the
# small-time rows, which share the same limit.
_DRAIN_FLOOR = 1e-12
# Discriminant this negative cannot come from rounding; treat as a real
# domain violation instead of clamping.
_DISCRIMINANT_FLOOR = -1e-10
# |sum |l|^2 - kappa| accepted for a jump amplitude set.
_RATE_TOLERANCE = 1e-12


class NormalizationError(ValueError):
    """Jump amplitudes violate the completeness sum rule sum|l|^2 = kappa."""


class RegimeError(RuntimeError):
    """Generating values left the domain where the jump rows stay real."""


class KrausKind(enum.Enum):
    EXACT = "exact"
    DIFFERENTIAL = "differential"


@dataclass(frozen=True)
class JumpSpec:
    """Amplitudes distributing the single decay channel over jump operators."""

    amplitudes: tuple[complex, ...]

    @classmethod
    def default_pair(cls, kappa: float) -> "JumpSpec":
        """The two-amplitude split -(sqrt(3) -/+ 1) sqrt(kappa) / (2 sqrt(2))."""
        scale = math.sqrt(kappa) / (2.0 * math.sqrt(2.0))
        return cls(
            (
                complex(-(math.sqrt(3.0) - 1.0) * scale),
                complex(-(math.sqrt(3.0) + 1.0) * scale),
            )
        )

    @classmethod
    def single(cls, kappa: float) -> "JumpSpec":
        """One jump operator carrying the whole rate, l = sqrt(kappa)."""
        return cls((complex(math.sqrt(kappa)),))

    def total_rate(self) -> float:
        return float(sum(abs(a) ** 2 for a in self.amplitudes))


@dataclass(frozen=True)
class KrausSet:
    """An operator set together with its measured completeness defect.

    ``interval`` is the physical time t for an exact set and the step tau
    for a differential set.
    """

    operators: tuple[np.ndarray, ...]
    kind: KrausKind
    interval: float
    completeness_defect: float


def completeness_defect(operators) -> float:
    """|| sum_k K_k^dag K_k - I || in spectral norm.

    Accepts a :class:`KrausSet` or any iterable of 3x3 operators.
    """
    if isinstance(operators, KrausSet):
        operators = operators.operators
    acc = np.zeros((3, 3), dtype=complex)
    for op in operators:
        op = np.asarray(op, dtype=complex)
        acc += op.conj().T @ op
    return spectral_norm(acc - np.eye(3))


def _jump_matrix(amplitude: complex) -> np.ndarray:
    mat = np.zeros((3, 3), dtype=complex)
    mat[2, 1] = amplitude
    return mat


def exact_kraus(params: SystemParams, t: float) -> KrausSet:
    """The three-operator set reproducing the closed-form map at time ``t``."""
    return _exact_from_values(params, generating_values(params, t))


def _exact_from_values(params: SystemParams, gv: GeneratingValues) -> KrausSet:
    t = gv.time
    k0 = np.zeros((3, 3), dtype=complex)
    k0[0, 0] = gv.lambda_plus
    k0[0, 1] = -gv.lambda_zero
    k0[1, 0] = gv.lambda_zero
    k0[1, 1] = -gv.lambda_minus
    k0[2, 2] = cmath.exp(1j * params.omega * t)

    # 2*gamma*Lambda0^2 via the sum identity (finite in the uncoupled limit).
    cross = gv.lambda_zero * (gv.lambda_plus + gv.lambda_minus)
    disc = gv.drain_plus * gv.drain_minus - cross * cross
    if disc < _DISCRIMINANT_FLOOR:
        raise RegimeError(
            f"jump-row discriminant {disc:.3e} is negative beyond rounding at "
            f"t={t!r} (kappa={params.kappa!r}, rabi={params.rabi!r}, "
            f"omega={params.omega!r})"
        )

    if params.rabi == 0.0:
        # No coupling: nothing ever reaches the excited state, so the only
        # leak is |g1> -> |g0> with the full remaining weight 1 - e^{-kappa t}.
        # The generic rows below are 0/0 here (drain_plus vanishes for all t,
        # not just small t), but the closed form stays exact.
        k1 = _jump_matrix(math.sqrt(max(gv.drain_minus, 0.0)))
        k2 = np.zeros((3, 3), dtype=complex)
    elif gv.drain_plus < _DRAIN_FLOOR:
        # The coupled drain opens like kappa rabi^2 t^3 / 12, so this branch
        # is a small-time window; substitute the limiting jump rows
        # l_mu sqrt(t), exact to the same order the drain itself carries.
        root_t = math.sqrt(t)
        amp1, amp2 = JumpSpec.default_pair(params.kappa).amplitudes
        k1 = _jump_matrix(amp1 * root_t)
        k2 = _jump_matrix(amp2 * root_t)
    else:
        s = math.sqrt(max(disc, 0.0))
        lead = -math.sqrt(0.5 * gv.drain_plus)
        denom = math.sqrt(2.0 * gv.drain_plus)
        k1 = np.zeros((3, 3), dtype=complex)
        k1[2, 0] = lead
        k1[2, 1] = (-cross + s) / denom
        k2 = np.zeros((3, 3), dtype=complex)
        k2[2, 0] = lead
        k2[2, 1] = (-cross - s) / denom

    operators = (k0, k1, k2)
    return KrausSet(operators, KrausKind.EXACT, float(t), completeness_defect(operators))


def differential_kraus(
    params: SystemParams, tau: float, jumps: JumpSpec | None = None
) -> KrausSet:
    """First-order operator set for one step ``tau``.

    The completeness defect of this set is exactly tau^2 A^dag A with A the
    3x3 drift block, hence O(tau^2).
    """
    if not math.isfinite(tau) or tau <= 0.0:
        raise ParameterError(f"step tau must be finite and positive, got {tau!r}")
    if jumps is None:
        jumps = JumpSpec.default_pair(params.kappa)
    mismatch = jumps.total_rate() - params.kappa
    if abs(mismatch) > _RATE_TOLERANCE:
        raise NormalizationError(
            f"jump amplitudes miss the decay rate: sum|l|^2 - kappa = {mismatch:.3e}"
        )

    k0 = np.eye(3, dtype=complex)
    k0[0, 1] = -0.5 * params.rabi * tau
    k0[1, 0] = 0.5 * params.rabi * tau
    k0[1, 1] = 1.0 - 0.5 * params.kappa * tau
    k0[2, 2] = 1.0 + 1j * params.omega * tau

    root = math.sqrt(tau)
    operators = (k0,) + tuple(_jump_matrix(a * root) for a in jumps.amplitudes)
    return KrausSet(operators, KrausKind.DIFFERENTIAL, float(tau), completeness_defect(operators))


def apply_channel(kset: KrausSet, rho: np.ndarray) -> np.ndarray:
    """sum_k K_k rho K_k^dag, symmetrized to the Hermitian part."""
    rho = np.asarray(rho, dtype=complex)
    if rho.shape != (3, 3):
        raise ParameterError(f"expected a 3x3 state, got shape {rho.shape}")
    out = np.zeros((3, 3), dtype=complex)
    for op in kset.operators:
        out += op @ rho @ op.conj().T
    sym = 0.5 * (out + out.conj().T)
    defect = float(np.max(np.abs(out - sym)))
    if defect > 0.0:
        _log.debug("channel output symmetrized, hermiticity defect %.3e", defect)
    return sym


@dataclass(frozen=True)
class StepDiagnostics:
    """Bookkeeping from a discrete evolution run.

    Trace drift is tracked per step and before any renormalization; the
    final report applies the default validation tolerances, so its trace
    flag simply records whether drift stayed below them.
    """

    steps: int
    tau: float
    max_step_trace_drift: float
    final_trace_deviation: float
    drift_warning: bool
    renormalized: bool
    report: ValidationReport


def evolve_discrete(
    params: SystemParams,
    rho0: np.ndarray,
    t: float,
    n: int,
    jumps: JumpSpec | None = None,
    renormalize: bool = False,
) -> tuple[np.ndarray, StepDiagnostics]:
    """Apply the differential set n times with tau = t/n."""
    if not isinstance(n, (int, np.integer)) or isinstance(n, bool) or n < 1:
        raise ParameterError(f"step count must be a positive integer, got {n!r}")
    if not math.isfinite(t) or t <= 0.0:
        raise ParameterError(f"time must be finite and positive, got {t!r}")
    rho0 = np.ascontiguousarray(np.asarray(rho0, dtype=complex))
    if rho0.shape != (3, 3):
        raise ParameterError(f"expected a 3x3 state, got shape {rho0.shape}")

    tau = t / n
    kset = differential_kraus(params, tau, jumps)
    ops = np.ascontiguousarray(np.stack(kset.operators))
    rho, max_drift, final_trace = backend.apply_channel_steps(
        ops, rho0, int(n), bool(renormalize)
    )
    rho = np.asarray(rho)
    final_dev = abs(final_trace - 1.0)
    warn = final_dev > 0.1
    if warn:
        _log.warning(
            "discrete evolution trace drifted to %.6f after %d steps (tau=%.3e)",
            final_trace,
            n,
            tau,
        )
    diagnostics = StepDiagnostics(
        steps=int(n),
        tau=tau,
        max_step_trace_drift=max_drift,
        final_trace_deviation=final_dev,
        drift_warning=warn,
        renormalized=bool(renormalize),
        report=validate_density(rho),
    )
    return rho, diagnostics
