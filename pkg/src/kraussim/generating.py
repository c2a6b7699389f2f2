"""The three damped oscillation functions that drive every closed-form object.

With gamma = kappa/(2 rabi) and the envelope g(t) = exp(-kappa t / 4), the
population sector of the master equation is solved by

    Lambda0(t)    = g(t) * h * S(z)          h = rabi * t / 2,  z = (gamma^2 - 1) h^2
    Lambda+/-(t)  = gamma * Lambda0(t) +/- g(t) * C(z)

where S(z) = sinh(sqrt(z))/sqrt(z) and C(z) = cosh(sqrt(z)) continued
analytically through z <= 0 (sin/cos for the oscillatory regime, a Taylor
series around critical damping).  This single expression covers all damping
regimes without ever evaluating arccosh; the hyperbolic-shift form
sinh(theta +/- phi) with cosh(phi) = gamma is recovered from it by the
addition theorem and is used as an independent cross-check in the tests.

The drain weights 1 - Lambda0^2 - Lambda+/-^2 are the populations delivered
to the absorbing level |g0> from |e0> and |g1> respectively.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .model import ParameterError, SystemParams

__all__ = ["GeneratingValues", "LimitCase", "generating_values", "limit_case"]

# Below this |z| the direct sinh/sin quotients lose nothing yet, but the
# series is already exact to < 1e-26 relative, so the switch is seamless.
_SERIES_CUT = 1e-6


class LimitCase(enum.Enum):
    """Closed-form parameter limits used as analytic reference points."""

    COUPLING_OFF = "coupling-off"  # rabi -> 0: bare cavity decay
    DECAY_OFF = "decay-off"  # kappa -> 0: undamped vacuum oscillation


@dataclass(frozen=True)
class GeneratingValues:
    """Values of the generating functions and drain weights at one time."""

    lambda_plus: float
    lambda_minus: float
    lambda_zero: float
    envelope: float
    drain_plus: float
    drain_minus: float
    time: float


def _series_pair(z: float) -> tuple[float, float]:
    """(sinh(sqrt(z))/sqrt(z), cosh(sqrt(z))) continued through z <= 0."""
    if z > _SERIES_CUT:
        x = math.sqrt(z)
        return math.sinh(x) / x, math.cosh(x)
    if z < -_SERIES_CUT:
        x = math.sqrt(-z)
        return math.sin(x) / x, math.cos(x)
    s = 1.0 + z / 6.0 * (1.0 + z / 20.0 * (1.0 + z / 42.0))
    c = 1.0 + z / 2.0 * (1.0 + z / 12.0 * (1.0 + z / 30.0))
    return s, c


def generating_values(
    params: SystemParams, t: float, *, allow_negative_time: bool = False
) -> GeneratingValues:
    """Evaluate the generating functions at time ``t``.

    Negative times are rejected unless explicitly allowed (the closed forms
    continue analytically, but backward evolution is not physical here).
    """
    if not math.isfinite(t):
        raise ParameterError(f"time must be finite, got {t!r}")
    if t < 0.0 and not allow_negative_time:
        raise ParameterError(f"negative time {t!r} (pass allow_negative_time=True to override)")

    envelope = math.exp(-0.25 * params.kappa * t)
    if params.rabi == 0.0:
        lam_zero = 0.0
        lam_plus = 1.0
        lam_minus = -math.exp(-0.5 * params.kappa * t)
    else:
        half = 0.5 * params.rabi * t
        quarter = 0.25 * params.kappa * t  # = gamma * half, finite for any rabi > 0
        z = quarter * quarter - half * half
        s, c = _series_pair(z)
        lam_zero = envelope * half * s
        core = envelope * quarter * s  # = gamma * Lambda0 without forming gamma
        lam_plus = core + envelope * c
        lam_minus = core - envelope * c
    return GeneratingValues(
        lambda_plus=lam_plus,
        lambda_minus=lam_minus,
        lambda_zero=lam_zero,
        envelope=envelope,
        drain_plus=1.0 - lam_zero * lam_zero - lam_plus * lam_plus,
        drain_minus=1.0 - lam_zero * lam_zero - lam_minus * lam_minus,
        time=float(t),
    )


def limit_case(params: SystemParams, t: float, case: LimitCase) -> GeneratingValues:
    """Exact generating values in a decoupled limit.

    COUPLING_OFF ignores ``params.rabi`` and keeps only cavity decay;
    DECAY_OFF ignores ``params.kappa`` and keeps only the vacuum oscillation.
    """
    if not math.isfinite(t) or t < 0.0:
        raise ParameterError(f"time must be finite and non-negative, got {t!r}")
    if case is LimitCase.COUPLING_OFF:
        envelope = math.exp(-0.25 * params.kappa * t)
        lam_plus = 1.0
        lam_minus = -math.exp(-0.5 * params.kappa * t)
        lam_zero = 0.0
    elif case is LimitCase.DECAY_OFF:
        envelope = 1.0
        half = 0.5 * params.rabi * t
        lam_plus = math.cos(half)
        lam_minus = -math.cos(half)
        lam_zero = math.sin(half)
    else:
        raise ParameterError(f"unknown limit case {case!r}")
    return GeneratingValues(
        lambda_plus=lam_plus,
        lambda_minus=lam_minus,
        lambda_zero=lam_zero,
        envelope=envelope,
        drain_plus=1.0 - lam_zero * lam_zero - lam_plus * lam_plus,
        drain_minus=1.0 - lam_zero * lam_zero - lam_minus * lam_minus,
        time=float(t),
    )
