import math

import numpy as np
import pytest

from kraussim.generating import (
    LimitCase,
    _series_pair,
    generating_values,
    limit_case,
)
from kraussim.model import ParameterError, make_params

# Frozen reference: kappa=2, rabi=4, t=1 in the oscillatory regime equals
# e^{-1/2} * 4 sin(sqrt(15)/2) / sqrt(15); evaluated once and pinned.
LAMBDA_ZERO_REFERENCE = 0.5850002135966836


def _shifted_hyperbolic(kappa, rabi, t):
    """Independent evaluation via sinh(theta +/- phi)/sinh(phi), gamma > 1 only."""
    gamma = kappa / (2.0 * rabi)
    phi = math.acosh(gamma)
    theta = 0.5 * rabi * t * math.sqrt(gamma * gamma - 1.0)
    g = math.exp(-0.25 * kappa * t)
    lam_zero = g * math.sinh(theta) / math.sqrt(gamma * gamma - 1.0)
    lam_plus = g * math.sinh(theta + phi) / math.sinh(phi)
    lam_minus = g * math.sinh(theta - phi) / math.sinh(phi)
    return lam_plus, lam_minus, lam_zero


def _shifted_trigonometric(kappa, rabi, t):
    """Independent oscillatory-branch evaluation, gamma < 1 only."""
    gamma = kappa / (2.0 * rabi)
    root = math.sqrt(1.0 - gamma * gamma)
    theta = 0.5 * rabi * t * root
    g = math.exp(-0.25 * kappa * t)
    lam_zero = g * math.sin(theta) / root
    lam_plus = gamma * lam_zero + g * math.cos(theta)
    lam_minus = gamma * lam_zero - g * math.cos(theta)
    return lam_plus, lam_minus, lam_zero


def test_zero_time_identity():
    for kappa, rabi in ((2.0, 4.0), (8.0, 4.0), (16.0, 4.0), (2.0, 0.0)):
        gv = generating_values(make_params(kappa, rabi, 2.0), 0.0)
        assert (gv.lambda_plus, gv.lambda_minus, gv.lambda_zero) == (1.0, -1.0, 0.0)
        assert gv.drain_plus == 0.0
        assert gv.drain_minus == 0.0
        assert gv.envelope == 1.0


def test_reference_value_frozen():
    gv = generating_values(make_params(2.0, 4.0, 2.0), 1.0)
    assert gv.lambda_zero == pytest.approx(LAMBDA_ZERO_REFERENCE, rel=1e-14)
    closed = math.exp(-0.5) * 4.0 * math.sin(math.sqrt(15.0) / 2.0) / math.sqrt(15.0)
    assert gv.lambda_zero == pytest.approx(closed, rel=1e-14)


@pytest.mark.parametrize("kappa,rabi", [(8.0, 2.0), (12.0, 4.0), (30.0, 3.0)])
def test_overdamped_matches_shifted_hyperbolic_form(kappa, rabi):
    params = make_params(kappa, rabi, 1.0)
    for t in np.linspace(0.0, 3.0, 13):
        gv = generating_values(params, float(t))
        lp, lm, l0 = _shifted_hyperbolic(kappa, rabi, float(t))
        assert gv.lambda_plus == pytest.approx(lp, abs=1e-12)
        assert gv.lambda_minus == pytest.approx(lm, abs=1e-12)
        assert gv.lambda_zero == pytest.approx(l0, abs=1e-12)


@pytest.mark.parametrize("kappa,rabi", [(2.0, 4.0), (1.0, 8.0), (6.0, 4.0)])
def test_underdamped_matches_trigonometric_form(kappa, rabi):
    params = make_params(kappa, rabi, 1.0)
    for t in np.linspace(0.0, 3.0, 13):
        gv = generating_values(params, float(t))
        lp, lm, l0 = _shifted_trigonometric(kappa, rabi, float(t))
        assert gv.lambda_plus == pytest.approx(lp, abs=1e-12)
        assert gv.lambda_minus == pytest.approx(lm, abs=1e-12)
        assert gv.lambda_zero == pytest.approx(l0, abs=1e-12)


def test_sum_identity_random_draws():
    """Lambda+ + Lambda- = 2 gamma Lambda0 across regimes."""
    rng = np.random.default_rng(1234)
    for _ in range(10_000):
        kappa = float(rng.uniform(0.0, 10.0))
        rabi = float(rng.uniform(0.01, 10.0))
        t = float(rng.uniform(0.0, 3.0))
        params = make_params(kappa, rabi, 1.0)
        gv = generating_values(params, t)
        lhs = gv.lambda_plus + gv.lambda_minus
        assert abs(lhs - 2.0 * params.gamma * gv.lambda_zero) <= 1e-10


def test_critical_seam_continuity():
    """gamma = 1 +/- 1e-6 stays within 1e-5 of the critical evaluation."""
    base = make_params(8.0, 4.0, 2.0)
    assert base.gamma == 1.0
    for t in (0.5, 1.0, 2.0, 3.0):
        ref = generating_values(base, t)
        for sign in (-1.0, 1.0):
            p = make_params(8.0 * (1.0 + sign * 1e-6), 4.0, 2.0)
            gv = generating_values(p, t)
            assert abs(gv.lambda_plus - ref.lambda_plus) < 1e-5
            assert abs(gv.lambda_minus - ref.lambda_minus) < 1e-5
            assert abs(gv.lambda_zero - ref.lambda_zero) < 1e-5


def test_series_seam_is_seamless():
    cut = 1e-6
    for z in (cut * (1.0 - 1e-9), cut * (1.0 + 1e-9)):
        s_lo, c_lo = _series_pair(z * (1.0 - 1e-12))
        s_hi, c_hi = _series_pair(z * (1.0 + 1e-12))
        assert s_lo == pytest.approx(s_hi, rel=1e-12)
        assert c_lo == pytest.approx(c_hi, rel=1e-12)
    s, c = _series_pair(0.0)
    assert (s, c) == (1.0, 1.0)


def test_tiny_coupling_converges_to_coupling_off():
    params = make_params(2.0, 1e-12, 2.0)
    for t in np.linspace(0.0, 3.0, 16):
        gv = generating_values(params, float(t))
        ref = limit_case(params, float(t), LimitCase.COUPLING_OFF)
        assert abs(gv.lambda_plus - ref.lambda_plus) < 1e-6
        assert abs(gv.lambda_minus - ref.lambda_minus) < 1e-6
        assert abs(gv.lambda_zero - ref.lambda_zero) < 1e-6


def test_tiny_decay_converges_to_decay_off():
    params = make_params(1e-12, 4.0, 2.0)
    for t in np.linspace(0.0, 3.0, 16):
        gv = generating_values(params, float(t))
        ref = limit_case(params, float(t), LimitCase.DECAY_OFF)
        assert abs(gv.lambda_plus - ref.lambda_plus) < 1e-6
        assert abs(gv.lambda_minus - ref.lambda_minus) < 1e-6
        assert abs(gv.lambda_zero - ref.lambda_zero) < 1e-6


def test_uncoupled_closed_form_is_exact():
    params = make_params(2.0, 0.0, 2.0)
    for t in (0.3, 1.0, 2.7):
        gv = generating_values(params, t)
        assert gv.lambda_plus == 1.0
        assert gv.lambda_zero == 0.0
        assert gv.lambda_minus == pytest.approx(-math.exp(-t), rel=1e-15)


def test_limit_case_reference_points():
    p = make_params(2.0, 4.0, 2.0)
    gv = limit_case(p, math.pi / 4, LimitCase.DECAY_OFF)
    assert gv.lambda_zero == pytest.approx(1.0, abs=1e-15)
    assert abs(gv.lambda_plus) <= 1e-15
    assert abs(gv.lambda_minus) <= 1e-15

    gv = limit_case(p, 1.0, LimitCase.COUPLING_OFF)
    assert gv.lambda_minus == pytest.approx(-math.exp(-1.0), rel=1e-15)
    assert gv.lambda_plus == 1.0

    for case in LimitCase:
        gv = limit_case(p, 0.0, case)
        assert (gv.lambda_plus, gv.lambda_minus, gv.lambda_zero) == (1.0, -1.0, 0.0)


def test_drain_weights_nonnegative_and_consistent():
    rng = np.random.default_rng(77)
    for _ in range(2000):
        params = make_params(float(rng.uniform(0, 12)), float(rng.uniform(0, 12)), 1.0)
        gv = generating_values(params, float(rng.uniform(0.0, 3.0)))
        assert gv.drain_plus >= -1e-10
        assert gv.drain_minus >= -1e-10
        assert gv.drain_plus == pytest.approx(
            1.0 - gv.lambda_zero**2 - gv.lambda_plus**2, abs=1e-15
        )
        assert gv.drain_minus == pytest.approx(
            1.0 - gv.lambda_zero**2 - gv.lambda_minus**2, abs=1e-15
        )


def test_envelope_value():
    gv = generating_values(make_params(2.0, 4.0, 2.0), 2.0)
    assert gv.envelope == pytest.approx(math.exp(-1.0), rel=1e-15)


def test_time_validation():
    params = make_params(2.0, 4.0, 2.0)
    with pytest.raises(ParameterError, match="negative time"):
        generating_values(params, -0.5)
    with pytest.raises(ParameterError):
        generating_values(params, math.nan)
    with pytest.raises(ParameterError):
        generating_values(params, math.inf)
    # diagnostic override: analytic continuation backwards in time
    gv = generating_values(params, -0.5, allow_negative_time=True)
    assert math.isfinite(gv.lambda_plus)
    fwd = generating_values(params, 0.5)
    # backward-forward composition: Lambda0 is odd under t -> -t up to envelope
    assert gv.lambda_zero * fwd.lambda_zero < 0.0
