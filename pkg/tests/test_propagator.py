import cmath
import math

import numpy as np
import pytest

from kraussim.generating import generating_values
from kraussim.model import (
    ConsistencyError,
    initial_state,
    devectorize,
    make_params,
    validate_density,
    vectorize,
)
from kraussim.oracle import IntegratorConfig, integrate_rk4, lindblad_rhs, matrix_exponential
from kraussim.propagator import analytic_propagator, drift_matrix, evolve_analytic

DEFAULTS = make_params(2.0, 4.0, 2.0)


def test_drift_matrix_reference_entries():
    a = drift_matrix(DEFAULTS)
    assert a.shape == (9, 9)
    assert a[8, 4] == 2.0
    assert a[4, 4] == -2.0
    assert a[1, 1] == -1.0
    assert a[0, 1] == -2.0
    assert a[1, 0] == 2.0
    assert a[2, 2] == -2.0j
    assert a[5, 5] == -1.0 - 2.0j
    assert a[6, 6] == 2.0j
    assert a[7, 7] == -1.0 + 2.0j
    assert a[8, 8] == 0.0


def test_drift_without_coupling_or_decay_is_pure_rotation():
    a = drift_matrix(make_params(0.0, 0.0, 3.0))
    expected = np.diag(np.array([0, 0, -3j, 0, 0, -3j, 3j, 3j, 0], dtype=complex))
    np.testing.assert_array_equal(a, expected)


def test_drift_columns_match_componentwise_rhs():
    """Each drift column reproduces the component equations on a basis matrix."""
    for params in (DEFAULTS, make_params(7.0, 1.5, 0.3)):
        a = drift_matrix(params)
        for k in range(9):
            unit = np.zeros(9, dtype=complex)
            unit[k] = 1.0
            rhs = lindblad_rhs(params, devectorize(unit))
            np.testing.assert_allclose(a[:, k], vectorize(rhs), atol=1e-15)


def test_drift_preserves_trace():
    rng = np.random.default_rng(5)
    for _ in range(25):
        params = make_params(*(float(x) for x in rng.uniform(0.0, 10.0, 3)))
        a = drift_matrix(params)
        trace_row = a[0, :] + a[4, :] + a[8, :]
        np.testing.assert_allclose(trace_row, np.zeros(9), atol=1e-15)


def test_propagator_at_zero_time_is_identity():
    f = analytic_propagator(DEFAULTS, 0.0)
    np.testing.assert_array_equal(f, np.eye(9, dtype=complex))


@pytest.mark.parametrize("kappa", [2.0, 8.0, 16.0])
def test_propagator_matches_numerical_exponential(kappa):
    params = make_params(kappa, 4.0, 2.0)
    a = drift_matrix(params)
    for t in (0.1, 0.5, 1.0, 2.0, 3.0):
        f = analytic_propagator(params, t)
        reference = matrix_exponential(a, t)
        assert np.max(np.abs(f - reference)) <= 1e-10


def test_semigroup_property():
    for t1, t2 in ((0.3, 0.9), (1.0, 1.0), (0.05, 2.5)):
        composed = analytic_propagator(DEFAULTS, t1) @ analytic_propagator(DEFAULTS, t2)
        direct = analytic_propagator(DEFAULTS, t1 + t2)
        assert np.max(np.abs(composed - direct)) <= 1e-12


def test_propagator_trace_columns():
    """Column sums over the diagonal components are 1 on diagonals, 0 off."""
    for t in (0.5, 1.7, 3.0):
        f = analytic_propagator(DEFAULTS, t)
        sums = f[0, :] + f[4, :] + f[8, :]
        expected = np.zeros(9, dtype=complex)
        expected[[0, 4, 8]] = 1.0
        np.testing.assert_allclose(sums, expected, atol=1e-14)


def test_coherence_column_picks_up_frame_phase():
    t = 1.3
    gv = generating_values(DEFAULTS, t)
    seed = np.zeros((3, 3), dtype=complex)
    seed[0, 2] = 1.0
    out = evolve_analytic(DEFAULTS, seed, t, validate=False)
    phase = cmath.exp(-1j * DEFAULTS.omega * t)
    assert out[0, 2] == pytest.approx(phase * gv.lambda_plus, abs=1e-14)
    assert out[1, 2] == pytest.approx(phase * gv.lambda_zero, abs=1e-14)
    assert abs(out[2, 2]) == 0.0


def test_matches_integrator_on_quarter_turn_state():
    rho0 = initial_state(math.pi / 2)
    analytic = evolve_analytic(DEFAULTS, rho0, 3.0)
    numeric = integrate_rk4(DEFAULTS, rho0, 3.0, IntegratorConfig(steps=20_000))
    assert np.max(np.abs(analytic - numeric)) <= 1e-8


def test_random_states_stay_physical():
    rng = np.random.default_rng(42)
    for _ in range(60):
        params = make_params(
            float(rng.uniform(0.5, 16.0)), float(rng.uniform(0.5, 8.0)), 2.0
        )
        rho = evolve_analytic(params, initial_state(float(rng.uniform(0, math.pi))),
                              float(rng.uniform(0.0, 3.0)))
        report = validate_density(rho)
        assert report.trace_deviation <= 1e-10
        assert report.hermiticity_defect <= 1e-10
        assert report.min_eigenvalue >= -1e-9


def test_ground_state_is_stationary():
    ground = np.zeros((3, 3), dtype=complex)
    ground[2, 2] = 1.0
    for t in (0.5, 1.0, 3.0):
        np.testing.assert_array_equal(evolve_analytic(DEFAULTS, ground, t), ground)


def test_invalid_output_raises_consistency_error():
    with pytest.raises(ConsistencyError, match="invalid state"):
        evolve_analytic(DEFAULTS, 1.5 * initial_state(0.7), 1.0)
