import math

import numpy as np
import pytest

from chaos_mm.dynamics.analysis import dominant_frequency
from chaos_mm.dynamics.hamiltonian import energy
from chaos_mm.dynamics.integrate import integrate
from chaos_mm.dynamics.kam import (
    averaged_perturbation,
    averaged_perturbation_closed_form,
    canonicality_check,
    from_action_angle,
    predicted_frequencies,
    price_bounded_away_from_zero,
    resonant_params,
    to_action_angle,
    unperturbed_energy,
    unperturbed_frequencies,
)
from chaos_mm.models import (
    ActionAngle,
    KickPotential,
    ModelKind,
    ModelParams,
    PhaseState,
    QuadraticPotential,
    default_static_params,
)


def random_params(rng: np.random.Generator) -> ModelParams:
    return ModelParams(
        m_x=rng.uniform(0.5, 2.0),
        m_v=rng.uniform(0.5, 2.0),
        k_x=rng.uniform(0.05, 1.0),
        x_0=rng.uniform(-4.0, 4.0),
        epsilon=rng.uniform(0.0, 0.1),
        inventory_potential=QuadraticPotential(k_v=rng.uniform(0.05, 1.0)),
    )


# ------------------Transform-------------------#
def test_equilibrium_has_zero_action() -> None:
    aa = to_action_angle(default_static_params(), PhaseState(q1=3.0, q2=0.0, p1=0.0, p2=0.0))
    assert aa.i_x == 0.0
    assert aa.i_v == 0.0


def test_unit_price_displacement() -> None:
    aa = to_action_angle(default_static_params(), PhaseState(q1=4.0, q2=0.0, p1=0.0, p2=0.0))
    assert aa.theta_x == pytest.approx(math.pi / 2, abs=1e-15)
    assert aa.i_x == pytest.approx(0.165831, abs=1e-6)
    assert aa.i_x == pytest.approx(math.sqrt(0.11) / 2, abs=1e-15)


def test_round_trip_is_identity() -> None:
    rng = np.random.default_rng(11)
    for _ in range(200):
        params = random_params(rng)
        q1, q2, p1, p2 = rng.uniform(-3.0, 3.0, 4)
        state = PhaseState(q1=params.x_0 + q1, q2=q2, p1=p1, p2=p2)
        back = from_action_angle(params, to_action_angle(params, state))
        np.testing.assert_allclose(back.as_array(), state.as_array(), rtol=0, atol=1e-12)


def test_zero_action_maps_to_equilibrium() -> None:
    params = default_static_params()
    state = from_action_angle(params, ActionAngle(i_x=0.0, theta_x=1.2, i_v=0.0, theta_v=4.0))
    assert state.as_array().tolist() == [3.0, 0.0, 0.0, 0.0]


def test_angles_are_two_pi_periodic() -> None:
    params = default_static_params()
    aa = ActionAngle(i_x=0.4, theta_x=0.7, i_v=0.2, theta_v=2.1)
    shifted = ActionAngle.wrapped(
        i_x=0.4, theta_x=0.7 + 2 * math.pi, i_v=0.2, theta_v=2.1 - 4 * math.pi
    )
    np.testing.assert_allclose(
        from_action_angle(params, shifted).as_array(),
        from_action_angle(params, aa).as_array(),
        atol=1e-12,
    )


def test_unperturbed_energy_identity() -> None:
    params = default_static_params()
    rng = np.random.default_rng(3)
    for _ in range(1000):
        aa = ActionAngle(
            i_x=rng.uniform(0.0, 3.0),
            theta_x=rng.uniform(0.0, 2 * math.pi),
            i_v=rng.uniform(0.0, 3.0),
            theta_v=rng.uniform(0.0, 2 * math.pi),
        )
        state = from_action_angle(params, aa)
        assert energy(params, state) == pytest.approx(unperturbed_energy(params, aa), abs=1e-12)


def test_transform_needs_static_quadratic_model() -> None:
    with pytest.raises(ValueError):
        unperturbed_frequencies(
            ModelParams(k_x=0.0, inventory_potential=QuadraticPotential(k_v=0.1))
        )
    with pytest.raises(ValueError):
        unperturbed_frequencies(ModelParams(inventory_potential=QuadraticPotential(k_v=0.0)))
    with pytest.raises(ValueError):
        unperturbed_frequencies(ModelParams(inventory_potential=KickPotential(k_v=0.1, v_max=1.0)))
    with pytest.raises(ValueError):
        unperturbed_frequencies(ModelParams(model_kind=ModelKind.DYNAMIC_RISK))


# ------------------Averaging-------------------#
def test_averaged_perturbation_example() -> None:
    params = default_static_params(epsilon=0.01)
    expected = 0.005 * (9 + 0.1 / math.sqrt(0.11)) * (0.1 / math.sqrt(0.1))
    assert averaged_perturbation(params, 0.1, 0.1) == pytest.approx(expected, rel=1e-12)
    assert averaged_perturbation(params, 0.1, 0.1) == pytest.approx(0.014707, abs=1e-6)


def test_averaged_perturbation_vanishes_without_inventory_or_price() -> None:
    assert averaged_perturbation(default_static_params(epsilon=0.05), 0.7, 0.0) == 0.0
    assert averaged_perturbation(default_static_params(epsilon=0.05, x_0=0.0), 0.0, 0.4) == 0.0
    with pytest.raises(ValueError):
        averaged_perturbation(default_static_params(epsilon=0.05), -0.1, 0.4)


def test_quadrature_agrees_with_closed_form() -> None:
    rng = np.random.default_rng(17)
    for _ in range(100):
        params = random_params(rng)
        i_x, i_v = rng.uniform(0.0, 2.0, 2)
        closed = averaged_perturbation_closed_form(params, i_x, i_v)
        assert averaged_perturbation(params, i_x, i_v) == pytest.approx(
            closed, rel=1e-10, abs=1e-12
        )


# ------------------Frequencies-------------------#
def test_no_coupling_predicts_unperturbed_frequencies() -> None:
    report = predicted_frequencies(default_static_params(), 0.3, 0.2)
    assert report.omega_x_pred == report.omega_x == math.sqrt(0.11)
    assert report.omega_v_pred == report.omega_v == math.sqrt(0.1)


def test_resonance_distance_of_default_setting() -> None:
    report = predicted_frequencies(default_static_params(epsilon=0.01), 0.1, 0.1)
    assert report.resonance_distance == pytest.approx(math.sqrt(0.11) - math.sqrt(0.1))
    assert report.resonance_distance == pytest.approx(0.015434, abs=1e-6)


def test_frequency_shift_is_linear_in_coupling() -> None:
    single = predicted_frequencies(default_static_params(epsilon=0.001), 0.1, 0.1)
    double = predicted_frequencies(default_static_params(epsilon=0.002), 0.1, 0.1)
    assert single.omega_x_pred > single.omega_x
    assert double.omega_x_pred - double.omega_x == pytest.approx(
        2 * (single.omega_x_pred - single.omega_x), rel=1e-12
    )
    assert double.omega_v_pred - double.omega_v == pytest.approx(
        2 * (single.omega_v_pred - single.omega_v), rel=1e-12
    )


def test_resonant_params_match_frequencies() -> None:
    tuned = resonant_params(default_static_params(epsilon=0.01))
    omega_x, omega_v = unperturbed_frequencies(tuned)
    assert omega_x == pytest.approx(omega_v, rel=1e-15)
    assert tuned.epsilon == 0.01
    assert predicted_frequencies(tuned, 0.1, 0.1).resonance_distance == pytest.approx(
        0.0, abs=1e-15
    )


def test_price_bounded_away_from_zero() -> None:
    params = default_static_params()
    assert price_bounded_away_from_zero(params, 0.1)
    assert not price_bounded_away_from_zero(params, 10.0)


# ------------------Canonicality-------------------#
def test_standard_transform_is_canonical() -> None:
    assert canonicality_check(default_static_params(), 100) <= 1e-5


def test_literal_transform_is_not_canonical_unless_k_equals_m() -> None:
    deviation = canonicality_check(default_static_params(), 100, transform="literal")
    assert deviation == pytest.approx(1 - math.sqrt(0.11), abs=1e-5)
    assert deviation == pytest.approx(0.66834, abs=1e-5)

    balanced = ModelParams(k_x=1.0, inventory_potential=QuadraticPotential(k_v=1.0))
    assert canonicality_check(balanced, 100, transform="literal") <= 1e-5


@pytest.mark.slow
def test_measured_price_frequency_follows_first_order_shift() -> None:
    # Off resonance and with x_0 = 0 the coupling is purely quartic
    params = ModelParams(
        k_x=0.11, x_0=0.0, epsilon=0.01, inventory_potential=QuadraticPotential(k_v=0.04)
    )
    aa = ActionAngle(i_x=0.1, theta_x=0.0, i_v=0.1, theta_v=0.0)
    trajectory = integrate(params, from_action_angle(params, aa), 0.05, 200_000)
    measured = dominant_frequency(trajectory.component("x"), trajectory.sample_dt)
    report = predicted_frequencies(params, aa.i_x, aa.i_v)
    assert abs(measured - report.omega_x_pred) < abs(measured - report.omega_x)
