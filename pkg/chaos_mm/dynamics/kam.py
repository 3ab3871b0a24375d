"""
Action-angle variables of the uncoupled static model and first-order averaging of the
risk-aversion coupling eps (x v)^2 / 2.

Each oscillator uses the standard canonical transform with omega = sqrt(k/m):
    xi = sqrt(2 I / (m omega)) sin(theta),  p = sqrt(2 I m omega) cos(theta)
where xi is the displacement from equilibrium (x - x_0 for the price, v for inventory).
"""

# Standard Imports
import logging
import math
from logging import Logger
from typing import Literal

# Third Party Imports
import numpy as np

# My Imports
from ..exceptions import AveragingMismatchError
from ..models import (
    ActionAngle,
    FrequencyReport,
    ModelKind,
    ModelParams,
    PhaseState,
    QuadraticPotential,
)

logging.basicConfig(level=logging.INFO)
logger: Logger = logging.getLogger(__name__)

QUADRATURE_POINTS: int = 64
AVERAGING_TOL: float = 1e-10


# ------------------Helpers-------------------#
def unperturbed_frequencies(params: ModelParams) -> tuple[float, float]:
    """(omega_x, omega_v); requires the static model with positive quadratic stiffnesses."""
    potential = params.inventory_potential
    if params.model_kind != ModelKind.STATIC_RISK or not isinstance(potential, QuadraticPotential):
        raise ValueError("action-angle variables need the static model with a quadratic f(v)")
    if params.k_x <= 0 or potential.k_v <= 0:
        raise ValueError("action-angle variables are undefined for zero stiffness")
    return math.sqrt(params.k_x / params.m_x), math.sqrt(potential.k_v / params.m_v)


def _oscillator_to_aa(mass: float, omega: float, xi: float, p: float) -> tuple[float, float]:
    m_omega: float = mass * omega
    action: float = 0.5 * (p * p / m_omega + m_omega * xi * xi)
    return action, math.atan2(m_omega * xi, p)


def _oscillator_from_aa(mass: float, omega: float, action, theta):
    m_omega: float = mass * omega
    displacement = np.sqrt(2.0 * action / m_omega) * np.sin(theta)
    momentum = np.sqrt(2.0 * action * m_omega) * np.cos(theta)
    return displacement, momentum


# ------------------Transform-------------------#
def to_action_angle(params: ModelParams, state: PhaseState) -> ActionAngle:
    omega_x, omega_v = unperturbed_frequencies(params)
    i_x, theta_x = _oscillator_to_aa(params.m_x, omega_x, state.q1 - params.x_0, state.p1)
    i_v, theta_v = _oscillator_to_aa(params.m_v, omega_v, state.q2, state.p2)
    return ActionAngle.wrapped(i_x=i_x, theta_x=theta_x, i_v=i_v, theta_v=theta_v)


def from_action_angle(params: ModelParams, aa: ActionAngle) -> PhaseState:
    omega_x, omega_v = unperturbed_frequencies(params)
    xi_x, p_x = _oscillator_from_aa(params.m_x, omega_x, aa.i_x, aa.theta_x)
    v, p_v = _oscillator_from_aa(params.m_v, omega_v, aa.i_v, aa.theta_v)
    return PhaseState(q1=params.x_0 + float(xi_x), q2=float(v), p1=float(p_x), p2=float(p_v))


def unperturbed_energy(params: ModelParams, aa: ActionAngle) -> float:
    omega_x, omega_v = unperturbed_frequencies(params)
    return omega_x * aa.i_x + omega_v * aa.i_v


# ------------------Averaging-------------------#
def averaged_perturbation_closed_form(params: ModelParams, i_x: float, i_v: float) -> float:
    """(eps/2) <x^2> <v^2> with <x^2> = x_0^2 + I_x/(m_x w_x) and <v^2> = I_v/(m_v w_v)."""
    omega_x, omega_v = unperturbed_frequencies(params)
    mean_x2: float = params.x_0**2 + i_x / (params.m_x * omega_x)
    mean_v2: float = i_v / (params.m_v * omega_v)
    return 0.5 * params.epsilon * mean_x2 * mean_v2


def averaged_perturbation(
    params: ModelParams, i_x: float, i_v: float, n_points: int = QUADRATURE_POINTS
) -> float:
    """
    Double angle-average of eps (x v)^2 / 2 over the unperturbed torus, by periodic
    trapezoid quadrature, checked against the closed form.
    """
    if i_x < 0 or i_v < 0:
        raise ValueError("actions must be non-negative")
    omega_x, omega_v = unperturbed_frequencies(params)
    angles: np.ndarray = 2.0 * math.pi * np.arange(n_points) / n_points
    theta_x, theta_v = np.meshgrid(angles, angles, indexing="ij")
    xi_x, _ = _oscillator_from_aa(params.m_x, omega_x, i_x, theta_x)
    v, _ = _oscillator_from_aa(params.m_v, omega_v, i_v, theta_v)
    x: np.ndarray = params.x_0 + xi_x
    quadrature: float = float(np.mean(0.5 * params.epsilon * (x * v) ** 2))

    closed: float = averaged_perturbation_closed_form(params, i_x, i_v)
    if abs(quadrature - closed) > AVERAGING_TOL * max(1.0, abs(closed)):
        raise AveragingMismatchError(
            f"angle average {quadrature!r} disagrees with closed form {closed!r}"
        )
    return quadrature


def predicted_frequencies(params: ModelParams, i_x: float, i_v: float) -> FrequencyReport:
    """First-order frequencies omega + d<H_1>/dI from the averaged coupling."""
    omega_x, omega_v = unperturbed_frequencies(params)
    m_omega_x: float = params.m_x * omega_x
    m_omega_v: float = params.m_v * omega_v
    half_eps: float = 0.5 * params.epsilon
    return FrequencyReport(
        omega_x=omega_x,
        omega_v=omega_v,
        omega_x_pred=omega_x + half_eps * i_v / (m_omega_x * m_omega_v),
        omega_v_pred=omega_v + half_eps * (params.x_0**2 + i_x / m_omega_x) / m_omega_v,
        resonance_distance=abs(omega_x - omega_v),
    )


def resonant_params(params: ModelParams) -> ModelParams:
    """Same model with k_v retuned so that omega_v equals omega_x exactly."""
    k_v: float = params.m_v * params.k_x / params.m_x
    return ModelParams.model_validate(
        {**params.model_dump(), "inventory_potential": {"kind": "quadratic", "k_v": k_v}}
    )


def price_bounded_away_from_zero(params: ModelParams, i_x: float) -> bool:
    """True while the unperturbed price swing sqrt(2 I_x / (m_x w_x)) stays short of x = 0."""
    omega_x: float = math.sqrt(params.k_x / params.m_x)
    if omega_x == 0.0:
        return i_x == 0.0
    return math.sqrt(2.0 * i_x / (params.m_x * omega_x)) < abs(params.x_0)


# ------------------Canonicality-------------------#
def _price_map(
    params: ModelParams, transform: Literal["standard", "literal"], action, theta
) -> tuple[np.ndarray, np.ndarray]:
    if transform == "standard":
        omega_x, _ = unperturbed_frequencies(params)
        return _oscillator_from_aa(params.m_x, omega_x, action, theta)
    # x = sqrt(2I/M) sin(theta), p = sqrt(2IK) cos(theta): canonical only when K = M
    return (
        np.sqrt(2.0 * action / params.m_x) * np.sin(theta),
        np.sqrt(2.0 * action * params.k_x) * np.cos(theta),
    )


def canonicality_check(
    params: ModelParams,
    n_samples: int = 100,
    transform: Literal["standard", "literal"] = "standard",
    seed: int = 0,
    step: float = 1e-6,
) -> float:
    """
    Largest deviation of the Poisson bracket {x, p_x} from 1 over random (I, theta),
    using central differences of the price map.
    """
    unperturbed_frequencies(params)
    rng: np.random.Generator = np.random.default_rng(seed)
    action: np.ndarray = rng.uniform(0.05, 2.0, n_samples)
    theta: np.ndarray = rng.uniform(0.0, 2.0 * math.pi, n_samples)

    x_tp, p_tp = _price_map(params, transform, action, theta + step)
    x_tm, p_tm = _price_map(params, transform, action, theta - step)
    x_ip, p_ip = _price_map(params, transform, action + step, theta)
    x_im, p_im = _price_map(params, transform, action - step, theta)
    dx_dtheta: np.ndarray = (x_tp - x_tm) / (2.0 * step)
    dp_dtheta: np.ndarray = (p_tp - p_tm) / (2.0 * step)
    dx_daction: np.ndarray = (x_ip - x_im) / (2.0 * step)
    dp_daction: np.ndarray = (p_ip - p_im) / (2.0 * step)

    bracket: np.ndarray = dx_dtheta * dp_daction - dx_daction * dp_dtheta
    deviation: float = float(np.max(np.abs(bracket - 1.0)))
    logger.info(f"Canonicality ({transform}) max deviation {deviation:.3e} over {n_samples} samples")
    return deviation
