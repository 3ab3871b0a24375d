"""
The three market-maker Hamiltonians.

Static risk aversion lives in (x, v, P_x, P_v):
    H = P_x^2/2m_x + P_v^2/2m_v + k_x (x - x_0)^2/2 + eps (x v)^2/2 + f(v)

Dynamic risk aversion and limited market depth live in the risk-position coordinates
(x, u = x v, P_x, P_u), where the kinetic energy is diagonal:
    H = P_x^2/2m_x + P_u^2/2m_u + k_x (x - x_0)^2/2 + eps u^2/2 [+ f(u/x)]

Every function here is pure.
"""

# Standard Imports
import math

# Third Party Imports
import numpy as np

# My Imports
from ..exceptions import SingularityError
from ..models import (
    InventoryRegime,
    ModelKind,
    ModelParams,
    PhaseState,
    PotentialGrid,
)


# ------------------Guards-------------------#
def check_price(params: ModelParams, x: float) -> None:
    """Raise when the price is inside the singular neighbourhood of x = 0."""
    if abs(x) < params.singularity_radius:
        raise SingularityError(f"price x={x!r} is within the singular region around x = 0")


def reconstruct_inventory(params: ModelParams, state: PhaseState) -> float:
    if not params.reconstructs_inventory:
        return state.q2
    check_price(params, state.q1)
    return state.q2 / state.q1


# ------------------Energy-------------------#
def kinetic_energy(params: ModelParams, p1, p2):
    return 0.5 * p1 * p1 / params.m_x + 0.5 * p2 * p2 / params.m_2


def potential_energy(params: ModelParams, q1: float, q2: float) -> float:
    """V in the integration coordinates of the model."""
    f = params.inventory_potential
    price_term: float = 0.5 * params.k_x * (q1 - params.x_0) ** 2
    match params.model_kind:
        case ModelKind.STATIC_RISK:
            return price_term + 0.5 * params.epsilon * (q1 * q2) ** 2 + f.value(q2)
        case ModelKind.DYNAMIC_RISK:
            return price_term + 0.5 * params.epsilon * q2 * q2
        case ModelKind.LIMITED_DEPTH:
            check_price(params, q1)
            return price_term + 0.5 * params.epsilon * q2 * q2 + f.value(q2 / q1)


def potential_xv(params: ModelParams, x, v):
    """
    V expressed in price/inventory coordinates. Since u = x v the three models share
    this form, and it has no singularity. Works elementwise on numpy arrays.
    """
    return (
        0.5 * params.k_x * (x - params.x_0) ** 2
        + 0.5 * params.epsilon * (x * v) ** 2
        + params.inventory_potential.value(v)
    )


def energy(params: ModelParams, state: PhaseState) -> float:
    return float(
        kinetic_energy(params, state.p1, state.p2)
        + potential_energy(params, state.q1, state.q2)
    )


def energy_of(params: ModelParams, q1: float, q2: float, p1: float, p2: float) -> float:
    return float(kinetic_energy(params, p1, p2) + potential_energy(params, q1, q2))


# ------------------Derivatives-------------------#
def grad_potential(params: ModelParams, q1: float, q2: float) -> tuple[float, float]:
    f = params.inventory_potential
    eps: float = params.epsilon
    d_price: float = params.k_x * (q1 - params.x_0)
    match params.model_kind:
        case ModelKind.STATIC_RISK:
            return d_price + eps * q2 * q2 * q1, eps * q1 * q1 * q2 + f.force(q2)
        case ModelKind.DYNAMIC_RISK:
            return d_price, eps * q2
        case ModelKind.LIMITED_DEPTH:
            check_price(params, q1)
            v: float = q2 / q1
            fp: float = f.force(v)
            return d_price - fp * v / q1, eps * q2 + fp / q1


def hessian_potential(params: ModelParams, q1: float, q2: float) -> np.ndarray:
    f = params.inventory_potential
    eps: float = params.epsilon
    match params.model_kind:
        case ModelKind.STATIC_RISK:
            h11: float = params.k_x + eps * q2 * q2
            h12: float = 2.0 * eps * q1 * q2
            h22: float = eps * q1 * q1 + f.curvature(q2)
        case ModelKind.DYNAMIC_RISK:
            h11, h12, h22 = params.k_x, 0.0, eps
        case ModelKind.LIMITED_DEPTH:
            check_price(params, q1)
            v: float = q2 / q1
            fp: float = f.force(v)
            fpp: float = f.curvature(v)
            x2: float = q1 * q1
            h11 = params.k_x + fpp * v * v / x2 + 2.0 * fp * v / x2
            h12 = -(fpp * v + fp) / x2
            h22 = eps + fpp / x2
    return np.array([[h11, h12], [h12, h22]], dtype=float)


def eom_rhs(params: ModelParams, state: PhaseState) -> np.ndarray:
    """Hamilton's equations: (q1', q2', p1', p2')."""
    g1, g2 = grad_potential(params, state.q1, state.q2)
    return np.array(
        [state.p1 / params.m_x, state.p2 / params.m_2, -g1, -g2],
        dtype=float,
    )


def el_rhs(
    params: ModelParams, x: float, v: float, x_dot: float, v_dot: float
) -> tuple[float, float]:
    """Euler-Lagrange accelerations (x'', v'') in price/inventory coordinates."""
    f = params.inventory_potential
    eps: float = params.epsilon
    match params.model_kind:
        case ModelKind.STATIC_RISK:
            x_ddot: float = -((params.k_x + eps * v * v) / params.m_x) * x + (
                params.k_x / params.m_x
            ) * params.x_0
            v_ddot: float = -(eps * x * x * v + f.force(v)) / params.m_v
            return x_ddot, v_ddot
        case ModelKind.DYNAMIC_RISK | ModelKind.LIMITED_DEPTH:
            check_price(params, x)
            x_ddot = -(params.k_x / params.m_x) * (x - params.x_0)
            stiffness: float = eps / params.m_u - params.k_x * (x - params.x_0) / (params.m_x * x)
            v_ddot = -2.0 * (x_dot / x) * v_dot - stiffness * v
            if params.model_kind == ModelKind.LIMITED_DEPTH:
                fp: float = f.force(v)
                x_ddot += (v / x) * fp
                v_ddot -= (1.0 + v / x) * fp
            return x_ddot, v_ddot


# ------------------Closed-Form-------------------#
def _harmonic(centre: float, q0: float, q_dot0: float, omega: float, t: float) -> float:
    if t == 0.0:
        return q0
    if omega == 0.0:
        return q0 + q_dot0 * t
    return centre + (q0 - centre) * math.cos(omega * t) + (q_dot0 / omega) * math.sin(omega * t)


def dynamic_closed_form(
    params: ModelParams, ic: tuple[float, float, float, float], t: float
) -> tuple[float, float, float]:
    """
    Exact solution of the dynamic risk model from ic = (x, x_dot, u, u_dot).
    Price and risk position are independent harmonic oscillators; v = u/x.
    """
    if params.model_kind != ModelKind.DYNAMIC_RISK:
        raise ValueError("dynamic_closed_form applies to the dynamic_risk model only")
    x0, x_dot0, u0, u_dot0 = ic
    omega_x: float = math.sqrt(params.k_x / params.m_x)
    omega_u: float = math.sqrt(params.epsilon / params.m_u)
    x: float = _harmonic(params.x_0, x0, x_dot0, omega_x, t)
    u: float = _harmonic(0.0, u0, u_dot0, omega_u, t)
    check_price(params, x)
    return x, u, u / x


# ------------------Potential-Surface-------------------#
def potential_grid(
    params: ModelParams,
    x_range: tuple[float, float],
    v_range: tuple[float, float],
    n: int,
) -> PotentialGrid:
    if n < 2:
        raise ValueError("potential_grid needs n >= 2")
    if not (x_range[1] > x_range[0] and v_range[1] > v_range[0]):
        raise ValueError("potential_grid ranges must be non-degenerate")
    x_values: np.ndarray = np.linspace(x_range[0], x_range[1], n)
    v_values: np.ndarray = np.linspace(v_range[0], v_range[1], n)
    xx, vv = np.meshgrid(x_values, v_values, indexing="ij")
    values: np.ndarray = np.asarray(potential_xv(params, xx, vv), dtype=float)
    return PotentialGrid(x_values=x_values, v_values=v_values, values=values)


# ------------------Market-Diagnostics-------------------#
def effective_price_stiffness(params: ModelParams, v: float) -> float:
    """Risk aversion stiffens the price restoring force: K_x -> K_x + eps v^2."""
    return params.k_x + params.epsilon * v * v


def effective_equilibrium(params: ModelParams, v: float) -> float:
    stiffness: float = effective_price_stiffness(params, v)
    if stiffness == 0.0:
        raise ValueError("no restoring force on the price, equilibrium undefined")
    return params.k_x * params.x_0 / stiffness


def inventory_stability(params: ModelParams, x: float, x_dot: float) -> InventoryRegime:
    """
    The inventory behaves as an oscillator whose damping and stiffness are set by the
    price; it stays bounded while (x'/x)^2 is below that stiffness.
    """
    if not params.reconstructs_inventory:
        raise ValueError("inventory_stability applies to the dynamic and limited-depth models")
    check_price(params, x)
    stiffness: float = params.epsilon / params.m_u - params.k_x * (x - params.x_0) / (
        params.m_x * x
    )
    if (x_dot / x) ** 2 < stiffness:
        return InventoryRegime.STABLE
    return InventoryRegime.UNSTABLE


# ------------------Coordinates-------------------#
def canonical_from_lagrangian(
    params: ModelParams, x: float, v: float, x_dot: float, v_dot: float, t: float = 0.0
) -> PhaseState:
    """(x, v, x', v') -> canonical state; for the risk-position models u = x v, P_u = m_u u'."""
    if not params.reconstructs_inventory:
        return PhaseState(q1=x, q2=v, p1=params.m_x * x_dot, p2=params.m_v * v_dot, t=t)
    u_dot: float = x_dot * v + x * v_dot
    return PhaseState(q1=x, q2=x * v, p1=params.m_x * x_dot, p2=params.m_u * u_dot, t=t)


def lagrangian_from_canonical(
    params: ModelParams, state: PhaseState
) -> tuple[float, float, float, float]:
    x_dot: float = state.p1 / params.m_x
    if not params.reconstructs_inventory:
        return state.q1, state.q2, x_dot, state.p2 / params.m_v
    check_price(params, state.q1)
    v: float = state.q2 / state.q1
    u_dot: float = state.p2 / params.m_u
    return state.q1, v, x_dot, (u_dot - x_dot * v) / state.q1
