"""
Fixed-step integrators.

The Hamiltonians are separable in their integration coordinates, so the symplectic
schemes are kick-drift-kick leapfrog and its fourth-order Yoshida composition.
A classical Runge-Kutta route on the Euler-Lagrange equations is kept as an
independent cross-check.
"""

# Standard Imports
import logging
import math
from collections.abc import Callable
from logging import Logger

# Third Party Imports
import numpy as np

# My Imports
from ..config import BLOW_UP_THRESHOLD
from ..exceptions import SingularityError
from ..models import (
    LagrangianTrajectory,
    ModelParams,
    PhaseState,
    Scheme,
    Trajectory,
    TrajectoryStatus,
)
from .hamiltonian import el_rhs, grad_potential, kinetic_energy, potential_xv

logging.basicConfig(level=logging.INFO)
logger: Logger = logging.getLogger(__name__)

Coords = tuple[float, float, float, float]

YOSHIDA_W1: float = 1.0 / (2.0 - 2.0 ** (1.0 / 3.0))
YOSHIDA_W0: float = 1.0 - 2.0 * YOSHIDA_W1


# ------------------Steppers-------------------#
def _leapfrog(params: ModelParams, z: Coords, dt: float) -> Coords:
    q1, q2, p1, p2 = z
    half: float = 0.5 * dt
    g1, g2 = grad_potential(params, q1, q2)
    p1 -= half * g1
    p2 -= half * g2
    q1 += dt * p1 / params.m_x
    q2 += dt * p2 / params.m_2
    g1, g2 = grad_potential(params, q1, q2)
    p1 -= half * g1
    p2 -= half * g2
    return q1, q2, p1, p2


def _yoshida4(params: ModelParams, z: Coords, dt: float) -> Coords:
    z = _leapfrog(params, z, YOSHIDA_W1 * dt)
    z = _leapfrog(params, z, YOSHIDA_W0 * dt)
    return _leapfrog(params, z, YOSHIDA_W1 * dt)


STEPPERS: dict[Scheme, Callable[[ModelParams, Coords, float], Coords]] = {
    Scheme.LEAPFROG: _leapfrog,
    Scheme.YOSHIDA4: _yoshida4,
}


def _coords(state: PhaseState) -> Coords:
    return state.q1, state.q2, state.p1, state.p2


def step_leapfrog(params: ModelParams, state: PhaseState, dt: float) -> PhaseState:
    q1, q2, p1, p2 = _leapfrog(params, _coords(state), dt)
    return PhaseState(q1=q1, q2=q2, p1=p1, p2=p2, t=state.t + dt)


def step_yoshida4(params: ModelParams, state: PhaseState, dt: float) -> PhaseState:
    q1, q2, p1, p2 = _yoshida4(params, _coords(state), dt)
    return PhaseState(q1=q1, q2=q2, p1=p1, p2=p2, t=state.t + dt)


# ------------------Domain-Monitoring-------------------#
def domain_exit(params: ModelParams, previous: Coords, current: Coords) -> TrajectoryStatus | None:
    """
    Classify a step. None while the orbit stays inside the model's domain; for the
    risk-position models a price that reaches or crosses x = 0 is a singularity exit.
    """
    if not all(math.isfinite(c) and abs(c) <= BLOW_UP_THRESHOLD for c in current):
        return TrajectoryStatus.BLOW_UP
    if params.reconstructs_inventory:
        x: float = current[0]
        if abs(x) < params.singularity_radius or x * previous[0] < 0.0:
            return TrajectoryStatus.SINGULARITY_EXIT
        if abs(current[1] / x) > BLOW_UP_THRESHOLD:
            return TrajectoryStatus.BLOW_UP
    return None


class Propagator:
    """Steps one orbit and remembers why it stopped."""

    def __init__(self, params: ModelParams, ic: PhaseState, dt: float, scheme: Scheme) -> None:
        self.params: ModelParams = params
        self.dt: float = dt
        self.stepper: Callable[[ModelParams, Coords, float], Coords] = STEPPERS[Scheme(scheme)]
        self.z: Coords = _coords(ic)
        self.t0: float = ic.t
        self.step: int = 0
        self.status: TrajectoryStatus = TrajectoryStatus.COMPLETED
        self.terminated_at: int | None = None
        if params.reconstructs_inventory and abs(ic.q1) < params.singularity_radius:
            self._stop(TrajectoryStatus.SINGULARITY_EXIT, 0)

    @property
    def alive(self) -> bool:
        return self.terminated_at is None

    @property
    def t(self) -> float:
        return self.t0 + self.step * self.dt

    def _stop(self, status: TrajectoryStatus, step: int) -> None:
        self.status = status
        self.terminated_at = step

    def advance(self) -> bool:
        """One step forward; False (and the state left untouched) when the orbit terminates."""
        if not self.alive:
            return False
        try:
            z_new: Coords = self.stepper(self.params, self.z, self.dt)
        except (SingularityError, ZeroDivisionError):
            self._stop(TrajectoryStatus.SINGULARITY_EXIT, self.step + 1)
            return False
        except OverflowError:
            self._stop(TrajectoryStatus.BLOW_UP, self.step + 1)
            return False
        verdict: TrajectoryStatus | None = domain_exit(self.params, self.z, z_new)
        if verdict is not None:
            self._stop(verdict, self.step + 1)
            return False
        self.z = z_new
        self.step += 1
        return True


def validate_run(dt: float, n_steps: int, record_every: int = 1) -> None:
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    if n_steps < 1:
        raise ValueError(f"n_steps must be at least 1, got {n_steps}")
    if record_every < 1:
        raise ValueError(f"record_every must be at least 1, got {record_every}")


# ------------------Trajectories-------------------#
def build_trajectory(
    params: ModelParams,
    t0: float,
    dt: float,
    record_every: int,
    steps: list[int],
    rows: list[Coords],
    status: TrajectoryStatus,
    terminated_at: int | None,
) -> Trajectory:
    coords: np.ndarray = np.array(rows, dtype=float).reshape(-1, 4)
    times: np.ndarray = t0 + np.array(steps, dtype=float) * dt
    inventory: np.ndarray = (
        coords[:, 1] / coords[:, 0] if params.reconstructs_inventory else coords[:, 1].copy()
    )
    energies: np.ndarray = np.asarray(
        kinetic_energy(params, coords[:, 2], coords[:, 3])
        + potential_xv(params, coords[:, 0], inventory),
        dtype=float,
    )
    return Trajectory(
        dt=dt,
        record_every=record_every,
        times=times,
        coords=coords,
        energies=energies,
        inventory=inventory,
        status=status,
        terminated_at=terminated_at,
    )


def integrate(
    params: ModelParams,
    ic: PhaseState,
    dt: float,
    n_steps: int,
    scheme: Scheme = Scheme.YOSHIDA4,
    record_every: int = 1,
) -> Trajectory:
    """
    Integrate from `ic`, keeping every `record_every`-th state. Blow-up (any component
    beyond 1e12) and singularity exits end the run early and are reported in `status`.
    """
    validate_run(dt, n_steps, record_every)
    orbit: Propagator = Propagator(params, ic, dt, scheme)
    steps: list[int] = []
    rows: list[Coords] = []
    if orbit.alive:
        steps.append(0)
        rows.append(orbit.z)
    while orbit.step < n_steps and orbit.advance():
        if orbit.step % record_every == 0:
            steps.append(orbit.step)
            rows.append(orbit.z)

    if orbit.status != TrajectoryStatus.COMPLETED:
        logger.warning(f"Integration stopped with {orbit.status} at step {orbit.terminated_at}")
    return build_trajectory(
        params, ic.t, dt, record_every, steps, rows, orbit.status, orbit.terminated_at
    )


# ------------------Euler-Lagrange-Route-------------------#
def _el_derivative(params: ModelParams, y: np.ndarray) -> np.ndarray:
    x_ddot, v_ddot = el_rhs(params, y[0], y[1], y[2], y[3])
    return np.array([y[2], y[3], x_ddot, v_ddot], dtype=float)


def _rk4(params: ModelParams, y: np.ndarray, dt: float) -> np.ndarray:
    k1: np.ndarray = _el_derivative(params, y)
    k2: np.ndarray = _el_derivative(params, y + 0.5 * dt * k1)
    k3: np.ndarray = _el_derivative(params, y + 0.5 * dt * k2)
    k4: np.ndarray = _el_derivative(params, y + dt * k3)
    return y + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def integrate_el_rk4(
    params: ModelParams,
    ic: tuple[float, float, float, float],
    dt: float,
    n_steps: int,
    t0: float = 0.0,
) -> LagrangianTrajectory:
    """Classical RK4 on (x, v, x', v') using the Euler-Lagrange accelerations."""
    validate_run(dt, n_steps)
    y: np.ndarray = np.array(ic, dtype=float)
    rows: list[np.ndarray] = []
    status: TrajectoryStatus = TrajectoryStatus.COMPLETED
    terminated_at: int | None = None

    if params.reconstructs_inventory and abs(y[0]) < params.singularity_radius:
        status, terminated_at = TrajectoryStatus.SINGULARITY_EXIT, 0
    else:
        rows.append(y)
        for step in range(1, n_steps + 1):
            try:
                y_new: np.ndarray = _rk4(params, y, dt)
            except (SingularityError, ZeroDivisionError):
                status, terminated_at = TrajectoryStatus.SINGULARITY_EXIT, step
                break
            verdict: TrajectoryStatus | None = None
            if not np.all(np.isfinite(y_new)) or np.max(np.abs(y_new)) > BLOW_UP_THRESHOLD:
                verdict = TrajectoryStatus.BLOW_UP
            elif params.reconstructs_inventory and (
                abs(y_new[0]) < params.singularity_radius or y_new[0] * y[0] < 0.0
            ):
                verdict = TrajectoryStatus.SINGULARITY_EXIT
            if verdict is not None:
                status, terminated_at = verdict, step
                break
            y = y_new
            rows.append(y)

    if status != TrajectoryStatus.COMPLETED:
        logger.warning(f"Euler-Lagrange integration stopped with {status} at step {terminated_at}")
    values: np.ndarray = np.array(rows, dtype=float).reshape(-1, 4)
    times: np.ndarray = t0 + np.arange(len(values), dtype=float) * dt
    return LagrangianTrajectory(
        dt=dt, times=times, values=values, status=status, terminated_at=terminated_at
    )
