# Standard Imports
import math
from enum import StrEnum
from typing import Self

# Third Party Imports
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator


class PhaseState(BaseModel):
    """
    One point in phase space. (q1, q2) is (x, v) for the static model and
    (x, u = x v) for the dynamic and limited-depth models; p1, p2 are the conjugate momenta.
    """

    model_config = ConfigDict(frozen=True)

    q1: float
    q2: float
    p1: float
    p2: float
    t: float = 0.0

    @model_validator(mode="after")
    def check_finite(self) -> Self:
        for name in ("q1", "q2", "p1", "p2", "t"):
            if not math.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        return self

    def as_array(self) -> np.ndarray:
        return np.array([self.q1, self.q2, self.p1, self.p2], dtype=float)

    @classmethod
    def from_array(cls, z, t: float = 0.0) -> "PhaseState":
        return cls(q1=float(z[0]), q2=float(z[1]), p1=float(z[2]), p2=float(z[3]), t=t)

    def reversed(self) -> "PhaseState":
        return PhaseState(q1=self.q1, q2=self.q2, p1=-self.p1, p2=-self.p2, t=self.t)


class PotentialGrid(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    x_values: np.ndarray
    v_values: np.ndarray
    values: np.ndarray

    @model_validator(mode="after")
    def check_shape(self) -> Self:
        if self.values.shape != (len(self.x_values), len(self.v_values)):
            raise ValueError("values must be len(x_values) x len(v_values)")
        return self


class TrajectoryStatus(StrEnum):
    COMPLETED = "completed"
    BLOW_UP = "blow_up"
    SINGULARITY_EXIT = "singularity_exit"


class Trajectory(BaseModel):
    """
    Uniformly sampled orbit. Row i of `coords` is (q1, q2, p1, p2) at step i * record_every.
    When `status` is not completed, the record stops before `terminated_at`.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    dt: float = Field(gt=0)
    record_every: int = Field(default=1, ge=1)
    times: np.ndarray
    coords: np.ndarray
    energies: np.ndarray
    inventory: np.ndarray
    status: TrajectoryStatus = TrajectoryStatus.COMPLETED
    terminated_at: int | None = None

    def __len__(self) -> int:
        return len(self.times)

    @property
    def sample_dt(self) -> float:
        return self.dt * self.record_every

    def state(self, i: int) -> PhaseState:
        return PhaseState.from_array(self.coords[i], t=float(self.times[i]))

    @property
    def states(self) -> list[PhaseState]:
        return [self.state(i) for i in range(len(self))]

    def component(self, name: str) -> np.ndarray:
        match name:
            case "x" | "q1":
                return self.coords[:, 0]
            case "q2" | "u":
                return self.coords[:, 1]
            case "v":
                return self.inventory
            case "p_x" | "p1":
                return self.coords[:, 2]
            case "p_v" | "p_u" | "p2":
                return self.coords[:, 3]
            case "t":
                return self.times
            case "energy":
                return self.energies
        raise KeyError(f"unknown trajectory component `{name}`")

    def max_energy_drift(self) -> float:
        if len(self) == 0:
            return 0.0
        return float(np.max(np.abs(self.energies - self.energies[0])))


class LagrangianTrajectory(BaseModel):
    """Second-order record (t, x, v, x_dot, v_dot) from the Euler-Lagrange route."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    dt: float = Field(gt=0)
    times: np.ndarray
    values: np.ndarray
    status: TrajectoryStatus = TrajectoryStatus.COMPLETED
    terminated_at: int | None = None

    def __len__(self) -> int:
        return len(self.times)

    @property
    def x(self) -> np.ndarray:
        return self.values[:, 0]

    @property
    def v(self) -> np.ndarray:
        return self.values[:, 1]

    @property
    def x_dot(self) -> np.ndarray:
        return self.values[:, 2]

    @property
    def v_dot(self) -> np.ndarray:
        return self.values[:, 3]
