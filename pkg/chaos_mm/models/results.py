# Standard Imports
import math
from enum import StrEnum
from typing import Literal, Self

# Third Party Imports
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

# My Imports
from .params import ModelParams
from .states import TrajectoryStatus


class Scheme(StrEnum):
    LEAPFROG = "leapfrog"
    YOSHIDA4 = "yoshida4"


class InventoryRegime(StrEnum):
    STABLE = "stable"
    UNSTABLE = "unstable"


class SectionCondition(BaseModel):
    model_config = ConfigDict(frozen=True)

    coordinate: Literal["v"] = "v"
    level: float = 0.0
    direction: Literal["up"] = "up"


class SectionPoint(BaseModel):
    model_config = ConfigDict(frozen=True)

    path_id: int = Field(ge=0)
    t_cross: float
    x: float
    p_x: float


class PoincareSection(BaseModel):
    condition: SectionCondition = Field(default_factory=SectionCondition)
    points: list[SectionPoint] = Field(default_factory=list)
    energy_target: float | None = None
    params: ModelParams

    def path_points(self, path_id: int) -> np.ndarray:
        """(x, p_x) rows of one path, in crossing order."""
        rows: list[tuple[float, float]] = [
            (point.x, point.p_x) for point in self.points if point.path_id == path_id
        ]
        return np.array(rows, dtype=float).reshape(-1, 2)

    @property
    def path_ids(self) -> list[int]:
        return sorted({point.path_id for point in self.points})


class LyapunovSpectrum(BaseModel):
    """Exponents in inverse time units, sorted descending."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    exponents: list[float] = Field(min_length=4, max_length=4)
    renorm_interval: int = Field(ge=1)
    history: np.ndarray
    elapsed_time: float = Field(ge=0)
    h_ks: float = Field(ge=0)
    zero_threshold: float = Field(ge=0)
    truncated: bool = False
    status: TrajectoryStatus = TrajectoryStatus.COMPLETED

    @model_validator(mode="after")
    def check_sorted(self) -> Self:
        if any(a < b for a, b in zip(self.exponents, self.exponents[1:])):
            raise ValueError("exponents must be sorted descending")
        return self

    @property
    def lambda_max(self) -> float:
        return self.exponents[0]

    @property
    def pairing_defects(self) -> tuple[float, float]:
        lam: list[float] = self.exponents
        return abs(lam[0] + lam[3]), abs(lam[1] + lam[2])

    @property
    def lyapunov_time(self) -> float:
        if self.lambda_max > self.zero_threshold:
            return 1.0 / self.lambda_max
        return math.inf


class ActionAngle(BaseModel):
    model_config = ConfigDict(frozen=True)

    i_x: float = Field(ge=0)
    theta_x: float
    i_v: float = Field(ge=0)
    theta_v: float

    @model_validator(mode="after")
    def check_angles(self) -> Self:
        for name in ("theta_x", "theta_v"):
            angle: float = getattr(self, name)
            if not 0.0 <= angle < 2.0 * math.pi:
                raise ValueError(f"{name} must lie in [0, 2*pi)")
        return self

    @classmethod
    def wrapped(cls, i_x: float, theta_x: float, i_v: float, theta_v: float) -> "ActionAngle":
        return cls(i_x=i_x, theta_x=wrap_angle(theta_x), i_v=i_v, theta_v=wrap_angle(theta_v))


class FrequencyReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    omega_x: float
    omega_v: float
    omega_x_pred: float
    omega_v_pred: float
    resonance_distance: float

    @model_validator(mode="after")
    def check_distance(self) -> Self:
        if self.resonance_distance != abs(self.omega_x - self.omega_v):
            raise ValueError("resonance_distance must equal |omega_x - omega_v|")
        return self


def wrap_angle(theta: float) -> float:
    wrapped: float = math.fmod(theta, 2.0 * math.pi)
    if wrapped < 0.0:
        wrapped += 2.0 * math.pi
    # fmod of a value just below a multiple of 2*pi can round up to 2*pi itself
    if wrapped >= 2.0 * math.pi:
        wrapped = 0.0
    return wrapped
