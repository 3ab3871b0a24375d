# Standard Imports
import math
from enum import StrEnum
from typing import Any, Self

# Third Party Imports
from pydantic import BaseModel, ConfigDict, Field, model_validator

# My Imports
from ..config import DEFAULT_DT, ENERGY_TOL
from .params import ModelParams
from .results import Scheme
from .states import PhaseState


class EnsembleAnalysis(StrEnum):
    POINCARE = "poincare"
    LYAPUNOV = "lyapunov"
    TRAJECTORY = "trajectory"


class Interval(BaseModel):
    model_config = ConfigDict(frozen=True)

    low: float
    high: float

    @model_validator(mode="after")
    def check_bounds(self) -> Self:
        if not (math.isfinite(self.low) and math.isfinite(self.high)):
            raise ValueError("interval bounds must be finite")
        if self.high <= self.low:
            raise ValueError("interval high must exceed low")
        return self

    def contains(self, value: float) -> bool:
        return self.low <= value <= self.high


class SamplingBox(BaseModel):
    """Per-coordinate bounds for uniform candidate draws, in canonical coordinates."""

    model_config = ConfigDict(frozen=True)

    q1: Interval
    q2: Interval
    p1: Interval
    p2: Interval

    def bounds(self) -> tuple[list[float], list[float]]:
        intervals: list[Interval] = [self.q1, self.q2, self.p1, self.p2]
        return [i.low for i in intervals], [i.high for i in intervals]


class EnsembleConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    params: ModelParams
    energy_target: float
    energy_tol: float = Field(default=ENERGY_TOL, gt=0)
    n_paths: int = Field(default=100, ge=1)
    master_seed: int = Field(default=0, ge=0, lt=2**64)
    dt: float = Field(default=DEFAULT_DT, gt=0)
    n_steps: int = Field(default=100_000, ge=1)
    scheme: Scheme = Scheme.YOSHIDA4
    record_every: int = Field(default=1, ge=1)
    renorm_every: int = Field(default=10, ge=1)
    zero_threshold: float = Field(default=1e-3, ge=0)
    sampling_box: SamplingBox | None = None

    @model_validator(mode="after")
    def check_box_contains_equilibrium(self) -> Self:
        if self.sampling_box is not None:
            box: SamplingBox = self.sampling_box
            if not (
                box.q1.contains(self.params.x_0)
                and box.q2.contains(0.0)
                and box.p1.contains(0.0)
                and box.p2.contains(0.0)
            ):
                raise ValueError("sampling_box must contain the equilibrium point")
        return self


class PathResult(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    path_index: int = Field(ge=0)
    initial_state: PhaseState | None = None
    ok: bool = True
    error: str | None = None
    payload: Any = None


class RangeSummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    count: int
    minimum: float
    maximum: float
    mean: float

    @property
    def spread(self) -> float:
        return self.maximum - self.minimum
