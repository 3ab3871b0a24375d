# Standard Imports
from enum import StrEnum
from typing import Annotated, Literal, Self, Union

# Third Party Imports
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

# My Imports
from ..config import SINGULARITY_REL_TOL


class ModelKind(StrEnum):
    STATIC_RISK = "static_risk"
    DYNAMIC_RISK = "dynamic_risk"
    LIMITED_DEPTH = "limited_depth"


class QuadraticPotential(BaseModel):
    """f(v) = k_v v^2 / 2"""

    model_config = ConfigDict(frozen=True)

    kind: Literal["quadratic"] = "quadratic"
    k_v: float = Field(ge=0)

    def value(self, v):
        return 0.5 * self.k_v * v * v

    def force(self, v):
        return self.k_v * v

    def curvature(self, v):
        return self.k_v + 0.0 * v


class KickPotential(BaseModel):
    """
    Inventory wall at |v| = v_max: f(v) = k_v (|v| - v_max) outside the wall, 0 inside.
    The derivative at exactly |v| = v_max takes the inside branch (0).
    """

    model_config = ConfigDict(frozen=True)

    kind: Literal["kick"] = "kick"
    k_v: float = Field(ge=0)
    v_max: float = Field(gt=0)

    def value(self, v):
        if np.ndim(v) == 0:
            excess: float = abs(v) - self.v_max
            return self.k_v * excess if excess > 0 else 0.0
        return np.where(np.abs(v) > self.v_max, self.k_v * (np.abs(v) - self.v_max), 0.0)

    def force(self, v):
        if np.ndim(v) == 0:
            if abs(v) > self.v_max:
                return self.k_v if v > 0 else -self.k_v
            return 0.0
        return np.where(np.abs(v) > self.v_max, self.k_v * np.sign(v), 0.0)

    def curvature(self, v):
        return 0.0 * v


class NoPotential(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["none"] = "none"

    def value(self, v):
        return 0.0 * v

    def force(self, v):
        return 0.0 * v

    def curvature(self, v):
        return 0.0 * v


InventoryPotential = Annotated[
    Union[QuadraticPotential, KickPotential, NoPotential], Field(discriminator="kind")
]


class ModelParams(BaseModel):
    """Physical constants of one market-maker model instance."""

    model_config = ConfigDict(frozen=True, protected_namespaces=())

    m_x: float = Field(default=1.0, gt=0)
    m_v: float = Field(default=1.0, gt=0)
    m_u: float = Field(default=1.0, gt=0)
    k_x: float = Field(default=0.11, ge=0)
    x_0: float = 3.0
    epsilon: float = Field(default=0.0, ge=0)
    inventory_potential: InventoryPotential = Field(default_factory=NoPotential)
    model_kind: ModelKind = ModelKind.STATIC_RISK

    @model_validator(mode="after")
    def check_potential_matches_kind(self) -> Self:
        kind: str = self.inventory_potential.kind
        if self.model_kind == ModelKind.DYNAMIC_RISK and kind != "none":
            raise ValueError("dynamic_risk requires inventory_potential of kind 'none'")
        if self.model_kind == ModelKind.LIMITED_DEPTH and kind == "none":
            raise ValueError("limited_depth requires a 'quadratic' or 'kick' inventory_potential")
        return self

    @property
    def m_2(self) -> float:
        """Inertia of the second canonical coordinate (v or u)."""
        return self.m_v if self.model_kind == ModelKind.STATIC_RISK else self.m_u

    @property
    def reconstructs_inventory(self) -> bool:
        return self.model_kind != ModelKind.STATIC_RISK

    @property
    def singularity_radius(self) -> float:
        return SINGULARITY_REL_TOL * max(1.0, abs(self.x_0))

    def with_epsilon(self, epsilon: float) -> "ModelParams":
        return ModelParams.model_validate({**self.model_dump(), "epsilon": epsilon})


def default_static_params(epsilon: float = 0.0, x_0: float = 3.0) -> ModelParams:
    """The StaticRisk setting used throughout the simulation study."""
    return ModelParams(
        m_x=1.0,
        m_v=1.0,
        k_x=0.11,
        x_0=x_0,
        epsilon=epsilon,
        inventory_potential=QuadraticPotential(k_v=0.1),
        model_kind=ModelKind.STATIC_RISK,
    )
