# Standard Imports
from typing import Annotated, Literal, Self, Union

# Third Party Imports
from pydantic import BaseModel, ConfigDict, Field, model_validator

# My Imports
from ..config import DEFAULT_DT, ENERGY_TOL, KICK_DT, RENORM_EVERY, ZERO_THRESHOLD
from .ensemble import SamplingBox
from .params import ModelKind, ModelParams
from .results import Scheme
from .states import PhaseState

Seed = Annotated[int, Field(ge=0, lt=2**64)]


class IntegratorConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    scheme: Scheme = Scheme.YOSHIDA4
    dt: float = Field(default=DEFAULT_DT, gt=0)
    n_steps: int = Field(default=100_000, ge=1)
    record_every: int = Field(default=1, ge=1)


class OutputConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    directory: str = "out"
    formats: list[Literal["csv", "json", "svg"]] = Field(default_factory=lambda: ["csv", "json"])


class _SampledStart(BaseModel):
    """An explicit initial state, or one sampled at an energy target."""

    model_config = ConfigDict(extra="forbid")

    initial_state: PhaseState | None = None
    energy_target: float | None = None
    energy_tol: float = Field(default=ENERGY_TOL, gt=0)
    master_seed: Seed = 0
    path_index: int = Field(default=0, ge=0)
    sampling_box: SamplingBox | None = None

    @model_validator(mode="after")
    def check_one_start(self) -> Self:
        if (self.initial_state is None) == (self.energy_target is None):
            raise ValueError("exactly one of initial_state / energy_target must be given")
        return self


class SimulateExperiment(_SampledStart):
    kind: Literal["simulate"] = "simulate"


class SampleHistExperiment(_SampledStart):
    kind: Literal["sample-hist"] = "sample-hist"
    every_n: int = Field(default=100, ge=1)
    n_bins: int = Field(default=50, ge=1)
    hist_range: tuple[float, float] | None = None

    @model_validator(mode="after")
    def check_hist_range(self) -> Self:
        if self.hist_range is not None and not self.hist_range[1] > self.hist_range[0]:
            raise ValueError("hist_range must be non-degenerate (high > low)")
        return self


class PoincareExperiment(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["poincare"] = "poincare"
    energy_targets: list[float] = Field(default_factory=lambda: [1.0], min_length=1)
    epsilons: list[Annotated[float, Field(ge=0)]] | None = None
    energy_tol: float = Field(default=ENERGY_TOL, gt=0)
    n_paths: int = Field(default=100, ge=1)
    master_seed: Seed = 0
    sampling_box: SamplingBox | None = None


class LyapunovExperiment(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["lyapunov"] = "lyapunov"
    epsilons: list[Annotated[float, Field(ge=0)]] = Field(min_length=1)
    energy_target: float = 5.0
    energy_tol: float = Field(default=ENERGY_TOL, gt=0)
    n_paths: int = Field(default=5, ge=1)
    master_seed: Seed = 0
    renorm_every: int = Field(default=RENORM_EVERY, ge=1)
    zero_threshold: float = Field(default=ZERO_THRESHOLD, ge=0)
    sampling_box: SamplingBox | None = None


class KamCheckExperiment(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["kam-check"] = "kam-check"
    epsilons: list[Annotated[float, Field(ge=0)]] = Field(min_length=1)
    i_x: float = Field(default=0.1, ge=0)
    i_v: float = Field(default=0.1, ge=0)
    theta_x: float = 0.0
    theta_v: float = 0.0


class PotentialGridExperiment(BaseModel):
    model_config = ConfigDict(extra="forbid")

    kind: Literal["potential-grid"] = "potential-grid"
    x_range: tuple[float, float] = (-2.0, 4.0)
    v_range: tuple[float, float] = (-3.0, 3.0)
    n: int = Field(default=101, ge=2)
    epsilons: list[Annotated[float, Field(ge=0)]] | None = None

    @model_validator(mode="after")
    def check_ranges(self) -> Self:
        for name in ("x_range", "v_range"):
            low, high = getattr(self, name)
            if not high > low:
                raise ValueError(f"{name} must be non-degenerate (high > low)")
        return self


Experiment = Annotated[
    Union[
        SimulateExperiment,
        PoincareExperiment,
        LyapunovExperiment,
        KamCheckExperiment,
        SampleHistExperiment,
        PotentialGridExperiment,
    ],
    Field(discriminator="kind"),
]

STATIC_ONLY: set[str] = {"poincare", "kam-check", "potential-grid"}


class RunConfig(BaseModel):
    """A whole experiment: model block, integrator block, one experiment block, output block."""

    model_config = ConfigDict(extra="forbid")

    model: ModelParams
    integrator: IntegratorConfig = Field(default_factory=IntegratorConfig)
    experiment: Experiment
    output: OutputConfig = Field(default_factory=OutputConfig)

    @model_validator(mode="after")
    def default_kick_step(self) -> Self:
        """
        The kick potential is not smooth at |v| = v_max: leapfrog with a fine step unless
        the scheme or dt was given explicitly.
        """
        if self.model.inventory_potential.kind != "kick":
            return self
        explicit: set[str] = self.integrator.model_fields_set
        if "dt" not in explicit:
            self.integrator.dt = KICK_DT
        if "scheme" not in explicit:
            self.integrator.scheme = Scheme.LEAPFROG
        return self

    @model_validator(mode="after")
    def check_experiment_fits_model(self) -> Self:
        kind: str = self.experiment.kind
        if kind in STATIC_ONLY and self.model.model_kind != ModelKind.STATIC_RISK:
            raise ValueError(f"model.model_kind: experiment `{kind}` requires static_risk")
        if kind == "kam-check" and self.model.inventory_potential.kind != "quadratic":
            raise ValueError("model.inventory_potential: kam-check requires a quadratic potential")
        if kind == "kam-check" and (self.model.k_x <= 0 or self.model.inventory_potential.k_v <= 0):
            raise ValueError("model.k_x: kam-check requires positive stiffnesses")
        return self
