from .params import (
    ModelKind,  # noqa: F401
    ModelParams,  # noqa: F401
    QuadraticPotential,  # noqa: F401
    KickPotential,  # noqa: F401
    NoPotential,  # noqa: F401
    InventoryPotential,  # noqa: F401
    default_static_params,  # noqa: F401
)
from .states import (
    PhaseState,  # noqa: F401
    PotentialGrid,  # noqa: F401
    Trajectory,  # noqa: F401
    TrajectoryStatus,  # noqa: F401
    LagrangianTrajectory,  # noqa: F401
)
from .results import (
    Scheme,  # noqa: F401
    InventoryRegime,  # noqa: F401
    SectionCondition,  # noqa: F401
    SectionPoint,  # noqa: F401
    PoincareSection,  # noqa: F401
    LyapunovSpectrum,  # noqa: F401
    ActionAngle,  # noqa: F401
    FrequencyReport,  # noqa: F401
    wrap_angle,  # noqa: F401
)
from .ensemble import (
    EnsembleAnalysis,  # noqa: F401
    EnsembleConfig,  # noqa: F401
    Interval,  # noqa: F401
    SamplingBox,  # noqa: F401
    PathResult,  # noqa: F401
    RangeSummary,  # noqa: F401
)
from .runs import (
    RunConfig,  # noqa: F401
    IntegratorConfig,  # noqa: F401
    OutputConfig,  # noqa: F401
    Experiment,  # noqa: F401
    SimulateExperiment,  # noqa: F401
    PoincareExperiment,  # noqa: F401
    LyapunovExperiment,  # noqa: F401
    KamCheckExperiment,  # noqa: F401
    SampleHistExperiment,  # noqa: F401
    PotentialGridExperiment,  # noqa: F401
)
