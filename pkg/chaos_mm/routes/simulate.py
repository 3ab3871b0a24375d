# Standard Imports
import logging
from logging import Logger

# Third Party Imports
import numpy as np

# My Imports
from ..dynamics.ensemble import sample_initial_condition
from ..dynamics.integrate import integrate
from ..models import (
    EnsembleConfig,
    PhaseState,
    RunConfig,
    SimulateExperiment,
    SampleHistExperiment,
    Trajectory,
    TrajectoryStatus,
)
from ..store import write_csv, write_scatter_svg
from .router import CommandResult, CommandRouter, RunContext, wants_svg

logging.basicConfig(level=logging.INFO)
logger: Logger = logging.getLogger(__name__)


# ------------------Helpers-------------------#
def resolve_start(
    config: RunConfig, experiment: SimulateExperiment | SampleHistExperiment
) -> PhaseState:
    """The explicit initial state, or the sampler's pick for (master_seed, path_index)."""
    if experiment.initial_state is not None:
        return experiment.initial_state
    ensemble: EnsembleConfig = EnsembleConfig(
        params=config.model,
        energy_target=experiment.energy_target,
        energy_tol=experiment.energy_tol,
        n_paths=experiment.path_index + 1,
        master_seed=experiment.master_seed,
        dt=config.integrator.dt,
        n_steps=config.integrator.n_steps,
        scheme=config.integrator.scheme,
        sampling_box=experiment.sampling_box,
    )
    ic: PhaseState = sample_initial_condition(ensemble, experiment.path_index)
    logger.info(f"Sampled initial state {ic.as_array().tolist()} at E={experiment.energy_target}")
    return ic


def trajectory_details(trajectory: Trajectory, ic: PhaseState) -> dict:
    return {
        "initial_state": ic.model_dump(),
        "trajectory_status": str(trajectory.status),
        "terminated_at": trajectory.terminated_at,
        "n_samples": len(trajectory),
        "max_energy_drift": trajectory.max_energy_drift(),
    }


def run_trajectory(
    config: RunConfig, experiment: SimulateExperiment | SampleHistExperiment
) -> tuple[PhaseState, Trajectory]:
    ic: PhaseState = resolve_start(config, experiment)
    trajectory: Trajectory = integrate(
        config.model,
        ic,
        config.integrator.dt,
        config.integrator.n_steps,
        config.integrator.scheme,
        config.integrator.record_every,
    )
    return ic, trajectory


# ------------------Setup-------------------#
router: CommandRouter = CommandRouter()


# ------------------Simulate-------------------#
@router.command("simulate")
def cmd_simulate(config: RunConfig, context: RunContext) -> CommandResult:
    """trajectory.csv: step,t,x,v,p_x,p_v,energy; v is u/x for the risk-position models."""
    experiment = config.experiment
    assert isinstance(experiment, SimulateExperiment)
    ic, trajectory = run_trajectory(config, experiment)

    steps: np.ndarray = np.arange(len(trajectory)) * trajectory.record_every
    rows = zip(
        steps.tolist(),
        trajectory.times,
        trajectory.component("x"),
        trajectory.component("v"),
        trajectory.component("p_x"),
        trajectory.component("p2"),
        trajectory.energies,
    )
    files: list[str] = [
        str(
            write_csv(
                context.out_dir / "trajectory.csv",
                ["step", "t", "x", "v", "p_x", "p_v", "energy"],
                rows,
            )
        )
    ]
    if wants_svg(config, context):
        points: np.ndarray = np.column_stack([trajectory.times, trajectory.component("x")])
        files.append(
            str(write_scatter_svg(context.out_dir / "trajectory.svg", points, "t", "x", "price"))
        )

    status = "ok" if trajectory.status == TrajectoryStatus.COMPLETED else "partial"
    if len(trajectory) == 0:
        status = "failed"
    return CommandResult(status=status, files=files, details=trajectory_details(trajectory, ic))
