# Standard Imports
import logging
import math
from logging import Logger

# My Imports
from ..dynamics.analysis import dominant_frequency
from ..dynamics.integrate import integrate
from ..dynamics.kam import (
    averaged_perturbation,
    canonicality_check,
    from_action_angle,
    predicted_frequencies,
    price_bounded_away_from_zero,
)
from ..exceptions import NoPeakError
from ..models import (
    ActionAngle,
    FrequencyReport,
    KamCheckExperiment,
    ModelParams,
    PhaseState,
    RunConfig,
    Trajectory,
    TrajectoryStatus,
)
from ..store import write_csv
from .router import CommandResult, CommandRouter, RunContext, overall_status

logging.basicConfig(level=logging.INFO)
logger: Logger = logging.getLogger(__name__)

KAM_HEADER: list[str] = [
    "epsilon",
    "i_x",
    "i_v",
    "omega_x",
    "omega_v",
    "omega_x_pred",
    "omega_v_pred",
    "omega_x_measured",
    "resonance_distance",
]


# ------------------Helpers-------------------#
def measure_price_frequency(config: RunConfig, params: ModelParams, ic: PhaseState) -> float:
    """Dominant angular frequency of x(t) along the integrated orbit; NaN if none."""
    trajectory: Trajectory = integrate(
        params,
        ic,
        config.integrator.dt,
        config.integrator.n_steps,
        config.integrator.scheme,
        config.integrator.record_every,
    )
    if trajectory.status != TrajectoryStatus.COMPLETED:
        logger.warning(f"Orbit for eps={params.epsilon} stopped with {trajectory.status}")
        return math.nan
    try:
        return dominant_frequency(trajectory.component("x"), trajectory.sample_dt)
    except NoPeakError as e:
        logger.warning(e.detail)
        return math.nan


def prediction_error_ratios(errors: dict[float, float]) -> dict[str, float]:
    """
    error(2 eps) / error(eps) for every coupling whose double was also run. A first-order
    prediction leaves an O(eps^2) remainder, so these sit near 4 away from resonance.
    """
    ratios: dict[str, float] = {}
    for epsilon, error in errors.items():
        doubled: float | None = errors.get(2.0 * epsilon)
        if epsilon > 0.0 and doubled is not None and error > 0.0:
            ratios[f"{2.0 * epsilon}/{epsilon}"] = doubled / error
    return ratios


# ------------------Setup-------------------#
router: CommandRouter = CommandRouter()


# ------------------KAM-Check-------------------#
@router.command("kam-check")
def cmd_kam_check(config: RunConfig, context: RunContext) -> CommandResult:
    """Predicted against measured price frequency at fixed actions, one row per epsilon."""
    experiment = config.experiment
    assert isinstance(experiment, KamCheckExperiment)
    rows: list[tuple] = []
    averages: dict[str, float] = {}
    errors: dict[float, float] = {}
    measured_ok: int = 0

    for epsilon in experiment.epsilons:
        params: ModelParams = config.model.with_epsilon(epsilon)
        report: FrequencyReport = predicted_frequencies(params, experiment.i_x, experiment.i_v)
        averages[str(epsilon)] = averaged_perturbation(params, experiment.i_x, experiment.i_v)
        aa: ActionAngle = ActionAngle.wrapped(
            i_x=experiment.i_x,
            theta_x=experiment.theta_x,
            i_v=experiment.i_v,
            theta_v=experiment.theta_v,
        )
        measured: float = measure_price_frequency(config, params, from_action_angle(params, aa))
        measured_ok += int(math.isfinite(measured))
        if math.isfinite(measured):
            errors[epsilon] = abs(measured - report.omega_x_pred)
        rows.append(
            (
                epsilon,
                experiment.i_x,
                experiment.i_v,
                report.omega_x,
                report.omega_v,
                report.omega_x_pred,
                report.omega_v_pred,
                measured,
                report.resonance_distance,
            )
        )

    files: list[str] = [str(write_csv(context.out_dir / "kam.csv", KAM_HEADER, rows))]
    details: dict = {
        "averaged_perturbation": averages,
        "omega_x_errors": {str(epsilon): error for epsilon, error in errors.items()},
        "error_ratios": prediction_error_ratios(errors),
        "canonicality_deviation": canonicality_check(config.model),
        "price_bounded_away_from_zero": price_bounded_away_from_zero(
            config.model, experiment.i_x
        ),
    }
    return CommandResult(
        status=overall_status(measured_ok, len(rows)), files=files, details=details
    )
