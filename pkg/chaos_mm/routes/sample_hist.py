# Standard Imports
import logging
from logging import Logger

# Third Party Imports
import numpy as np

# My Imports
from ..dynamics.analysis import histogram, lag1_autocorrelation, subsample
from ..models import RunConfig, SampleHistExperiment, TrajectoryStatus
from ..store import write_csv, write_scatter_svg
from .router import CommandResult, CommandRouter, RunContext, wants_svg
from .simulate import run_trajectory, trajectory_details

logging.basicConfig(level=logging.INFO)
logger: Logger = logging.getLogger(__name__)


# ------------------Helpers-------------------#
def difference_autocorrelation(series: np.ndarray) -> float | None:
    """Lag-1 autocorrelation of first differences; None when the series is too short."""
    if len(series) < 4:
        return None
    return lag1_autocorrelation(np.diff(series))


# ------------------Setup-------------------#
router: CommandRouter = CommandRouter()


# ------------------Sample-Histogram-------------------#
@router.command("sample-hist")
def cmd_sample_hist(config: RunConfig, context: RunContext) -> CommandResult:
    """
    Price sampled every `every_n` recorded steps (sampled.csv: sample_index,t,x) and its
    histogram (hist.csv: bin_left,bin_right,count).
    """
    experiment = config.experiment
    assert isinstance(experiment, SampleHistExperiment)
    ic, trajectory = run_trajectory(config, experiment)
    if len(trajectory) == 0:
        return CommandResult(status="failed", details=trajectory_details(trajectory, ic))

    raw: np.ndarray = trajectory.component("x")
    samples: np.ndarray = subsample(raw, experiment.every_n)
    times: np.ndarray = subsample(trajectory.times, experiment.every_n)
    edges, counts = histogram(samples, experiment.n_bins, experiment.hist_range)
    outside: int = 0
    if experiment.hist_range is not None:
        low, high = experiment.hist_range
        outside = int(np.count_nonzero((samples < low) | (samples > high)))

    files: list[str] = [
        str(
            write_csv(
                context.out_dir / "sampled.csv",
                ["sample_index", "t", "x"],
                zip(range(len(samples)), times, samples),
            )
        ),
        str(
            write_csv(
                context.out_dir / "hist.csv",
                ["bin_left", "bin_right", "count"],
                zip(edges[:-1], edges[1:], counts.tolist()),
            )
        ),
    ]
    if wants_svg(config, context):
        files.append(
            str(
                write_scatter_svg(
                    context.out_dir / "sampled.svg",
                    np.column_stack([times, samples]),
                    "t",
                    "x",
                    f"price every {experiment.every_n} steps",
                )
            )
        )

    details: dict = trajectory_details(trajectory, ic)
    details.update(
        {
            "every_n": experiment.every_n,
            "sampling_interval": experiment.every_n * trajectory.sample_dt,
            "n_sampled": len(samples),
            "n_in_histogram": int(counts.sum()),
            "n_clipped_to_range": outside,
            "raw_diff_lag1_autocorrelation": difference_autocorrelation(raw),
            "sampled_diff_lag1_autocorrelation": difference_autocorrelation(samples),
        }
    )
    status = "ok" if trajectory.status == TrajectoryStatus.COMPLETED else "partial"
    return CommandResult(status=status, files=files, details=details)
