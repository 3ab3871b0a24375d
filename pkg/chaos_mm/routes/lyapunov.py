# Standard Imports
import logging
import math
from logging import Logger

# My Imports
from ..dynamics.analysis import chaotic_fraction
from ..dynamics.ensemble import run_ensemble, summarize_range
from ..models import (
    EnsembleAnalysis,
    EnsembleConfig,
    LyapunovExperiment,
    LyapunovSpectrum,
    PathResult,
    RangeSummary,
    RunConfig,
)
from ..store import write_csv
from .router import CommandResult, CommandRouter, RunContext, overall_status

logging.basicConfig(level=logging.INFO)
logger: Logger = logging.getLogger(__name__)

SUMMARY_HEADER: list[str] = [
    "epsilon",
    "n_ok",
    "h_ks_min",
    "h_ks_max",
    "h_ks_mean",
    "lambda_max_min",
    "lambda_max_max",
]


# ------------------Setup-------------------#
router: CommandRouter = CommandRouter()


# ------------------Lyapunov-------------------#
@router.command("lyapunov")
def cmd_lyapunov(config: RunConfig, context: RunContext) -> CommandResult:
    """
    Full spectra for every path at every epsilon (lyapunov.csv) and the per-epsilon
    range of h_KS and lambda_max over the paths that completed (lyapunov_summary.csv).
    """
    experiment = config.experiment
    assert isinstance(experiment, LyapunovExperiment)
    rows: list[tuple] = []
    summary_rows: list[tuple] = []
    details: dict[str, dict] = {}
    n_ok: int = 0
    n_total: int = 0

    for epsilon in experiment.epsilons:
        ensemble: EnsembleConfig = EnsembleConfig(
            params=config.model.with_epsilon(epsilon),
            energy_target=experiment.energy_target,
            energy_tol=experiment.energy_tol,
            n_paths=experiment.n_paths,
            master_seed=experiment.master_seed,
            dt=config.integrator.dt,
            n_steps=config.integrator.n_steps,
            scheme=config.integrator.scheme,
            renorm_every=experiment.renorm_every,
            zero_threshold=experiment.zero_threshold,
            sampling_box=experiment.sampling_box,
        )
        results: list[PathResult] = run_ensemble(
            ensemble, EnsembleAnalysis.LYAPUNOV, context.workers
        )
        spectra: list[LyapunovSpectrum] = []
        for result in results:
            if result.ok:
                spectrum: LyapunovSpectrum = result.payload
                spectra.append(spectrum)
                rows.append((epsilon, result.path_index, *spectrum.exponents, spectrum.h_ks))
        n_ok += len(spectra)
        n_total += len(results)

        if spectra:
            h_ks: RangeSummary = summarize_range([s.h_ks for s in spectra])
            lambda_max: RangeSummary = summarize_range([s.lambda_max for s in spectra])
            summary_rows.append(
                (
                    epsilon,
                    h_ks.count,
                    h_ks.minimum,
                    h_ks.maximum,
                    h_ks.mean,
                    lambda_max.minimum,
                    lambda_max.maximum,
                )
            )
            fraction: float | None = chaotic_fraction(spectra, experiment.zero_threshold)
        else:
            summary_rows.append((epsilon, 0, *([math.nan] * 5)))
            fraction = None
        details[str(epsilon)] = {
            "n_ok": len(spectra),
            "chaotic_fraction": fraction,
            "failures": {r.path_index: r.error for r in results if not r.ok},
        }
        logger.info(f"eps={epsilon}: {len(spectra)}/{len(results)} spectra, chaotic {fraction}")

    files: list[str] = [
        str(
            write_csv(
                context.out_dir / "lyapunov.csv",
                ["epsilon", "path_id", "lambda_1", "lambda_2", "lambda_3", "lambda_4", "h_ks"],
                rows,
            )
        ),
        str(write_csv(context.out_dir / "lyapunov_summary.csv", SUMMARY_HEADER, summary_rows)),
    ]
    return CommandResult(
        status=overall_status(n_ok, n_total), files=files, details={"epsilons": details}
    )
