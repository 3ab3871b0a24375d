# Standard Imports
import itertools
import logging
from logging import Logger

# Third Party Imports
import numpy as np

# My Imports
from ..dynamics.analysis import closed_curve_residual
from ..dynamics.ensemble import merge_sections, run_ensemble
from ..models import (
    EnsembleAnalysis,
    EnsembleConfig,
    PathResult,
    PoincareExperiment,
    RunConfig,
    SectionPoint,
)
from ..store import write_csv, write_scatter_svg
from ..utils import slug
from .router import CommandResult, CommandRouter, RunContext, overall_status, wants_svg

logging.basicConfig(level=logging.INFO)
logger: Logger = logging.getLogger(__name__)

REGULAR_RESIDUAL_TOL: float = 1e-3


# ------------------Helpers-------------------#
def regular_fraction(results: list[PathResult]) -> float | None:
    """Share of paths whose section points lie on one closed curve."""
    residuals: list[float] = []
    for result in results:
        points: list[SectionPoint] = result.payload or []
        residuals.append(closed_curve_residual(np.array([[p.x, p.p_x] for p in points])))
    if not residuals:
        return None
    return sum(1 for r in residuals if r <= REGULAR_RESIDUAL_TOL) / len(residuals)


# ------------------Setup-------------------#
router: CommandRouter = CommandRouter()


# ------------------Poincare-------------------#
@router.command("poincare")
def cmd_poincare(config: RunConfig, context: RunContext) -> CommandResult:
    """
    Section v = 0, v' > 0 in the (x, p_x) plane for every (epsilon, energy) pair.
    One pair writes poincare.csv; a sweep writes poincare_eps{eps}_E{E}.csv per pair.
    """
    experiment = config.experiment
    assert isinstance(experiment, PoincareExperiment)
    epsilons: list[float] = experiment.epsilons or [config.model.epsilon]
    combinations: list[tuple[float, float]] = list(
        itertools.product(epsilons, experiment.energy_targets)
    )
    single: bool = len(combinations) == 1

    files: list[str] = []
    runs: list[dict] = []
    n_ok: int = 0
    n_total: int = 0
    for epsilon, energy_target in combinations:
        ensemble: EnsembleConfig = EnsembleConfig(
            params=config.model.with_epsilon(epsilon),
            energy_target=energy_target,
            energy_tol=experiment.energy_tol,
            n_paths=experiment.n_paths,
            master_seed=experiment.master_seed,
            dt=config.integrator.dt,
            n_steps=config.integrator.n_steps,
            scheme=config.integrator.scheme,
            sampling_box=experiment.sampling_box,
        )
        results: list[PathResult] = run_ensemble(
            ensemble, EnsembleAnalysis.POINCARE, context.workers
        )
        points: list[SectionPoint] = merge_sections(results)
        stem: str = "poincare" if single else f"poincare_eps{slug(epsilon)}_E{slug(energy_target)}"

        csv_path = write_csv(
            context.out_dir / f"{stem}.csv",
            ["path_id", "t_cross", "x", "p_x"],
            ((p.path_id, p.t_cross, p.x, p.p_x) for p in points),
        )
        files.append(str(csv_path))
        if wants_svg(config, context):
            svg_path = write_scatter_svg(
                context.out_dir / f"{stem}.svg",
                np.array([[p.x, p.p_x] for p in points]),
                "x",
                "p_x",
                f"eps={epsilon:g} E={energy_target:g}",
            )
            files.append(str(svg_path))

        ok: int = sum(1 for result in results if result.ok)
        n_ok += ok
        n_total += len(results)
        runs.append(
            {
                "epsilon": epsilon,
                "energy_target": energy_target,
                "file": csv_path.name,
                "n_points": len(points),
                "n_ok": ok,
                "regular_fraction": regular_fraction(results),
                "failures": {r.path_index: r.error for r in results if not r.ok},
                "sampling_box": (
                    experiment.sampling_box.model_dump() if experiment.sampling_box else "default"
                ),
            }
        )

    return CommandResult(status=overall_status(n_ok, n_total), files=files, details={"runs": runs})
