"""
Energy-targeted initial conditions and ensembles of independent paths.

Each path owns a Philox stream keyed by (master_seed, path_index); candidates are drawn
from it in fixed-size batches and the first one inside the energy window wins. The
stream position is the draw index, so a path's initial state never depends on which
worker runs it or on how many workers there are.
"""

# Standard Imports
import logging
import math
from collections.abc import Sequence
from logging import Logger

# Third Party Imports
import numpy as np
from joblib import Parallel, delayed

# My Imports
from ..config import MAX_SAMPLING_DRAWS
from ..exceptions import ChaosMMError, EmptySeriesError, SamplingExhaustedError
from ..models import (
    EnsembleAnalysis,
    EnsembleConfig,
    Interval,
    ModelParams,
    PathResult,
    PhaseState,
    RangeSummary,
    SamplingBox,
    SectionPoint,
    TrajectoryStatus,
)
from .analysis import lyapunov_spectrum, section_crossings
from .hamiltonian import kinetic_energy, potential_xv
from .integrate import integrate

logging.basicConfig(level=logging.INFO)
logger: Logger = logging.getLogger(__name__)

SAMPLING_BATCH: int = 4096


# ------------------Sampling-------------------#
def default_sampling_box(params: ModelParams, energy_target: float) -> SamplingBox:
    """x_0 +/- 6 and v in [-6, 6]; momenta wide enough to carry the whole target energy."""
    reach_x: float = math.sqrt(2.0 * params.m_x * max(energy_target + 1.0, 1.0))
    reach_2: float = math.sqrt(2.0 * params.m_2 * max(energy_target + 1.0, 1.0))
    if params.reconstructs_inventory:
        # Second coordinate is the risk position u = x v
        q2_reach: float = 6.0 * (abs(params.x_0) + 6.0)
    else:
        q2_reach = 6.0
    return SamplingBox(
        q1=Interval(low=params.x_0 - 6.0, high=params.x_0 + 6.0),
        q2=Interval(low=-q2_reach, high=q2_reach),
        p1=Interval(low=-reach_x, high=reach_x),
        p2=Interval(low=-reach_2, high=reach_2),
    )


def path_generator(master_seed: int, path_index: int) -> np.random.Generator:
    """Counter-based stream for one path; spawn_key separates the paths of one seed."""
    sequence: np.random.SeedSequence = np.random.SeedSequence(
        master_seed, spawn_key=(path_index,)
    )
    return np.random.Generator(np.random.Philox(sequence))


def candidate_energies(params: ModelParams, candidates: np.ndarray) -> np.ndarray:
    """Energies of an (n, 4) block of canonical states; NaN where v = u/x is undefined."""
    q1, q2, p1, p2 = candidates.T
    if params.reconstructs_inventory:
        valid: np.ndarray = np.abs(q1) >= params.singularity_radius
        v: np.ndarray = np.divide(q2, q1, out=np.zeros_like(q2), where=valid)
    else:
        valid = np.ones(len(q1), dtype=bool)
        v = q2
    energies: np.ndarray = np.asarray(kinetic_energy(params, p1, p2) + potential_xv(params, q1, v))
    return np.where(valid, energies, np.nan)


def sample_initial_condition(config: EnsembleConfig, path_index: int) -> PhaseState:
    """
    Rejection-sample a state with |H - energy_target| <= energy_tol, uniformly from the
    sampling box. Raises SamplingExhaustedError after MAX_SAMPLING_DRAWS candidates.
    """
    box: SamplingBox = config.sampling_box or default_sampling_box(
        config.params, config.energy_target
    )
    lows, highs = box.bounds()
    rng: np.random.Generator = path_generator(config.master_seed, path_index)
    draws: int = 0
    while draws < MAX_SAMPLING_DRAWS:
        batch: int = min(SAMPLING_BATCH, MAX_SAMPLING_DRAWS - draws)
        candidates: np.ndarray = rng.uniform(lows, highs, size=(batch, 4))
        energies: np.ndarray = candidate_energies(config.params, candidates)
        hits: np.ndarray = np.flatnonzero(
            np.abs(energies - config.energy_target) <= config.energy_tol
        )
        if hits.size:
            q1, q2, p1, p2 = (float(c) for c in candidates[hits[0]])
            return PhaseState(q1=q1, q2=q2, p1=p1, p2=p2)
        draws += batch

    raise SamplingExhaustedError(
        f"no state within {config.energy_tol} of energy {config.energy_target} "
        f"after {MAX_SAMPLING_DRAWS} draws for path {path_index}"
    )


# ------------------Paths-------------------#
def run_path(config: EnsembleConfig, analysis: EnsembleAnalysis, path_index: int) -> PathResult:
    """Sample one initial condition and run `analysis` on it; failures are recorded."""
    try:
        ic: PhaseState = sample_initial_condition(config, path_index)
    except SamplingExhaustedError as e:
        logger.warning(e.detail)
        return PathResult(path_index=path_index, ok=False, error=e.detail)

    try:
        match EnsembleAnalysis(analysis):
            case EnsembleAnalysis.POINCARE:
                points, status = section_crossings(
                    config.params, ic, path_index, config.dt, config.n_steps, config.scheme
                )
                payload: object = points
            case EnsembleAnalysis.LYAPUNOV:
                spectrum = lyapunov_spectrum(
                    config.params,
                    ic,
                    config.dt,
                    config.n_steps,
                    config.renorm_every,
                    config.zero_threshold,
                )
                status = spectrum.status
                payload = spectrum
            case EnsembleAnalysis.TRAJECTORY:
                trajectory = integrate(
                    config.params,
                    ic,
                    config.dt,
                    config.n_steps,
                    config.scheme,
                    config.record_every,
                )
                status = trajectory.status
                payload = trajectory
    except ChaosMMError as e:
        logger.warning(f"Path {path_index} failed: {e.detail}")
        return PathResult(path_index=path_index, initial_state=ic, ok=False, error=e.detail)

    if status != TrajectoryStatus.COMPLETED:
        return PathResult(
            path_index=path_index,
            initial_state=ic,
            ok=False,
            error=f"path terminated with {status}",
            payload=payload,
        )
    return PathResult(path_index=path_index, initial_state=ic, payload=payload)


def run_ensemble(
    config: EnsembleConfig, analysis: EnsembleAnalysis, workers: int = 1
) -> list[PathResult]:
    """Run every path index 0..n_paths-1; the result list is ordered by path index."""
    logger.info(
        f"Running {config.n_paths} {analysis} paths at E={config.energy_target} "
        f"eps={config.params.epsilon} with {workers} worker(s)"
    )
    results: list[PathResult] = Parallel(n_jobs=max(1, workers))(
        delayed(run_path)(config, analysis, index) for index in range(config.n_paths)
    )
    results.sort(key=lambda result: result.path_index)
    failed: int = sum(1 for result in results if not result.ok)
    if failed:
        logger.warning(f"{failed} of {config.n_paths} paths failed or terminated early")
    return results


# ------------------Aggregation-------------------#
def merge_sections(results: Sequence[PathResult]) -> list[SectionPoint]:
    """All section points in path order, including those found before a path terminated."""
    points: list[SectionPoint] = []
    for result in results:
        if result.payload:
            points.extend(result.payload)
    return points


def summarize_range(values: Sequence[float]) -> RangeSummary:
    """min / max / mean over paths, the range shown as error bars."""
    if len(values) == 0:
        raise EmptySeriesError("no values to summarize")
    array: np.ndarray = np.asarray(values, dtype=float)
    minimum: float = float(array.min())
    maximum: float = float(array.max())
    # Rounding in the mean must not step outside [min, max]
    mean: float = min(max(float(array.mean()), minimum), maximum)
    return RangeSummary(count=len(array), minimum=minimum, maximum=maximum, mean=mean)
