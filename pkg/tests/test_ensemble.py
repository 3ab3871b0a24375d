import math

import numpy as np
import pytest

from chaos_mm.dynamics import ensemble
from chaos_mm.dynamics.analysis import chaotic_fraction, lyapunov_spectrum
from chaos_mm.dynamics.ensemble import (
    candidate_energies,
    default_sampling_box,
    merge_sections,
    path_generator,
    run_ensemble,
    run_path,
    sample_initial_condition,
    summarize_range,
)
from chaos_mm.dynamics.hamiltonian import energy
from chaos_mm.dynamics.kam import resonant_params
from chaos_mm.exceptions import EmptySeriesError, SamplingExhaustedError
from chaos_mm.models import (
    EnsembleAnalysis,
    EnsembleConfig,
    Interval,
    LyapunovSpectrum,
    ModelKind,
    ModelParams,
    PathResult,
    PhaseState,
    SamplingBox,
    TrajectoryStatus,
    default_static_params,
)
from chaos_mm.routes.poincare import regular_fraction


def static_config(**overrides) -> EnsembleConfig:
    fields = {
        "params": default_static_params(epsilon=0.05),
        "energy_target": 1.0,
        "n_paths": 4,
        "master_seed": 42,
        "dt": 0.01,
        "n_steps": 2000,
    }
    return EnsembleConfig(**{**fields, **overrides})


# ------------------Sampling-------------------#
def test_default_box_at_unit_energy() -> None:
    box = default_sampling_box(default_static_params(), 1.0)
    assert (box.q1.low, box.q1.high) == (-3.0, 9.0)
    assert (box.q2.low, box.q2.high) == (-6.0, 6.0)
    assert box.p1.high == pytest.approx(2.0)
    assert box.p2.low == pytest.approx(-2.0)


def test_default_box_widens_risk_position_for_dynamic_models() -> None:
    params = ModelParams(k_x=0.11, x_0=3.0, model_kind=ModelKind.DYNAMIC_RISK)
    box = default_sampling_box(params, 1.0)
    assert box.q2.high == pytest.approx(54.0)


def test_sampled_state_lies_in_energy_window() -> None:
    config = static_config()
    for index in range(10):
        ic = sample_initial_condition(config, index)
        assert abs(energy(config.params, ic) - 1.0) <= config.energy_tol
        assert ic.t == 0.0


def test_sampling_is_deterministic_per_path() -> None:
    config = static_config()
    assert sample_initial_condition(config, 3) == sample_initial_condition(config, 3)
    assert sample_initial_condition(config, 3) != sample_initial_condition(config, 4)
    reseeded = static_config(master_seed=43)
    assert sample_initial_condition(config, 3) != sample_initial_condition(reseeded, 3)


def test_path_streams_are_independent_of_draw_order() -> None:
    first = path_generator(7, 2).uniform(size=5)
    path_generator(7, 1).uniform(size=100)
    np.testing.assert_array_equal(path_generator(7, 2).uniform(size=5), first)


def test_custom_box_bounds_candidates() -> None:
    box = SamplingBox(
        q1=Interval(low=2.0, high=4.0),
        q2=Interval(low=-1.0, high=1.0),
        p1=Interval(low=-1.0, high=1.0),
        p2=Interval(low=-1.0, high=1.0),
    )
    config = static_config(energy_target=0.2, energy_tol=0.05, sampling_box=box)
    ic = sample_initial_condition(config, 0)
    assert 2.0 <= ic.q1 <= 4.0
    assert -1.0 <= ic.q2 <= 1.0


def test_box_must_contain_equilibrium() -> None:
    box = SamplingBox(
        q1=Interval(low=4.0, high=6.0),
        q2=Interval(low=-1.0, high=1.0),
        p1=Interval(low=-1.0, high=1.0),
        p2=Interval(low=-1.0, high=1.0),
    )
    with pytest.raises(ValueError):
        static_config(sampling_box=box)


def test_unreachable_energy_exhausts_sampling() -> None:
    with pytest.raises(SamplingExhaustedError):
        sample_initial_condition(static_config(energy_target=-1.0), 0)


def test_candidate_energies_mark_singular_prices() -> None:
    params = ModelParams(k_x=0.11, x_0=3.0, epsilon=0.05, model_kind=ModelKind.DYNAMIC_RISK)
    candidates = np.array([[0.0, 1.0, 0.0, 0.0], [3.0, 0.0, 0.0, 0.0]])
    energies = candidate_energies(params, candidates)
    assert math.isnan(energies[0])
    assert energies[1] == pytest.approx(0.0)


# ------------------Paths-------------------#
def test_exhausted_path_is_recorded_not_raised() -> None:
    result = run_path(static_config(energy_target=-1.0), EnsembleAnalysis.POINCARE, 0)
    assert not result.ok
    assert result.initial_state is None
    assert "draws" in result.error


def test_poincare_path_carries_its_crossings() -> None:
    result = run_path(static_config(n_steps=5000), EnsembleAnalysis.POINCARE, 2)
    assert result.ok
    assert result.payload
    assert all(point.path_id == 2 for point in result.payload)


def test_lyapunov_path_returns_spectrum() -> None:
    result = run_path(static_config(n_steps=1000), EnsembleAnalysis.LYAPUNOV, 0)
    assert result.ok
    assert len(result.payload.exponents) == 4


def test_ensemble_is_ordered_by_path_index() -> None:
    results = run_ensemble(static_config(), EnsembleAnalysis.TRAJECTORY)
    assert [result.path_index for result in results] == [0, 1, 2, 3]


def test_single_path_ensemble_is_run_path() -> None:
    config = static_config(n_paths=1)
    [from_ensemble] = run_ensemble(config, EnsembleAnalysis.POINCARE)
    direct = run_path(config, EnsembleAnalysis.POINCARE, 0)
    assert from_ensemble.initial_state == direct.initial_state
    assert from_ensemble.payload == direct.payload


def test_worker_count_does_not_change_results() -> None:
    config = static_config(n_steps=3000)
    serial = run_ensemble(config, EnsembleAnalysis.POINCARE, workers=1)
    parallel = run_ensemble(config, EnsembleAnalysis.POINCARE, workers=2)
    assert [r.initial_state for r in serial] == [r.initial_state for r in parallel]
    assert merge_sections(serial) == merge_sections(parallel)


def test_merge_sections_keeps_path_order() -> None:
    results = run_ensemble(static_config(n_steps=5000), EnsembleAnalysis.POINCARE)
    merged = merge_sections(results)
    path_ids = [point.path_id for point in merged]
    assert path_ids == sorted(path_ids)
    assert merge_sections([PathResult(path_index=0, ok=False, error="x")]) == []


# ------------------Aggregation-------------------#
def test_summarize_range() -> None:
    summary = summarize_range([0.02, 0.05, 0.03])
    assert summary.count == 3
    assert summary.minimum == 0.02
    assert summary.maximum == 0.05
    assert summary.mean == pytest.approx(0.1 / 3)
    assert summary.spread == pytest.approx(0.03)

    constant = summarize_range([0.1] * 7)
    assert constant.minimum <= constant.mean <= constant.maximum

    with pytest.raises(EmptySeriesError):
        summarize_range([])


def test_lyapunov_path_reports_actual_exit_cause(monkeypatch) -> None:
    blown_up = lyapunov_spectrum(
        default_static_params(), PhaseState(q1=3.0, q2=0.0, p1=2e12, p2=0.0), 0.01, 100
    )
    assert blown_up.status == TrajectoryStatus.BLOW_UP
    monkeypatch.setattr(ensemble, "lyapunov_spectrum", lambda *args: blown_up)
    result = run_path(static_config(), EnsembleAnalysis.LYAPUNOV, 0)
    assert not result.ok
    assert result.error == "path terminated with blow_up"

    singular = ModelParams(k_x=0.11, x_0=3.0, epsilon=0.05, model_kind=ModelKind.DYNAMIC_RISK)
    spectrum = lyapunov_spectrum(singular, PhaseState(q1=3.0, q2=1.0, p1=-5.0, p2=0.0), 0.01, 5000)
    assert spectrum.status == TrajectoryStatus.SINGULARITY_EXIT


# ------------------Regimes-------------------#
def ensemble_spectra(config: EnsembleConfig) -> list[LyapunovSpectrum]:
    results = run_ensemble(config, EnsembleAnalysis.LYAPUNOV, workers=4)
    assert all(result.ok for result in results)
    return [result.payload for result in results]


@pytest.mark.slow
def test_weak_coupling_sections_are_regular() -> None:
    config = static_config(
        params=default_static_params(epsilon=0.0001), n_paths=100, n_steps=100_000
    )
    results = run_ensemble(config, EnsembleAnalysis.POINCARE, workers=4)
    assert regular_fraction(results) >= 0.95


@pytest.mark.slow
def test_strong_coupling_paths_are_chaotic() -> None:
    config = static_config(
        params=default_static_params(epsilon=0.1), n_paths=100, n_steps=100_000
    )
    assert chaotic_fraction(ensemble_spectra(config)) >= 0.8


@pytest.mark.slow
def test_ks_entropy_grows_with_coupling() -> None:
    mean_h_ks: dict[float, float] = {}
    for epsilon in (0.001, 0.1):
        config = static_config(
            params=default_static_params(epsilon=epsilon),
            energy_target=5.0,
            n_paths=5,
            n_steps=100_000,
        )
        spectra = ensemble_spectra(config)
        summary = summarize_range([spectrum.h_ks for spectrum in spectra])
        assert summary.minimum >= 0.0
        mean_h_ks[epsilon] = summary.mean
    assert mean_h_ks[0.1] > mean_h_ks[0.001] >= 0.0


@pytest.mark.slow
def test_resonant_tuning_is_at_least_as_chaotic() -> None:
    detuned = default_static_params(epsilon=0.01)
    fractions: list[float] = []
    for params in (detuned, resonant_params(detuned)):
        config = static_config(params=params, n_paths=10, n_steps=100_000, zero_threshold=0.01)
        fractions.append(chaotic_fraction(ensemble_spectra(config), zero_threshold=0.01))
    detuned_fraction, resonant_fraction = fractions
    assert resonant_fraction >= detuned_fraction
