import math

import numpy as np
import pytest

from chaos_mm.dynamics.analysis import (
    chaotic_fraction,
    closed_curve_residual,
    divergence_rate,
    dominant_frequency,
    histogram,
    ks_entropy,
    lag1_autocorrelation,
    lyapunov_spectrum,
    lyapunov_time,
    poincare_section,
    refine_up_crossing,
    section_crossings,
    subsample,
)
from chaos_mm.dynamics.ensemble import sample_initial_condition
from chaos_mm.dynamics.integrate import integrate
from chaos_mm.exceptions import EmptySeriesError, NoPeakError
from chaos_mm.models import (
    EnsembleConfig,
    LyapunovSpectrum,
    ModelKind,
    ModelParams,
    PhaseState,
    TrajectoryStatus,
    default_static_params,
)


def spectrum_of(exponents: list[float], zero_threshold: float = 1e-3) -> LyapunovSpectrum:
    return LyapunovSpectrum(
        exponents=exponents,
        renorm_interval=10,
        history=np.zeros((0, 4)),
        elapsed_time=1.0,
        h_ks=ks_entropy(exponents, zero_threshold),
        zero_threshold=zero_threshold,
    )


# ------------------Poincare-Sections-------------------#
def test_linear_crossing_refines_to_midpoint() -> None:
    t_cross, values, rates = refine_up_crossing(0.0, 0.2, [-0.1], [0.1], [1.0], [1.0])
    assert t_cross == pytest.approx(0.1, abs=1e-12)
    assert abs(values[0]) <= 1e-8
    assert rates[0] == pytest.approx(1.0)


def test_integrable_section_is_one_up_crossing_per_inventory_period() -> None:
    params = default_static_params()
    ic = PhaseState(q1=4.0, q2=0.5, p1=0.2, p2=0.3)
    points, _ = section_crossings(params, ic, 0, 0.01, 50_000)
    n_periods = 500.0 / (2 * math.pi / math.sqrt(0.1))
    # Downward crossings would double the count
    assert math.floor(n_periods) - 1 <= len(points) <= math.ceil(n_periods)
    for point in points:
        assert point.path_id == 0
        # Uncoupled price oscillator keeps its own energy 0.02 + 0.055
        price_energy = 0.5 * point.p_x**2 + 0.5 * 0.11 * (point.x - 3.0) ** 2
        assert price_energy == pytest.approx(0.075, abs=1e-6)


def test_integrable_section_lies_on_closed_curve() -> None:
    params = default_static_params()
    section = poincare_section(
        params,
        [
            PhaseState(q1=4.0, q2=0.5, p1=0.2, p2=0.3),
            PhaseState(q1=2.5, q2=-0.2, p1=-0.1, p2=0.6),
        ],
        0.01,
        50_000,
        energy_target=None,
    )
    assert section.path_ids == [0, 1]
    for path_id in section.path_ids:
        assert closed_curve_residual(section.path_points(path_id)) <= 1e-3


def test_closed_curve_residual_of_exact_ellipse_and_cloud() -> None:
    theta = np.linspace(0.0, 2 * math.pi, 40, endpoint=False)
    ellipse = np.column_stack([3.0 + 2.0 * np.cos(theta), 0.5 * np.sin(theta)])
    assert closed_curve_residual(ellipse) < 1e-10

    cloud = np.random.default_rng(5).normal(size=(200, 2))
    assert closed_curve_residual(cloud) > 1e-2
    assert closed_curve_residual(ellipse[:4]) == math.inf


# ------------------Lyapunov-Spectrum-------------------#
def test_ks_entropy_examples() -> None:
    assert ks_entropy([0.02, 0.0, 0.0, -0.02], 1e-3) == pytest.approx(0.02)
    assert ks_entropy([0.0, 0.0, 0.0, 0.0], 1e-3) == 0.0
    assert ks_entropy([0.05, 0.01, -0.01, -0.05], 1e-3) == pytest.approx(0.06)
    assert ks_entropy(spectrum_of([0.05, 0.01, -0.01, -0.05])) == pytest.approx(0.06)


def test_ks_entropy_is_monotone_in_the_exponents() -> None:
    base = [0.03, 0.0, -0.001, -0.03]
    raised = [0.03, 0.02, -0.001, -0.03]
    assert ks_entropy(raised) >= ks_entropy(base)


def test_chaotic_fraction_and_lyapunov_time() -> None:
    chaotic = spectrum_of([0.05, 0.0, 0.0, -0.05])
    regular = spectrum_of([0.0002, 0.0, 0.0, -0.0002])
    assert chaotic_fraction([chaotic, regular, regular, regular]) == 0.25
    assert lyapunov_time(chaotic) == pytest.approx(20.0)
    assert lyapunov_time(regular) == math.inf
    with pytest.raises(EmptySeriesError):
        chaotic_fraction([])


def test_integrable_spectrum_is_zero_and_volume_preserving() -> None:
    spectrum = lyapunov_spectrum(
        default_static_params(),
        PhaseState(q1=4.0, q2=1.0, p1=0.2, p2=-0.5),
        dt=0.05,
        n_steps=20_000,
        renorm_every=10,
        zero_threshold=0.01,
    )
    assert not spectrum.truncated
    assert spectrum.elapsed_time == pytest.approx(1000.0)
    assert all(abs(lam) < 0.01 for lam in spectrum.exponents)
    assert spectrum.h_ks == 0.0
    assert abs(sum(spectrum.exponents)) < 1e-6
    assert spectrum.exponents == sorted(spectrum.exponents, reverse=True)
    assert spectrum.history.shape == (2000, 4)


def test_spectrum_truncates_when_orbit_leaves_domain() -> None:
    params = ModelParams(k_x=0.11, x_0=3.0, epsilon=0.05, model_kind=ModelKind.DYNAMIC_RISK)
    spectrum = lyapunov_spectrum(params, PhaseState(q1=3.0, q2=1.0, p1=-5.0, p2=0.0), 0.01, 5000)
    assert spectrum.truncated
    assert spectrum.status == TrajectoryStatus.SINGULARITY_EXIT
    assert spectrum.elapsed_time < 50.0


def test_spectrum_records_blow_up() -> None:
    spectrum = lyapunov_spectrum(
        default_static_params(), PhaseState(q1=3.0, q2=0.0, p1=2e12, p2=0.0), 0.01, 100
    )
    assert spectrum.truncated
    assert spectrum.status == TrajectoryStatus.BLOW_UP
    assert spectrum.elapsed_time == 0.0


@pytest.mark.slow
def test_uncoupled_spectrum_vanishes_over_long_run() -> None:
    spectrum = lyapunov_spectrum(
        default_static_params(), PhaseState(q1=4.0, q2=1.0, p1=0.2, p2=-0.5), 0.05, 200_000
    )
    assert spectrum.elapsed_time == pytest.approx(1e4)
    assert all(abs(lam) <= 1e-3 for lam in spectrum.exponents)
    assert spectrum.h_ks == 0.0


@pytest.mark.slow
def test_strong_coupling_is_chaotic_with_symplectic_pairing() -> None:
    params = default_static_params(epsilon=0.1)
    ic = PhaseState(q1=3.0, q2=2.0, p1=2.0, p2=1.0)
    spectrum = lyapunov_spectrum(params, ic, 0.01, 1_000_000)
    assert spectrum.lambda_max > 1e-3
    assert spectrum.h_ks > 0.0
    first, second = spectrum.pairing_defects
    assert first <= 0.005
    assert second <= 0.005
    assert abs(sum(spectrum.exponents)) <= 0.005


def test_divergence_rate_is_small_for_integrable_motion() -> None:
    rate = divergence_rate(
        default_static_params(), PhaseState(q1=4.0, q2=1.0, p1=0.2, p2=-0.5), dt=0.05, n_steps=4000
    )
    assert abs(rate) < 0.01


@pytest.mark.slow
def test_divergence_rate_tracks_lambda_max_for_chaotic_orbit() -> None:
    params = default_static_params(epsilon=0.1)
    ic = PhaseState(q1=3.0, q2=2.0, p1=2.0, p2=1.0)
    spectrum = lyapunov_spectrum(params, ic, 0.01, 200_000)
    assert spectrum.lambda_max > 1e-3

    # Separation growth from five points spread along the same orbit
    orbit = integrate(params, ic, 0.01, 160_000, record_every=40_000)
    rates = [
        divergence_rate(params, orbit.state(i), offset=1e-10, dt=0.01, n_steps=40_000)
        for i in range(len(orbit))
    ]
    assert float(np.mean(rates)) == pytest.approx(spectrum.lambda_max, rel=0.3)


# ------------------Series-------------------#
def test_dominant_frequency_of_sinusoid() -> None:
    dt = 0.1
    t = dt * np.arange(2**14)
    bin_width = 2 * math.pi / (2**14 * dt)
    series = np.sin(0.3 * t)
    assert dominant_frequency(series, dt) == pytest.approx(0.3, abs=2 * bin_width)
    assert dominant_frequency(7.5 * series, dt) == pytest.approx(dominant_frequency(series, dt))


def test_dominant_frequency_resolves_well_below_one_bin() -> None:
    dt = 0.05
    t = dt * np.arange(100_000)
    bin_width = 2 * math.pi / (100_000 * dt)
    for omega in (0.3316625, 0.3317, 0.33185):
        series = 3.0 + 0.8 * np.sin(omega * t + 0.4) + 0.01 * np.sin(0.63 * t)
        assert dominant_frequency(series, dt) == pytest.approx(omega, abs=1e-4 * bin_width)


def test_dominant_frequency_of_integrable_price() -> None:
    trajectory = integrate(
        default_static_params(), PhaseState(q1=4.0, q2=0.3, p1=0.0, p2=0.0), 0.05, 40_000
    )
    measured = dominant_frequency(trajectory.component("x"), trajectory.sample_dt)
    assert measured == pytest.approx(math.sqrt(0.11), abs=1e-3)


def test_dominant_frequency_rejects_flat_and_short_series() -> None:
    with pytest.raises(NoPeakError):
        dominant_frequency(np.full(256, 3.0), 0.1)
    with pytest.raises(ValueError):
        dominant_frequency(np.arange(10.0), 0.1)


def test_subsample_counting() -> None:
    values = np.arange(1001.0)
    np.testing.assert_array_equal(subsample(values, 1), values)
    assert len(subsample(values, 100)) == 11
    assert subsample(values, 100)[-1] == 1000.0
    with pytest.raises(ValueError):
        subsample(values, 0)


def test_subsample_of_trajectory_component() -> None:
    trajectory = integrate(
        default_static_params(), PhaseState(q1=4.0, q2=0.3, p1=0.0, p2=0.0), 0.01, 1000
    )
    sampled = subsample(trajectory, 100, "x")
    assert len(sampled) == 11
    assert sampled[1] == trajectory.component("x")[100]


def test_histogram_examples() -> None:
    _, counts = histogram(np.full(7, 2.5), 1)
    assert counts.tolist() == [7]

    # Right-open bins except the last: 0.5 opens the second bin, 1 closes it
    edges, counts = histogram([0.0, 0.5, 1.0], 2, (0.0, 1.0))
    assert edges.tolist() == [0.0, 0.5, 1.0]
    assert counts.tolist() == [1, 2]

    grid = (np.arange(1000) + 0.5) / 1000
    _, counts = histogram(grid, 10, (0.0, 1.0))
    assert counts.tolist() == [100] * 10

    with pytest.raises(EmptySeriesError):
        histogram([], 3)


def test_histogram_counts_sum_to_length() -> None:
    series = np.random.default_rng(1).normal(size=537)
    _, counts = histogram(series, 17)
    assert counts.sum() == 537


def test_histogram_range_keeps_outside_samples_in_edge_bins() -> None:
    edges, counts = histogram([-0.5, 0.1, 0.6, 1.7], 2, (0.0, 1.0))
    assert edges.tolist() == [0.0, 0.5, 1.0]
    assert counts.tolist() == [2, 2]

    series = np.random.default_rng(2).normal(size=400)
    _, counts = histogram(series, 8, (-1.0, 1.0))
    assert counts.sum() == 400
    with pytest.raises(ValueError):
        histogram(series, 8, (1.0, 1.0))


def test_lag1_autocorrelation() -> None:
    assert lag1_autocorrelation(np.full(50, 2.0)) == 0.0
    alternating = np.array([1.0, -1.0] * 50)
    assert lag1_autocorrelation(alternating) == pytest.approx(-0.99, abs=1e-12)
    smooth = np.sin(0.01 * np.arange(1000))
    assert lag1_autocorrelation(smooth) > 0.9


@pytest.mark.slow
def test_subsampled_price_differences_decorrelate() -> None:
    params = default_static_params(epsilon=0.1)
    config = EnsembleConfig(params=params, energy_target=10.6, n_paths=1, master_seed=2024)
    trajectory = integrate(params, sample_initial_condition(config, 0), 0.01, 100_000)
    raw = trajectory.component("x")
    sampled = subsample(trajectory, 100)
    assert len(sampled) == 1001
    assert abs(lag1_autocorrelation(np.diff(sampled))) < abs(lag1_autocorrelation(np.diff(raw)))
