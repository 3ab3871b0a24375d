# Standard Imports
import logging
import math
from collections.abc import Sequence
from logging import Logger

# Third Party Imports
import numpy as np
from scipy.interpolate import CubicHermiteSpline
from scipy.optimize import bisect, brentq

# My Imports
from ..config import RENORM_EVERY, ZERO_THRESHOLD
from ..exceptions import EmptySeriesError, NoPeakError, SingularityError
from ..models import (
    LyapunovSpectrum,
    ModelParams,
    PhaseState,
    PoincareSection,
    Scheme,
    SectionPoint,
    Trajectory,
    TrajectoryStatus,
)
from .hamiltonian import grad_potential, hessian_potential
from .integrate import (
    YOSHIDA_W0,
    YOSHIDA_W1,
    Coords,
    Propagator,
    validate_run,
    domain_exit,
    integrate,
)

logging.basicConfig(level=logging.INFO)
logger: Logger = logging.getLogger(__name__)

CROSSING_TIME_TOL: float = 1e-12
CROSSING_VALUE_TOL: float = 1e-8


# ------------------Poincare-Sections-------------------#
def refine_up_crossing(
    t0: float,
    t1: float,
    values0: Sequence[float],
    values1: Sequence[float],
    derivs0: Sequence[float],
    derivs1: Sequence[float],
    component: int = 0,
) -> tuple[float, np.ndarray, np.ndarray]:
    """
    Locate the zero of `component` between two samples on the cubic Hermite interpolant
    built from values and time derivatives at both ends. Returns the crossing time and
    the interpolated values and rates there.
    """
    spline: CubicHermiteSpline = CubicHermiteSpline(
        [t0, t1], np.vstack([values0, values1]), np.vstack([derivs0, derivs1])
    )

    def surface(t: float) -> float:
        return float(spline(t)[component])

    if values1[component] == 0.0:
        t_cross: float = t1
    elif values0[component] == 0.0:
        t_cross = t0
    else:
        t_cross = bisect(surface, t0, t1, xtol=CROSSING_TIME_TOL)
    return t_cross, np.asarray(spline(t_cross)), np.asarray(spline(t_cross, 1))


def _section_samples(params: ModelParams, z: Coords) -> tuple[list[float], list[float]]:
    """Values (v, x, p_x) and their rates at one integrator sample."""
    q1, q2, p1, p2 = z
    g1, _ = grad_potential(params, q1, q2)
    return [q2, q1, p1], [p2 / params.m_2, p1 / params.m_x, -g1]


def section_crossings(
    params: ModelParams,
    ic: PhaseState,
    path_id: int,
    dt: float,
    n_steps: int,
    scheme: Scheme = Scheme.YOSHIDA4,
) -> tuple[list[SectionPoint], TrajectoryStatus]:
    """Up-crossings of v = 0 along one orbit; a terminated orbit keeps what it found."""
    validate_run(dt, n_steps)
    orbit: Propagator = Propagator(params, ic, dt, scheme)
    points: list[SectionPoint] = []
    previous: Coords = orbit.z
    t_previous: float = orbit.t
    while orbit.step < n_steps and orbit.advance():
        current: Coords = orbit.z
        if previous[1] < 0.0 <= current[1]:
            values0, rates0 = _section_samples(params, previous)
            values1, rates1 = _section_samples(params, current)
            t_cross, values, rates = refine_up_crossing(
                t_previous, orbit.t, values0, values1, rates0, rates1
            )
            if rates[0] > 0.0 and abs(values[0]) <= CROSSING_VALUE_TOL:
                points.append(
                    SectionPoint(
                        path_id=path_id, t_cross=t_cross, x=float(values[1]), p_x=float(values[2])
                    )
                )
        previous = current
        t_previous = orbit.t

    if orbit.status != TrajectoryStatus.COMPLETED:
        logger.warning(
            f"Path {path_id} stopped with {orbit.status} after {len(points)} crossings"
        )
    return points, orbit.status


def poincare_section(
    params: ModelParams,
    ics: Sequence[PhaseState],
    dt: float,
    n_steps: int,
    scheme: Scheme = Scheme.YOSHIDA4,
    energy_target: float | None = None,
) -> PoincareSection:
    """Surface v = 0 with v' > 0, collected for every initial condition in order."""
    points: list[SectionPoint] = []
    for path_id, ic in enumerate(ics):
        path_points, _ = section_crossings(params, ic, path_id, dt, n_steps, scheme)
        points.extend(path_points)
    return PoincareSection(points=points, energy_target=energy_target, params=params)


def closed_curve_residual(points: np.ndarray) -> float:
    """
    Fit a general conic to the (x, p_x) points of one path and return the largest radial
    distance from the fitted ellipse, relative to its semi-major axis. inf when the
    points do not describe an ellipse.
    """
    points = np.asarray(points, dtype=float).reshape(-1, 2)
    if len(points) < 5:
        return math.inf
    centred: np.ndarray = points - points.mean(axis=0)
    x, y = centred[:, 0], centred[:, 1]
    design: np.ndarray = np.column_stack([x * x, x * y, y * y, x, y])
    (a, b, c, d, e), *_ = np.linalg.lstsq(design, np.ones(len(points)), rcond=None)

    quad: np.ndarray = np.array([[a, b / 2.0], [b / 2.0, c]])
    try:
        centre: np.ndarray = np.linalg.solve(2.0 * quad, -np.array([d, e]))
    except np.linalg.LinAlgError:
        return math.inf
    level: float = 1.0 - float(centre @ quad @ centre + d * centre[0] + e * centre[1])
    if level <= 0.0:
        return math.inf
    shape: np.ndarray = quad / level
    eigenvalues: np.ndarray = np.linalg.eigvalsh(shape)
    if np.any(eigenvalues <= 0.0):
        return math.inf
    semi_major: float = 1.0 / math.sqrt(float(eigenvalues.min()))

    offsets: np.ndarray = centred - centre
    radii: np.ndarray = np.linalg.norm(offsets, axis=1)
    directions: np.ndarray = offsets / np.where(radii > 0.0, radii, 1.0)[:, None]
    fitted: np.ndarray = 1.0 / np.sqrt(np.einsum("ni,ij,nj->n", directions, shape, directions))
    return float(np.max(np.abs(radii - fitted)) / semi_major)


# ------------------Lyapunov-Spectrum-------------------#
def _leapfrog_tangent(
    params: ModelParams, z: Coords, frame: np.ndarray, dt: float
) -> tuple[Coords, np.ndarray]:
    """Leapfrog substep for the orbit together with its linearisation acting on `frame`."""
    q1, q2, p1, p2 = z
    half: float = 0.5 * dt
    g1, g2 = grad_potential(params, q1, q2)
    frame[2:] -= half * (hessian_potential(params, q1, q2) @ frame[:2])
    p1 -= half * g1
    p2 -= half * g2
    q1 += dt * p1 / params.m_x
    q2 += dt * p2 / params.m_2
    frame[0] += (dt / params.m_x) * frame[2]
    frame[1] += (dt / params.m_2) * frame[3]
    g1, g2 = grad_potential(params, q1, q2)
    frame[2:] -= half * (hessian_potential(params, q1, q2) @ frame[:2])
    p1 -= half * g1
    p2 -= half * g2
    return (q1, q2, p1, p2), frame


def _yoshida4_tangent(
    params: ModelParams, z: Coords, frame: np.ndarray, dt: float
) -> tuple[Coords, np.ndarray]:
    z, frame = _leapfrog_tangent(params, z, frame, YOSHIDA_W1 * dt)
    z, frame = _leapfrog_tangent(params, z, frame, YOSHIDA_W0 * dt)
    return _leapfrog_tangent(params, z, frame, YOSHIDA_W1 * dt)


def lyapunov_spectrum(
    params: ModelParams,
    ic: PhaseState,
    dt: float,
    n_steps: int,
    renorm_every: int = RENORM_EVERY,
    zero_threshold: float = ZERO_THRESHOLD,
) -> LyapunovSpectrum:
    """
    Benettin-style estimate: the reference orbit (Yoshida4) carries four tangent vectors
    under the variational flow; every `renorm_every` steps the frame is re-orthonormalised
    by QR and the log stretch factors accumulated.
    """
    validate_run(dt, n_steps, renorm_every)
    z: Coords = (ic.q1, ic.q2, ic.p1, ic.p2)
    frame: np.ndarray = np.eye(4)
    log_stretch: np.ndarray = np.zeros(4)
    history: list[np.ndarray] = []
    steps_done: int = 0
    pending: int = 0
    status: TrajectoryStatus = TrajectoryStatus.COMPLETED

    for step in range(1, n_steps + 1):
        try:
            z_new, frame_new = _yoshida4_tangent(params, z, frame.copy(), dt)
        except (SingularityError, ZeroDivisionError):
            status = TrajectoryStatus.SINGULARITY_EXIT
        except ArithmeticError:
            status = TrajectoryStatus.BLOW_UP
        else:
            status = domain_exit(params, z, z_new) or TrajectoryStatus.COMPLETED
        if status != TrajectoryStatus.COMPLETED:
            logger.warning(f"Reference orbit stopped with {status} at step {step}; truncated")
            break
        z, frame = z_new, frame_new
        steps_done = step
        pending += 1
        if pending == renorm_every or step == n_steps:
            q, r = np.linalg.qr(frame)
            log_stretch += np.log(np.abs(np.diag(r)))
            frame = q
            pending = 0
            history.append(log_stretch / (steps_done * dt))

    # Leftover stretch since the last renormalisation on early termination
    if pending and steps_done:
        _, r = np.linalg.qr(frame)
        log_stretch += np.log(np.abs(np.diag(r)))
        history.append(log_stretch / (steps_done * dt))

    elapsed: float = steps_done * dt
    estimate: np.ndarray = log_stretch / elapsed if elapsed > 0 else np.zeros(4)
    exponents: list[float] = sorted((float(lam) for lam in estimate), reverse=True)
    return LyapunovSpectrum(
        exponents=exponents,
        renorm_interval=renorm_every,
        history=np.array(history, dtype=float).reshape(-1, 4),
        elapsed_time=elapsed,
        h_ks=ks_entropy(exponents, zero_threshold),
        zero_threshold=zero_threshold,
        truncated=status != TrajectoryStatus.COMPLETED,
        status=status,
    )


def ks_entropy(
    spectrum: LyapunovSpectrum | Sequence[float], zero_threshold: float = ZERO_THRESHOLD
) -> float:
    """Pesin estimate: the sum of the exponents above `zero_threshold`."""
    exponents: Sequence[float] = (
        spectrum.exponents if isinstance(spectrum, LyapunovSpectrum) else spectrum
    )
    return float(sum(lam for lam in exponents if lam > zero_threshold))


def chaotic_fraction(
    spectra: Sequence[LyapunovSpectrum], zero_threshold: float = ZERO_THRESHOLD
) -> float:
    if not spectra:
        raise EmptySeriesError("no spectra to classify")
    chaotic: int = sum(1 for spectrum in spectra if spectrum.lambda_max > zero_threshold)
    return chaotic / len(spectra)


def divergence_rate(
    params: ModelParams,
    ic: PhaseState,
    offset: float = 1e-8,
    dt: float = 0.01,
    n_steps: int = 100_000,
    saturation: float = 1e-3,
) -> float:
    """
    Log-slope of the separation between the orbit from `ic` and one displaced by `offset`
    along x, fitted while the separation stays below `saturation`.
    """
    shifted: PhaseState = ic.model_copy(update={"q1": ic.q1 + offset})
    first: Trajectory = integrate(params, ic, dt, n_steps)
    second: Trajectory = integrate(params, shifted, dt, n_steps)
    length: int = min(len(first), len(second))
    separation: np.ndarray = np.linalg.norm(first.coords[:length] - second.coords[:length], axis=1)
    growing: np.ndarray = separation < saturation
    window: int = int(np.argmin(growing)) if not np.all(growing) else length
    if window < 2:
        return 0.0
    slope, _ = np.polyfit(first.times[:window], np.log(separation[:window]), 1)
    return float(slope)


# ------------------Series-------------------#
def dominant_frequency(series: Sequence[float] | np.ndarray, dt: float) -> float:
    """
    Angular frequency of the largest non-DC peak of the Hann-windowed spectrum. A parabola
    through the log magnitudes around the peak bin gives the starting estimate, which is
    then refined to the continuous maximum of the windowed Fourier transform.
    """
    values: np.ndarray = np.asarray(series, dtype=float)
    if len(values) < 64:
        raise ValueError(f"dominant_frequency needs at least 64 samples, got {len(values)}")
    if not dt > 0:
        raise ValueError(f"dt must be positive, got {dt}")
    centred: np.ndarray = values - values.mean()
    scale: float = float(np.max(np.abs(values)))
    if scale == 0.0 or float(np.max(np.abs(centred))) <= 1e-12 * scale:
        raise NoPeakError("series is flat; no spectral peak")

    windowed: np.ndarray = centred * np.hanning(len(values))
    magnitude: np.ndarray = np.abs(np.fft.rfft(windowed))
    k: int = int(np.argmax(magnitude[1:])) + 1
    offset: float = 0.0
    if k + 1 < len(magnitude):
        tiny: float = np.finfo(float).tiny
        a, b, c = np.log(np.maximum(magnitude[k - 1 : k + 2], tiny))
        curvature: float = float(a - 2.0 * b + c)
        if curvature != 0.0:
            offset = float(0.5 * (a - c) / curvature)
    bin_width: float = 2.0 * math.pi / (len(values) * dt)
    return refine_peak(windowed, dt, (k + offset) * bin_width, bin_width)


def refine_peak(windowed: np.ndarray, dt: float, coarse: float, bin_width: float) -> float:
    """
    Continuous maximum of |F(omega)| for the windowed series: the root of d|F|^2/domega
    within one bin of the coarse estimate. Falls back to `coarse` when that bin does
    not bracket a maximum.
    """
    times: np.ndarray = (np.arange(len(windowed)) - 0.5 * (len(windowed) - 1)) * dt
    weighted_times: np.ndarray = times * windowed

    def slope(omega: float) -> float:
        phase: np.ndarray = np.exp(-1j * omega * times)
        spectrum: complex = complex(windowed @ phase)
        derivative: complex = complex(-1j * (weighted_times @ phase))
        return (spectrum.conjugate() * derivative).real

    low: float = coarse - bin_width
    high: float = coarse + bin_width
    if low <= 0.0 or not slope(low) > 0.0 > slope(high):
        return coarse
    return float(brentq(slope, low, high, xtol=1e-15))


def subsample(
    traj: Trajectory | Sequence[float] | np.ndarray, every_n: int, component: str = "x"
) -> np.ndarray:
    """Every `every_n`-th element of one component, starting with the first."""
    if every_n < 1:
        raise ValueError(f"every_n must be at least 1, got {every_n}")
    values: np.ndarray = (
        traj.component(component) if isinstance(traj, Trajectory) else np.asarray(traj)
    )
    return values[::every_n].copy()


def histogram(
    series: Sequence[float] | np.ndarray,
    n_bins: int,
    value_range: tuple[float, float] | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """
    Uniform bins, right-open except the last, over `value_range` (default min..max).
    Samples outside an explicit range land in the edge bins, so the counts always sum to
    the series length.
    """
    values: np.ndarray = np.asarray(series, dtype=float)
    if values.size == 0:
        raise EmptySeriesError("cannot histogram an empty series")
    if n_bins < 1:
        raise ValueError(f"n_bins must be at least 1, got {n_bins}")
    if value_range is not None:
        low, high = value_range
        if not high > low:
            raise ValueError(f"value_range must satisfy low < high, got {value_range}")
        values = np.clip(values, low, high)
    counts, edges = np.histogram(values, bins=n_bins, range=value_range)
    return edges, counts


def lag1_autocorrelation(series: Sequence[float] | np.ndarray) -> float:
    values: np.ndarray = np.asarray(series, dtype=float)
    if len(values) < 3:
        raise ValueError("lag-1 autocorrelation needs at least 3 samples")
    centred: np.ndarray = values - values.mean()
    denominator: float = float(centred @ centred)
    if denominator == 0.0:
        return 0.0
    return float(centred[:-1] @ centred[1:]) / denominator


def lyapunov_time(spectrum: LyapunovSpectrum) -> float:
    """1 / lambda_max for a chaotic orbit, infinite otherwise."""
    return spectrum.lyapunov_time
