"""Scenario runner: time series, zero detection, domain statistics, scaling fits.

Builds uniform time grids, evaluates the dephasing factor and the closed-form
observables over them, and post-processes the series: coherence-zero
detection (refined on the analytic factor, not the sampled series), maximal
concurrence-vanishing domains, recovery-peak counts, and the exponential fit
of the maximum original concurrence against ensemble size.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .channels import Channel, OatParameters, oat_reduced_state
from .ising_bath import (
    IsingRing,
    LeeYangZeroSet,
    PartitionPolynomial,
    _factor_values,
    lee_yang_zeros,
    partition_coefficients,
    zero_times,
)


@dataclass(frozen=True)
class Scenario:
    """Complete description of one simulation run."""

    ring: IsingRing
    oat: OatParameters
    channel: Channel
    t_max: float
    steps: int
    eta: float = 0.01
    outputs: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "channel", Channel(self.channel))
        if not (np.isfinite(self.t_max) and self.t_max > 0.0):
            raise ValueError(f"t_max must be positive, got {self.t_max!r}")
        if not isinstance(self.steps, (int, np.integer)) or self.steps < 2:
            raise ValueError(f"steps must be an integer >= 2, got {self.steps!r}")
        if not (np.isfinite(self.eta) and self.eta > 0.0):
            raise ValueError(f"eta must be positive, got {self.eta!r}")
        if self.ring.inverse_temperature <= 0.0:
            raise ValueError(
                "scenario requires inverse_temperature > 0: the probe field "
                "argument scales as 1/beta"
            )


@dataclass(frozen=True)
class ObservableSeries:
    """Sampled observables over a time grid, with provenance for refinement.

    The six arrays share one length.  The trailing metadata (probe, eta,
    channel, polynomial) records what generated the series so that zero
    detection can refine candidates on the analytic factor; hand-built series
    may leave them None, which restricts post-processing to grid-only checks.
    """

    times: np.ndarray
    a_factor: np.ndarray
    coherence: np.ndarray
    concurrence_rescaled: np.ndarray
    xi2: np.ndarray
    xi2_prime: np.ndarray
    probe: OatParameters | None = None
    eta: float | None = None
    channel: Channel | None = None
    polynomial: PartitionPolynomial | None = None

    def __post_init__(self) -> None:
        arrays = {}
        for name in (
            "times",
            "a_factor",
            "coherence",
            "concurrence_rescaled",
            "xi2",
            "xi2_prime",
        ):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.ndim != 1:
                raise ValueError(f"{name} must be 1-D, got shape {arr.shape}")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"{name} must be finite")
            arrays[name] = arr
        length = arrays["times"].size
        for name, arr in arrays.items():
            if arr.size != length:
                raise ValueError(f"{name} length {arr.size} != times length {length}")
        if length > 1 and np.any(np.diff(arrays["times"]) <= 0.0):
            raise ValueError("times must be strictly increasing")
        for name, arr in arrays.items():
            arr.flags.writeable = False
            object.__setattr__(self, name, arr)
        if self.channel is not None:
            object.__setattr__(self, "channel", Channel(self.channel))


@dataclass(frozen=True)
class VanishingDomain:
    """Maximal interval where the rescaled concurrence stays at (or below) epsilon.

    ``clipped`` marks domains touching the grid boundary, whose true extent
    (and therefore center) is unknown; callers exclude them from center
    statistics.
    """

    start: float
    center: float
    end: float
    clipped: bool

    def __post_init__(self) -> None:
        if not (self.start <= self.center <= self.end):
            raise ValueError("domain must satisfy start <= center <= end")


@dataclass(frozen=True)
class FitResult:
    """Least-squares line through ln C_max against (N - 2)."""

    alpha: float
    intercept: float
    residual: float
    n_values: np.ndarray
    log_cmax: np.ndarray

    def __post_init__(self) -> None:
        for name in ("alpha", "intercept", "residual"):
            if not np.isfinite(getattr(self, name)):
                raise ValueError(f"{name} must be finite")
        if self.residual < 0.0:
            raise ValueError(f"residual must be >= 0, got {self.residual}")


def _angle_multiplier(channel: Channel) -> float:
    # channel I: x = 2*eta*t/beta; channel II: x = 4*eta*t/beta
    return 2.0 if Channel(channel) is Channel.I else 4.0


def coherence_period(eta: float, channel: Channel) -> float:
    """Period of the sampled coherence: pi/(2 eta) for channel I, half for II."""
    if not (np.isfinite(eta) and eta > 0.0):
        raise ValueError(f"eta must be positive, got {eta!r}")
    return np.pi / (2.0 * eta) if Channel(channel) is Channel.I else np.pi / (4.0 * eta)


def lee_yang_times(zeros: LeeYangZeroSet, eta: float, channel: Channel) -> np.ndarray:
    """Coherence-collapse times predicted by the zero phases for a channel.

    Channel I: t_n = phi_n / (4 eta); channel II accumulates twist twice as
    fast, t_n = phi_n / (8 eta).
    """
    base = zero_times(zeros, eta)
    return base if Channel(channel) is Channel.I else 0.5 * base


def series_from_polynomial(
    poly: PartitionPolynomial,
    probe: OatParameters,
    eta: float,
    channel: Channel,
    times: np.ndarray,
) -> ObservableSeries:
    """Evaluate the closed-form observable pipeline over a time grid.

    Vectorized over the grid: one dephasing-factor evaluation per point, then
    the X-state spin-flip singular values, coherence, rescaled concurrence,
    and both squeezing parameters from the initial-state entries.
    """
    channel = Channel(channel)
    if not (np.isfinite(eta) and eta > 0.0):
        raise ValueError(f"eta must be positive, got {eta!r}")
    times = np.asarray(times, dtype=float)

    state = oat_reduced_state(probe)
    n = probe.n_probes
    mod_u0 = abs(state.u)
    mod_y0 = abs(state.y)
    root_vv = np.sqrt(state.v_plus * state.v_minus)

    angles = _angle_multiplier(channel) * eta * times
    a_complex = _factor_values(poly.coefficients, angles)
    if np.max(np.abs(a_complex.imag), initial=0.0) > 1e-9:
        raise RuntimeError("dephasing factor acquired a non-real component")
    a = a_complex.real

    if channel is Channel.I:
        damp_u = a * a * mod_u0
        damp_y = a * a * mod_y0
        coh = 2.0 * a * a * (mod_u0 + mod_y0)
        xi2 = 1.0 + 2.0 * (n - 1) * a * a * (state.y - mod_u0)
    else:
        damp_u = np.abs(a) * mod_u0
        damp_y = np.full_like(a, mod_y0)
        coh = 2.0 * (np.abs(a) * mod_u0 + mod_y0)
        xi2 = 1.0 + 2.0 * (n - 1) * (state.y - np.abs(a) * mod_u0)

    lam1 = root_vv + damp_u
    lam2 = np.abs(root_vv - damp_u)
    lam3 = state.w + damp_y
    lam4 = np.abs(state.w - damp_y)
    total = lam1 + lam2 + lam3 + lam4
    conc = np.maximum(0.0, 2.0 * np.maximum(lam1, lam3) - total)
    rescaled = (n - 1) * conc

    return ObservableSeries(
        times=times,
        a_factor=a,
        coherence=coh,
        concurrence_rescaled=rescaled,
        xi2=xi2,
        xi2_prime=1.0 - rescaled,
        probe=probe,
        eta=eta,
        channel=channel,
        polynomial=poly,
    )


def run_scenario(s: Scenario) -> ObservableSeries:
    """Run one scenario: closed-form coefficients, uniform grid, full pipeline."""
    times = np.linspace(0.0, s.t_max, s.steps)
    try:
        poly = partition_coefficients(s.ring)
        return series_from_polynomial(poly, s.oat, s.eta, s.channel, times)
    except (ValueError, RuntimeError, ArithmeticError) as exc:
        context = (
            f"scenario(n_spins={s.ring.n_spins}, beta={s.ring.inverse_temperature}, "
            f"coupling={s.ring.coupling}, n_probes={s.oat.n_probes}, "
            f"channel={s.channel.value})"
        )
        raise type(exc)(f"{context}: {exc}") from exc


def default_steps(
    zeros: LeeYangZeroSet, eta: float, t_max: float, channel: Channel
) -> int:
    """Grid size placing at least 40 samples between adjacent collapse times."""
    tz = lee_yang_times(zeros, eta, channel)
    period = coherence_period(eta, channel)
    if tz.size > 1:
        gaps = np.diff(tz)
        wrap = tz[0] + period - tz[-1]
        gap = min(gaps.min(), wrap) if wrap > 0 else gaps.min()
    else:
        gap = period
    steps = int(np.ceil(40.0 * t_max / gap)) + 1
    return max(steps, 2)


def _analytic_factor(series: ObservableSeries):
    """Scalar callable t -> A(t) rebuilt from the series provenance."""
    if series.polynomial is None or series.eta is None or series.channel is None:
        raise ValueError(
            "series carries no provenance metadata; zero refinement needs the "
            "generating polynomial, eta, and channel"
        )
    coeffs = series.polynomial.coefficients
    mult = _angle_multiplier(series.channel)
    eta = series.eta

    def a_of_t(t: float) -> float:
        return float(_factor_values(coeffs, np.array([mult * eta * t]))[0].real)

    return a_of_t


def _coherence_at_factor(series: ObservableSeries, a: float) -> float:
    state = oat_reduced_state(series.probe)
    if series.channel is Channel.I:
        return 2.0 * a * a * (abs(state.u) + abs(state.y))
    return 2.0 * (abs(a) * abs(state.u) + abs(state.y))


def detect_coherence_zeros(series: ObservableSeries, epsilon: float = 1e-6) -> np.ndarray:
    """Times where the probe coherence collapses to zero, refined analytically.

    Local minima of the sampled coherence are candidate collapse points; each
    is refined on the analytic factor (sign-change bisection when the factor
    crosses zero, bounded minimization of |A| for grazing minima) and kept if
    the refined coherence falls below epsilon times the series maximum.
    """
    if not (np.isfinite(epsilon) and epsilon > 0.0):
        raise ValueError(f"epsilon must be positive, got {epsilon!r}")
    coh = series.coherence
    t = series.times
    if t.size < 3:
        return np.array([])
    peak = coh.max()
    if peak <= 0.0:
        return np.array([])

    interior = np.arange(1, t.size - 1)
    is_min = (coh[interior] < coh[interior - 1]) & (coh[interior] <= coh[interior + 1])
    candidates = interior[is_min]
    if candidates.size == 0:
        return np.array([])

    a_of_t = _analytic_factor(series)
    if series.probe is None:
        raise ValueError("series carries no probe metadata")
    zeros: list[float] = []
    for i in candidates:
        lo, hi = t[i - 1], t[i + 1]
        a_lo, a_hi = a_of_t(lo), a_of_t(hi)
        if a_lo == 0.0:
            refined = lo
        elif a_hi == 0.0:
            refined = hi
        elif a_lo * a_hi < 0.0:
            refined = brentq(a_of_t, lo, hi, xtol=1e-12, rtol=8.9e-16)
        else:
            result = minimize_scalar(
                lambda tv: abs(a_of_t(tv)),
                bounds=(lo, hi),
                method="bounded",
                options={"xatol": 1e-12 * max(1.0, t[-1])},
            )
            refined = float(result.x)
        if _coherence_at_factor(series, a_of_t(refined)) < epsilon * peak:
            zeros.append(refined)

    if not zeros:
        return np.array([])
    zeros = np.sort(np.asarray(zeros))
    # adjacent candidates can refine into the same zero; merge sub-grid duplicates
    spacing = np.min(np.diff(t))
    keep = np.concatenate(([True], np.diff(zeros) > 0.25 * spacing))
    return zeros[keep]


def vanishing_domains(
    series: ObservableSeries, epsilon: float = 1e-12
) -> list[VanishingDomain]:
    """Maximal grid intervals where the rescaled concurrence is <= epsilon.

    Domains touching the first or last grid point are flagged clipped; their
    true extent is unknown, so center statistics should skip them.
    """
    if not (np.isfinite(epsilon) and epsilon >= 0.0):
        raise ValueError(f"epsilon must be >= 0, got {epsilon!r}")
    below = series.concurrence_rescaled <= epsilon
    if not below.any():
        return []
    t = series.times
    edges = np.diff(below.astype(int))
    starts = list(np.nonzero(edges == 1)[0] + 1)
    ends = list(np.nonzero(edges == -1)[0])
    if below[0]:
        starts.insert(0, 0)
    if below[-1]:
        ends.append(below.size - 1)
    domains = []
    for i0, i1 in zip(starts, ends):
        domains.append(
            VanishingDomain(
                start=float(t[i0]),
                center=float(0.5 * (t[i0] + t[i1])),
                end=float(t[i1]),
                clipped=bool(i0 == 0 or i1 == below.size - 1),
            )
        )
    return domains


def count_recovery_peaks(series: ObservableSeries) -> int:
    """Strict local maxima of coherence within one period after the first zero.

    Returns 0 when no coherence zero is detected (nothing to recover from).

    Raises:
        ValueError: if the series ends less than one period after the first
            detected zero.
    """
    zeros = detect_coherence_zeros(series)
    if zeros.size == 0:
        return 0
    if series.eta is None or series.channel is None:
        raise ValueError("series carries no eta/channel metadata")
    start = zeros[0]
    period = coherence_period(series.eta, series.channel)
    t = series.times
    if start + period > t[-1] + 1e-9 * max(1.0, t[-1]):
        raise ValueError(
            f"series ends at t={t[-1]}, less than one period ({period}) after "
            f"the first zero at t={start}"
        )
    coh = series.coherence
    inner = np.arange(1, t.size - 1)
    is_peak = (coh[inner] > coh[inner - 1]) & (coh[inner] > coh[inner + 1])
    in_window = (t[inner] > start) & (t[inner] <= start + period)
    return int(np.count_nonzero(is_peak & in_window))


def max_original_concurrence(
    poly: PartitionPolynomial,
    probe: OatParameters,
    eta: float,
    times: np.ndarray,
) -> float:
    """Maximum over the grid of the per-pair concurrence under channel I."""
    series = series_from_polynomial(poly, probe, eta, Channel.I, times)
    return float(series.concurrence_rescaled.max() / (probe.n_probes - 1))


def fit_cmax_scaling(
    n_values,
    theta: float,
    ring: IsingRing,
    eta: float = 0.01,
    steps: int | None = None,
) -> FitResult:
    """Exponential-decay fit of the maximum concurrence against ensemble size.

    For each N the maximum original concurrence over one coherence period is
    computed under channel I, then ln C_max is fit linearly against (N - 2).
    Requires the strong-coupling regime (beta * coupling >= 10), where the
    maxima sit at the recovery times.

    Raises:
        ValueError: on fewer than 3 ensemble sizes, weak coupling, or any
            C_max = 0 (log undefined; parameters outside the squeezed regime).
    """
    n_values = np.asarray(n_values, dtype=int)
    if n_values.ndim != 1 or n_values.size < 3:
        raise ValueError("n_values must contain at least 3 ensemble sizes")
    if np.any(n_values < 2):
        raise ValueError("ensemble sizes must be >= 2")
    if ring.inverse_temperature * ring.coupling < 10.0:
        raise ValueError(
            "fit requires the strong-coupling regime: inverse_temperature * "
            "coupling >= 10"
        )
    if not (np.isfinite(eta) and eta > 0.0):
        raise ValueError(f"eta must be positive, got {eta!r}")

    poly = partition_coefficients(ring)
    if steps is None:
        steps = default_steps(lee_yang_zeros(poly), eta, coherence_period(eta, Channel.I), Channel.I)
    times = np.linspace(0.0, coherence_period(eta, Channel.I), steps)

    cmax = np.array(
        [
            max_original_concurrence(poly, OatParameters(int(n), theta), eta, times)
            for n in n_values
        ]
    )
    if np.any(cmax <= 0.0):
        raise ValueError(
            "C_max vanished for some ensemble size: parameters outside the "
            "squeezed regime, log fit undefined"
        )
    x = n_values - 2.0
    log_cmax = np.log(cmax)
    alpha, intercept = np.polyfit(x, log_cmax, 1)
    predicted = alpha * x + intercept
    residual = float(np.sqrt(np.mean((log_cmax - predicted) ** 2)))
    return FitResult(
        alpha=float(alpha),
        intercept=float(intercept),
        residual=residual,
        n_values=n_values,
        log_cmax=log_cmax,
    )


def emit_csv(series: ObservableSeries, path) -> None:
    """Write the series as deterministic CSV with 12 significant digits."""
    data = np.column_stack(
        [
            series.times,
            series.a_factor,
            series.coherence,
            series.concurrence_rescaled,
            series.xi2,
            series.xi2_prime,
        ]
    )
    try:
        np.savetxt(
            path,
            data,
            fmt="%.12g",
            delimiter=",",
            header="t,a_factor,coherence,concurrence_rescaled,xi2,xi2_prime",
            comments="",
        )
    except OSError as exc:
        raise OSError(f"failed to write CSV to {path!r}: {exc}") from exc
