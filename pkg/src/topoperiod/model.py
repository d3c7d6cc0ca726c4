"""Piecewise-sinusoid signal model: synthesis and estimation.

A model is a sequence of contiguous sinusoid segments under one shared
amplitude envelope. Phases are chained so the waveform stays continuous
across segment boundaries: each segment inherits the accumulated phase of
its predecessor at the boundary time. Estimation walks the signal's zero
crossings, splits the gap sequence where the local mean gap shifts, and
reads each segment's frequency from its mean half-period.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .embedding import PointCloud
from .errors import (
    InsufficientPeaksError,
    NoZeroCrossingsError,
    PhaseConditionError,
)
from .signal_io import Signal

_TWO_PI = 2.0 * math.pi
_PHASE_TOL = 1e-9

# Gap-sequence change detection: windows this many half-period gaps wide,
# splitting when the windowed means differ by this relative amount.
_GAP_WINDOW = 8
_GAP_SHIFT = 0.2

_PHI_GRID = 256  # resolution of the initial-phase search, steps of 2*pi/256


@dataclass(frozen=True)
class SinusoidSegment:
    """One segment: ``sin(2 pi t / period + phase)`` on [t_start, t_end)."""

    t_start: float
    t_end: float
    period: float
    phase: float


def _wrap_phase(x: float) -> float:
    """Map a phase difference into (-pi, pi]."""
    return x - _TWO_PI * math.floor((x + math.pi) / _TWO_PI)


@dataclass(frozen=True)
class PiecewiseSinusoidModel:
    """Contiguous sinusoid segments under a shared positive envelope.

    ``envelope`` holds (time, amplitude) breakpoints, strictly increasing
    in time and positive in amplitude; between breakpoints the envelope is
    interpolated with a shape-preserving monotone cubic, and outside them
    it holds the edge value. Construction fails with PhaseConditionError
    unless each phase equals the previous one plus the boundary-time
    correction that keeps the waveform continuous.
    """

    segments: tuple[SinusoidSegment, ...]
    envelope: tuple[tuple[float, float], ...]

    def __post_init__(self) -> None:
        segs = tuple(self.segments)
        if not segs:
            raise ValueError("model needs at least one segment")
        env = tuple((float(t), float(a)) for t, a in self.envelope)
        if not env:
            raise ValueError("model needs at least one envelope breakpoint")
        object.__setattr__(self, "segments", segs)
        object.__setattr__(self, "envelope", env)

        for seg in segs:
            if not (seg.period > 0):
                raise ValueError(f"segment period must be positive, got {seg.period}")
            if not (seg.t_end > seg.t_start):
                raise ValueError("segment must have positive duration")
        for prev, cur in zip(segs, segs[1:]):
            if prev.t_end != cur.t_start:
                raise ValueError(
                    f"segments must be contiguous: {prev.t_end} != {cur.t_start}"
                )
        times = [t for t, _ in env]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("envelope breakpoint times must be strictly increasing")
        if any(a <= 0 for _, a in env):
            raise ValueError("envelope amplitudes must be positive")

        for prev, cur in zip(segs, segs[1:]):
            expected = prev.phase + _TWO_PI * cur.t_start * (
                1.0 / prev.period - 1.0 / cur.period
            )
            if abs(_wrap_phase(cur.phase - expected)) > _PHASE_TOL:
                raise PhaseConditionError(
                    f"phase {cur.phase} at t={cur.t_start} breaks continuity; "
                    f"expected {expected} (mod 2 pi)"
                )

    @classmethod
    def from_periods(
        cls,
        boundaries: list[float],
        periods: list[float],
        phi0: float = 0.0,
        envelope: float | list[tuple[float, float]] = 1.0,
    ) -> "PiecewiseSinusoidModel":
        """Build a model with phases derived from the continuity chain.

        ``boundaries`` has one more entry than ``periods``. A scalar
        envelope becomes a constant breakpoint pair over the full span.
        """
        if len(boundaries) != len(periods) + 1:
            raise ValueError("need one more boundary than periods")
        phases = [float(phi0)]
        for i in range(1, len(periods)):
            phases.append(
                phases[i - 1]
                + _TWO_PI * boundaries[i] * (1.0 / periods[i - 1] - 1.0 / periods[i])
            )
        segs = tuple(
            SinusoidSegment(boundaries[i], boundaries[i + 1], periods[i], phases[i])
            for i in range(len(periods))
        )
        if isinstance(envelope, (int, float)):
            env: tuple[tuple[float, float], ...] = (
                (boundaries[0], float(envelope)),
                (boundaries[-1], float(envelope)),
            )
        else:
            env = tuple((float(t), float(a)) for t, a in envelope)
        return cls(segs, env)

    @property
    def t_start(self) -> float:
        return self.segments[0].t_start

    @property
    def t_end(self) -> float:
        return self.segments[-1].t_end

    def envelope_at(self, t: np.ndarray) -> np.ndarray:
        """Envelope values at times t, edge-clamped outside the breakpoints."""
        ts = np.asarray([p[0] for p in self.envelope])
        amps = np.asarray([p[1] for p in self.envelope])
        if ts.size == 1:
            return np.full(np.shape(t), amps[0])
        from scipy.interpolate import PchipInterpolator

        interp = PchipInterpolator(ts, amps)
        return np.asarray(interp(np.clip(t, ts[0], ts[-1])))

    def to_dict(self) -> dict:
        return {
            "segments": [
                {"t0": s.t_start, "t1": s.t_end, "period": s.period, "phase": s.phase}
                for s in self.segments
            ],
            "envelope": [{"t": t, "a": a} for t, a in self.envelope],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PiecewiseSinusoidModel":
        segs = tuple(
            SinusoidSegment(
                float(s["t0"]), float(s["t1"]), float(s["period"]), float(s["phase"])
            )
            for s in data["segments"]
        )
        env = tuple((float(p["t"]), float(p["a"])) for p in data["envelope"])
        return cls(segs, env)


def synthesize(model: PiecewiseSinusoidModel, sample_rate_hz: float) -> Signal:
    """Sample a model on the grid ``i / rate`` over its time span.

    Samples fall in the half-open span [t_start, t_end); each takes the
    period and phase of the segment containing its time.
    """
    if sample_rate_hz <= 0:
        raise ValueError("sample rate must be positive")
    r = float(sample_rate_hz)
    i0 = int(math.ceil(model.t_start * r - 1e-9))
    i1 = int(math.ceil(model.t_end * r - 1e-9))
    if i1 - i0 < 2:
        raise ValueError("sample rate too low for the model's span")
    t = np.arange(i0, i1, dtype=np.float64) / r

    starts = np.asarray([seg.t_start for seg in model.segments])
    periods = np.asarray([seg.period for seg in model.segments])
    phases = np.asarray([seg.phase for seg in model.segments])
    seg_idx = np.searchsorted(starts[1:], t, side="right")

    amps = model.envelope_at(t)
    w = amps * np.sin(_TWO_PI * t / periods[seg_idx] + phases[seg_idx])
    return Signal(w, r)


def _zero_crossing_times(s: Signal) -> np.ndarray:
    """Times where the signal changes sign, linearly interpolated.

    A sample that is exactly zero marks the crossing itself (when the
    surrounding signs differ), so it is attributed to the following gap.
    """
    x = s.samples
    rate = s.sample_rate_hz
    times: list[float] = []
    prev_sign = 0
    prev_idx = -1
    for i in range(x.size):
        sign = int(x[i] > 0) - int(x[i] < 0)
        if sign == 0:
            continue
        if prev_sign != 0 and sign != prev_sign:
            if prev_idx == i - 1:
                frac = x[i - 1] / (x[i - 1] - x[i])
                times.append(((i - 1) + frac) / rate)
            else:
                times.append((prev_idx + 1) / rate)
        prev_sign = sign
        prev_idx = i
    return np.asarray(times)


@dataclass(frozen=True)
class SegmentEstimate:
    """Constant-frequency intervals found in a signal.

    ``frequencies[j]`` is exactly ``1 / (2 * gap_means[j])``: the mean gap
    between zero crossings inside an interval is half the local period.
    """

    intervals: tuple[tuple[float, float], ...]
    gap_means: tuple[float, ...]
    frequencies: tuple[float, ...]


def _split_gap_runs(gaps: np.ndarray) -> list[int]:
    """Indices where the gap sequence switches to a new mean level.

    A split is declared when two adjacent windows of _GAP_WINDOW gaps have
    means differing by more than _GAP_SHIFT of the left mean, then refined
    to the largest adjacent-gap jump near the trigger point.
    """
    n = gaps.size
    w = _GAP_WINDOW
    splits: list[int] = []
    i = w
    while i + w <= n:
        mu_l = float(np.mean(gaps[i - w : i]))
        mu_r = float(np.mean(gaps[i : i + w]))
        if abs(mu_l - mu_r) > _GAP_SHIFT * mu_l:
            lo = max(1, i - 2)
            hi = min(n - 1, i + w)
            jumps = np.abs(gaps[lo : hi + 1] - gaps[lo - 1 : hi])
            bp = lo + int(np.argmax(jumps))
            if not splits or bp > splits[-1]:
                splits.append(bp)
            i = bp + w
        else:
            i += 1
    return splits


def estimate_segments(s: Signal) -> SegmentEstimate:
    """Partition a signal into constant-frequency intervals.

    Zero-crossing gaps approximate half-periods; a shift in their running
    mean marks a frequency change. Raises NoZeroCrossingsError when the
    signal has fewer than two crossings.
    """
    crossings = _zero_crossing_times(s)
    if crossings.size < 2:
        raise NoZeroCrossingsError(
            f"found {crossings.size} zero crossing(s), need at least 2"
        )
    gaps = np.diff(crossings)
    splits = _split_gap_runs(gaps)
    bounds = [0] + splits + [gaps.size]
    intervals: list[tuple[float, float]] = []
    mus: list[float] = []
    freqs: list[float] = []
    for a, b in zip(bounds, bounds[1:]):
        mu = float(np.mean(gaps[a:b]))
        intervals.append((float(crossings[a]), float(crossings[b])))
        mus.append(mu)
        freqs.append(1.0 / (2.0 * mu))
    return SegmentEstimate(tuple(intervals), tuple(mus), tuple(freqs))


def fit_envelope(s: Signal) -> np.ndarray:
    """Amplitude breakpoints from the positive local maxima of a signal.

    Strict maxima only; a flat plateau contributes its midpoint sample.
    Returns an (n, 2) array of (time, amplitude) rows. Raises
    InsufficientPeaksError with fewer than two qualifying peaks.
    """
    x = s.samples
    d = np.diff(x)
    nz = np.nonzero(d)[0]
    rows: list[tuple[float, float]] = []
    for a, b in zip(nz, nz[1:]):
        if d[a] > 0 and d[b] < 0:
            mid = (a + 1 + b) // 2
            if x[mid] > 0:
                rows.append((mid / s.sample_rate_hz, float(x[mid])))
    if len(rows) < 2:
        raise InsufficientPeaksError(
            f"found {len(rows)} positive local maxima, need at least 2"
        )
    return np.asarray(rows)


def fit_model(s: Signal) -> PiecewiseSinusoidModel:
    """Estimate a piecewise-sinusoid model from a signal.

    Interior segment boundaries sit on zero crossings found by the gap
    scan; the outer boundaries extend to the signal's full span. The
    initial phase is picked from a 2 pi / 256 grid by least squares on the
    first interval, and later phases follow from the continuity chain.
    """
    est = estimate_segments(s)
    env_rows = fit_envelope(s)
    envelope = tuple((float(t), float(a)) for t, a in env_rows)

    inner = [iv[0] for iv in est.intervals[1:]]
    boundaries = [0.0] + inner + [s.duration_s]
    periods = [1.0 / f for f in est.frequencies]

    t = s.times()
    mask = t < boundaries[1]
    probe = PiecewiseSinusoidModel.from_periods(
        boundaries, periods, 0.0, list(envelope)
    )
    amps = probe.envelope_at(t[mask])
    theta = _TWO_PI * t[mask] / periods[0]
    x = s.samples[mask]
    grid = _TWO_PI * np.arange(_PHI_GRID) / _PHI_GRID
    errs = [float(np.sum((x - amps * np.sin(theta + phi)) ** 2)) for phi in grid]
    phi0 = float(grid[int(np.argmin(errs))])

    return PiecewiseSinusoidModel.from_periods(boundaries, periods, phi0, list(envelope))


def graph(s: Signal | np.ndarray, sample_rate_hz: float | None = None) -> PointCloud:
    """The signal's graph {(t_i, x_i)} as a 2-D point cloud.

    Accepts a Signal (rate taken from it) or a bare sample array with an
    optional rate, defaulting to 1 Hz. An empty array gives an empty
    cloud.
    """
    if isinstance(s, Signal):
        samples = s.samples
        rate = s.sample_rate_hz
    else:
        samples = np.asarray(s, dtype=np.float64)
        rate = float(sample_rate_hz) if sample_rate_hz is not None else 1.0
    if samples.size == 0:
        return PointCloud(np.empty((0, 2)))
    t = np.arange(samples.size, dtype=np.float64) / rate
    return PointCloud(np.column_stack((t, samples)))
