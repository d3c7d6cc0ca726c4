"""Delay-coordinate embeddings and the correlation curve that tunes them.

The delay for an embedding is read off an autocorrelation-like (ACL)
curve of the signal: the lag where the curve first crosses zero marks a
quarter-turn of the dominant oscillation, which spreads the embedded
points into an open loop instead of collapsing them onto a line.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import (
    MalformedHeaderError,
    NoCriticalPointsError,
    NoZeroCrossingError,
    SignalTooShortError,
)
from .signal_io import Signal


@dataclass(frozen=True)
class PointCloud:
    """A finite set of points in a common ambient dimension.

    ``points`` is an (n, m) float64 array; n may be zero. Coordinates must
    be finite.
    """

    points: np.ndarray

    def __post_init__(self) -> None:
        arr = np.asarray(self.points, dtype=np.float64)
        if arr.ndim != 2:
            raise ValueError("points must be a 2-D array of shape (n, m)")
        if arr.shape[1] < 1:
            raise ValueError("ambient dimension must be at least 1")
        if not np.all(np.isfinite(arr)):
            raise ValueError("coordinates must be finite")
        arr = np.ascontiguousarray(arr)
        arr.flags.writeable = False
        object.__setattr__(self, "points", arr)

    def __len__(self) -> int:
        return int(self.points.shape[0])

    @property
    def dim(self) -> int:
        return int(self.points.shape[1])

    def diameter(self) -> float:
        """Largest pairwise Euclidean distance, 0 for fewer than 2 points."""
        if len(self) < 2:
            return 0.0
        from scipy.spatial.distance import pdist

        return float(pdist(self.points).max())


@dataclass(frozen=True)
class AclCurve:
    """Autocorrelation-like curve of a signal, indexed by integer lag.

    ``values[j]`` holds the lag-j correlation sum; the curve has exactly
    one value per signal sample, so lag indices map one-to-one onto the
    sampling grid.
    """

    values: np.ndarray
    sample_rate_hz: float

    def __post_init__(self) -> None:
        arr = np.asarray(self.values, dtype=np.float64)
        if arr.ndim != 1 or arr.size < 2:
            raise ValueError("curve needs at least two values")
        arr.flags.writeable = False
        object.__setattr__(self, "values", arr)

    def __len__(self) -> int:
        return int(self.values.size)


def acl(s: Signal, form: str = "lag") -> AclCurve:
    """Correlation curve used for delay selection.

    Parameters
    ----------
    s : Signal
        Input signal of length k.
    form : str
        ``"lag"`` (default) computes the lag correlation
        ``values[j] = sum_{l=1..k-j} x_l * x_{l+j}``, evaluated by direct
        summation. ``"literal"`` computes the degenerate unlagged form
        ``values[i] = x_i * sum_l x_l``, kept only for auditing; its shape
        mirrors the signal itself and carries no lag information.

    Returns
    -------
    AclCurve
        Curve with one value per input sample.
    """
    x = s.samples
    if form == "lag":
        # np.correlate performs the direct O(k^2) summation in C; the slice
        # keeps the nonnegative lags j = 0 .. k-1.
        vals = np.correlate(x, x, mode="full")[x.size - 1 :]
    elif form == "literal":
        vals = x * float(np.sum(x))
    else:
        raise ValueError(f"unknown ACL form: {form!r}")
    return AclCurve(vals, s.sample_rate_hz)


def critical_points(curve: AclCurve) -> list[int]:
    """Lags where the discrete derivative of the curve changes sign.

    Runs of zero derivative are treated as a single flat extremum whose
    midpoint lag is reported. Raises NoCriticalPointsError for monotone
    curves.
    """
    v = curve.values
    d = np.diff(v)
    crit: list[int] = []
    prev_sign = 0
    prev_pos = -1
    for i, di in enumerate(d):
        sign = int(di > 0) - int(di < 0)
        if sign == 0:
            continue
        if prev_sign != 0 and sign != prev_sign:
            crit.append(int(round((prev_pos + 1 + i) / 2)))
        prev_sign = sign
        prev_pos = i
    if not crit:
        raise NoCriticalPointsError("curve is monotone, no critical points")
    return crit


def _zero_crossing_lags(v: np.ndarray) -> list[int]:
    """Integer lags nearest to the sign changes of a sampled curve."""
    lags: list[int] = []
    prev_sign = 0
    prev_idx = -1
    for j in range(v.size):
        sign = int(v[j] > 0) - int(v[j] < 0)
        if sign == 0:
            continue
        if prev_sign != 0 and sign != prev_sign:
            if prev_idx == j - 1:
                # Linear interpolation between the two straddling values.
                frac = v[j - 1] / (v[j - 1] - v[j])
                lag = int(round((j - 1) + frac))
            else:
                # The curve touched zero exactly; the crossing is the first
                # zero sample.
                lag = prev_idx + 1
            lags.append(max(lag, 1))
        prev_sign = sign
        prev_idx = j
    return lags


def select_delay(curve: AclCurve, strategy: str = "first-zero") -> int:
    """Pick an embedding delay, in samples, from a correlation curve.

    Strategies
    ----------
    ``"first-zero"`` (default)
        Nearest integer lag to the first sign change of the curve.
    ``"second-zero"``
        Nearest integer lag to the second sign change.
    ``"mid-critical"``
        Rounded midpoint of the first two critical-point lags.

    Raises NoZeroCrossingError or NoCriticalPointsError when the curve
    does not supply the feature the strategy needs.
    """
    k = len(curve)
    if strategy in ("first-zero", "second-zero"):
        lags = _zero_crossing_lags(curve.values)
        need = 1 if strategy == "first-zero" else 2
        if len(lags) < need:
            raise NoZeroCrossingError(
                f"curve has {len(lags)} zero crossing(s), {need} needed"
            )
        j = lags[need - 1]
    elif strategy == "mid-critical":
        crit = critical_points(curve)
        if len(crit) < 2:
            raise NoCriticalPointsError("need two critical points for mid-critical")
        j = int(round((crit[0] + crit[1]) / 2))
    else:
        raise ValueError(f"unknown delay strategy: {strategy!r}")
    return min(max(j, 1), k - 1)


def delay_embed(s: Signal, delay: int, dim: int = 2) -> PointCloud:
    """Embed a signal into R^dim with the given sample delay.

    Point i is ``(x_i, x_{i+j}, ..., x_{i+(dim-1) j})`` for delay j, giving
    ``k - (dim-1) * j`` points for a length-k signal. Raises
    SignalTooShortError when the signal cannot supply a single point.
    """
    if delay < 1:
        raise ValueError("delay must be at least 1 sample")
    if dim < 2:
        raise ValueError("embedding dimension must be at least 2")
    k = len(s)
    count = k - (dim - 1) * delay
    if count < 1:
        raise SignalTooShortError(
            f"signal of length {k} cannot be embedded with delay {delay}, dim {dim}"
        )
    x = s.samples
    cols = [x[d * delay : d * delay + count] for d in range(dim)]
    return PointCloud(np.column_stack(cols))


def cloud_csv_text(cloud: PointCloud) -> str:
    """The CSV form of a cloud: one point per line, comma-separated."""
    lines = [",".join(repr(float(c)) for c in row) for row in cloud.points]
    return "\n".join(lines) + ("\n" if lines else "")


def write_cloud_csv(cloud: PointCloud, path: str | Path) -> None:
    """Write a point cloud to a file in the cloud CSV format."""
    Path(path).write_text(cloud_csv_text(cloud))


def read_cloud_csv(path: str | Path) -> PointCloud:
    """Read a comma-separated point cloud written by write_cloud_csv."""
    rows: list[list[float]] = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            rows.append([float(tok) for tok in line.split(",")])
        except ValueError as exc:
            raise MalformedHeaderError(f"{path}:{lineno}: bad point: {line!r}") from exc
    if not rows:
        return PointCloud(np.empty((0, 2)))
    width = len(rows[0])
    if any(len(r) != width for r in rows):
        raise MalformedHeaderError(f"{path}: inconsistent coordinate counts")
    return PointCloud(np.asarray(rows, dtype=np.float64))
