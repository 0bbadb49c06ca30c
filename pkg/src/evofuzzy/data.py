"""Series preparation: normalization, lag embedding, CSV I/O, Mackey-Glass generation."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import (
    ConfigurationError,
    CSVParseError,
    DegenerateRangeError,
    InsufficientDataError,
)


@dataclass(frozen=True)
class NormalizationMap:
    """Affine map from ``[observed_min, observed_max]`` onto ``[-1, 1]``."""

    observed_min: float
    observed_max: float

    def __post_init__(self):
        if not self.observed_min < self.observed_max:
            raise DegenerateRangeError(
                f"need min < max, got [{self.observed_min}, {self.observed_max}]"
            )

    @classmethod
    def fit(cls, series) -> "NormalizationMap":
        series = np.asarray(series, dtype=float)
        if series.size == 0:
            raise InsufficientDataError("cannot fit normalization on an empty series")
        return cls(float(series.min()), float(series.max()))

    @property
    def half_range(self) -> float:
        return 0.5 * (self.observed_max - self.observed_min)

    @property
    def mid(self) -> float:
        return 0.5 * (self.observed_max + self.observed_min)

    def normalize(self, values) -> np.ndarray:
        return (np.asarray(values, dtype=float) - self.mid) / self.half_range

    def denormalize(self, values) -> np.ndarray:
        return np.asarray(values, dtype=float) * self.half_range + self.mid


def normalize(series) -> tuple[np.ndarray, NormalizationMap]:
    norm = NormalizationMap.fit(series)
    scaled = norm.normalize(series)
    # pin the extremes exactly; affine rounding can leave them 1 ulp off
    series = np.asarray(series, dtype=float)
    scaled[series == norm.observed_min] = -1.0
    scaled[series == norm.observed_max] = 1.0
    return scaled, norm


def denormalize(values, norm: NormalizationMap) -> np.ndarray:
    return norm.denormalize(values)


@dataclass
class TimeSeriesFrame:
    """Lag-embedded samples: ``inputs[k, j] = series[times[k] - lags[j]]``, ``targets[k] = series[times[k]]``."""

    inputs: np.ndarray
    targets: np.ndarray
    lags: tuple[int, ...]
    times: np.ndarray
    norm: NormalizationMap | None = field(default=None, compare=False)

    def __len__(self) -> int:
        return len(self.targets)

    @property
    def samples(self):
        return list(zip(self.inputs, self.targets))

    def subset(self, mask) -> "TimeSeriesFrame":
        return TimeSeriesFrame(
            self.inputs[mask], self.targets[mask], self.lags, self.times[mask], self.norm
        )


def _check_lags(lags) -> tuple[int, ...]:
    lags = tuple(int(v) for v in lags)
    if not lags or any(v < 1 for v in lags):
        raise ConfigurationError(f"lags must be a non-empty list of positive integers, got {lags}")
    return lags


def embed(series, lags: Sequence[int], norm: NormalizationMap | None = None) -> TimeSeriesFrame:
    series = np.asarray(series, dtype=float)
    lags = _check_lags(lags)
    m = max(lags)
    if len(series) <= m:
        raise InsufficientDataError(f"series of length {len(series)} too short for max lag {m}")
    times = np.arange(m, len(series))
    inputs = np.column_stack([series[times - lag] for lag in lags])
    return TimeSeriesFrame(inputs, series[times].copy(), lags, times, norm)


# -- CSV ---------------------------------------------------------------------


def read_csv(path, column: str | None = None) -> np.ndarray:
    """Read one numeric column from a CSV file with a single header row.

    Single-column files need no ``column``; for wider files it selects the
    column by header name.
    """
    path = Path(path)
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise CSVParseError(path, 1, "missing header row") from None
        header = [h.strip() for h in header]
        if column is None:
            if len(header) != 1:
                raise CSVParseError(path, 1, f"expected one column, found {header}; pass a column name")
            idx = 0
        elif column in header:
            idx = header.index(column)
        else:
            raise CSVParseError(path, 1, f"no column {column!r} in {header}")
        values = []
        for row in reader:
            line = reader.line_num
            if not row or all(not c.strip() for c in row):
                continue
            if len(row) != len(header):
                raise CSVParseError(path, line, f"expected {len(header)} fields, got {len(row)}")
            try:
                v = float(row[idx])
            except ValueError:
                raise CSVParseError(path, line, f"not a number: {row[idx]!r}") from None
            if not math.isfinite(v):
                raise CSVParseError(path, line, f"non-finite value {row[idx]!r}")
            values.append(v)
    return np.array(values, dtype=float)


def write_csv(path, columns: Mapping[str, Sequence]) -> None:
    """Write equal-length columns, one row per time step; floats are written with ``repr`` so they round-trip."""
    names = list(columns)
    cols = [list(columns[k]) for k in names]
    if len({len(c) for c in cols}) > 1:
        raise ValueError("columns must have equal length")
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(names)
        for row in zip(*cols):
            writer.writerow([_fmt(v) for v in row])


def _fmt(v):
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return repr(float(v))


# -- fixtures ----------------------------------------------------------------

TABLE1_FILE = "electricity_table1.csv"
X1_FILE = "electricity_x1.csv"


def fixture_path(name: str):
    return resources.files("evofuzzy") / "fixtures" / name


def load_table1() -> dict[str, list]:
    """The Oct 2013 - May 2014 electricity excerpt, verbatim. Missing cells are ``None``."""
    with fixture_path(TABLE1_FILE).open(newline="") as fh:
        rows = list(csv.DictReader(fh))
    out: dict[str, list] = {"month": [r["month"] for r in rows]}
    for key in ("x1", "x2", "x3"):
        out[key] = [float(r[key]) if r[key].strip() else None for r in rows]
    return out


# -- Mackey-Glass ------------------------------------------------------------


@dataclass(frozen=True)
class MackeyGlassParams:
    mg_beta: float = 0.2
    mg_gamma: float = 0.1
    mg_n: float = 10.0
    tau: float = 17.0
    dt: float = 0.1
    x0: float = 1.2

    def __post_init__(self):
        if not self.dt > 0:
            raise ConfigurationError(f"dt must be > 0, got {self.dt}")
        if not self.tau >= 0:
            raise ConfigurationError(f"tau must be >= 0, got {self.tau}")
        ratio = self.tau / self.dt
        if abs(ratio - round(ratio)) > 1e-9 * max(1.0, ratio):
            raise ConfigurationError(f"tau={self.tau} must be an integer multiple of dt={self.dt}")
        per_unit = 1.0 / self.dt
        if abs(per_unit - round(per_unit)) > 1e-9 * per_unit:
            raise ConfigurationError(f"1/dt must be an integer for unit-spaced samples, got dt={self.dt}")

    @property
    def delay_steps(self) -> int:
        return int(round(self.tau / self.dt))

    @property
    def steps_per_unit(self) -> int:
        return int(round(1.0 / self.dt))


def mackey_glass_rhs(x, x_tau, params: MackeyGlassParams):
    return params.mg_beta * x_tau / (1.0 + x_tau ** params.mg_n) - params.mg_gamma * x


def generate_mackey_glass(params: MackeyGlassParams, count: int) -> np.ndarray:
    """Integrate the Mackey-Glass delay equation with classical RK4.

    Returns ``count`` samples at t = 0, 1, 2, ... with constant history ``x0``
    for t < 0. The delayed value at the half-step stages is taken from the
    cubic Hermite interpolant of the stored trajectory (values plus
    derivatives), which keeps the scheme fourth order; the interval before
    t = 0 is the constant history.
    """
    if count < 1:
        raise InsufficientDataError(f"count must be >= 1, got {count}")
    dt = params.dt
    d = params.delay_steps
    spu = params.steps_per_unit
    n_steps = (count - 1) * spu
    x = np.empty(n_steps + 1)
    f = np.empty(n_steps + 1)  # dx/dt at each grid point
    x[0] = params.x0

    def delayed(j):
        # x and dx/dt at grid index j - d (constant history before 0)
        k = j - d
        if k < 0:
            return params.x0, 0.0
        return x[k], f[k]

    for j in range(n_steps):
        xj = x[j]
        if d == 0:
            k1 = mackey_glass_rhs(xj, xj, params)
            a = xj + 0.5 * dt * k1
            k2 = mackey_glass_rhs(a, a, params)
            b = xj + 0.5 * dt * k2
            k3 = mackey_glass_rhs(b, b, params)
            c = xj + dt * k3
            k4 = mackey_glass_rhs(c, c, params)
            f[j] = k1
        else:
            y0, g0 = delayed(j)
            k1 = mackey_glass_rhs(xj, y0, params)
            f[j] = k1
            y1, g1 = delayed(j + 1)
            if j + 1 - d <= 0:
                ymid = params.x0
            else:
                ymid = 0.5 * (y0 + y1) + dt * (g0 - g1) / 8.0
            k2 = mackey_glass_rhs(xj + 0.5 * dt * k1, ymid, params)
            k3 = mackey_glass_rhs(xj + 0.5 * dt * k2, ymid, params)
            k4 = mackey_glass_rhs(xj + dt * k3, y1, params)
        x[j + 1] = xj + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
    return x[::spu].copy()
