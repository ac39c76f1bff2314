"""Time-series data model: ingestion, windowing, per-node statistics, smoothing."""
from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    BoundsError,
    ConfigError,
    DataError,
    EmptyInput,
    FormatError,
    InsufficientData,
    ParseError,
)

TIME_COLUMN = "t"
TS_UNIFORM_RTOL = 1e-6  # relative spacing tolerance for an explicit time column


@dataclass(frozen=True)
class MultivariateSeries:
    """Evenly sampled multichannel recording; data is channels x samples."""

    channel_names: tuple
    dt: float
    data: np.ndarray

    def __post_init__(self):
        arr = np.ascontiguousarray(self.data, dtype=np.float64)
        if arr.ndim != 2:
            raise FormatError(f"series data must be 2-D, got shape {arr.shape}")
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "channel_names", tuple(self.channel_names))
        if len(self.channel_names) != arr.shape[0]:
            raise FormatError(
                f"{len(self.channel_names)} channel names for {arr.shape[0]} data rows")
        if not (isinstance(self.dt, (int, float)) and math.isfinite(self.dt) and self.dt > 0):
            raise ConfigError(f"dt must be a positive real, got {self.dt!r}")
        if not np.all(np.isfinite(arr)):
            raise DataError("series contains non-finite values")

    @property
    def n_channels(self) -> int:
        return self.data.shape[0]

    @property
    def n_samples(self) -> int:
        return self.data.shape[1]

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.n_samples) * self.dt


@dataclass(frozen=True)
class Window:
    """Contiguous slab of a series; length >= 3 so lag-1 fits keep a residual."""

    series: MultivariateSeries
    start: int
    length: int

    def __post_init__(self):
        if self.length < 3:
            raise BoundsError(f"window length must be >= 3, got {self.length}")
        if self.start < 0 or self.start + self.length > self.series.n_samples:
            raise BoundsError(
                f"window [{self.start}, {self.start + self.length}) out of range "
                f"for {self.series.n_samples} samples")

    def data(self) -> np.ndarray:
        return self.series.data[:, self.start:self.start + self.length]

    @property
    def channel_names(self) -> tuple:
        return self.series.channel_names

    @property
    def dt(self) -> float:
        return self.series.dt

    @property
    def end_time(self) -> float:
        # time of the last sample in the window
        return (self.start + self.length - 1) * self.series.dt


def extract_window(s: MultivariateSeries, start: int, length: int) -> Window:
    return Window(s, start, length)


def load_csv(path, dt: float | None = None) -> MultivariateSeries:
    """Read a header-first CSV; a leading 't' column sets dt, else pass dt."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise EmptyInput(f"{path}: empty file") from None
        header = [h.strip() for h in header]
        has_time = bool(header) and header[0] == TIME_COLUMN
        names = header[1:] if has_time else header
        if not names:
            raise FormatError(f"{path}: header names no channels")
        width = len(header)
        rows = []
        for lineno, raw in enumerate(reader, start=2):
            if len(raw) != width:
                raise ParseError(
                    f"{path}: row {lineno}: expected {width} fields, got {len(raw)}")
            try:
                rows.append([float(v) for v in raw])
            except ValueError as exc:
                raise ParseError(f"{path}: row {lineno}: {exc}") from None
    if not rows:
        raise EmptyInput(f"{path}: no data rows")
    table = np.asarray(rows, dtype=np.float64)
    if not np.all(np.isfinite(table)):
        bad = np.argwhere(~np.isfinite(table))[0]
        raise DataError(f"{path}: non-finite value at row {int(bad[0]) + 2}")
    if has_time:
        tcol = table[:, 0]
        data = table[:, 1:].T
        if len(tcol) >= 2:
            step = (tcol[-1] - tcol[0]) / (len(tcol) - 1)
            if step <= 0:
                raise FormatError(f"{path}: time column not increasing")
            dev = np.max(np.abs(np.diff(tcol) - step))
            if dev > TS_UNIFORM_RTOL * abs(step):
                raise FormatError(
                    f"{path}: non-uniform timestamps (max deviation {dev:.3g} vs step {step:.3g})")
            dt = float(step)
        elif dt is None:
            raise ConfigError(f"{path}: single row; supply dt explicitly")
    else:
        data = table.T
        if dt is None:
            raise ConfigError(f"{path}: no '{TIME_COLUMN}' column; supply dt")
    return MultivariateSeries(tuple(names), float(dt), np.ascontiguousarray(data))


def write_csv(series: MultivariateSeries, path, include_time: bool = True) -> None:
    """Write a series in the same format load_csv reads; %.17g round-trips exactly."""
    times = series.times
    with open(path, "w", newline="", encoding="utf-8") as fh:
        if include_time:
            fh.write(",".join((TIME_COLUMN,) + series.channel_names) + "\n")
        else:
            fh.write(",".join(series.channel_names) + "\n")
        cols = series.data
        for k in range(series.n_samples):
            vals = [f"{v:.17g}" for v in cols[:, k]]
            if include_time:
                vals.insert(0, f"{times[k]:.17g}")
            fh.write(",".join(vals) + "\n")


def node_variances(w: Window) -> np.ndarray:
    """Unbiased per-channel sample variance over the window."""
    if w.length < 2:
        raise InsufficientData(f"variance needs >= 2 samples, window has {w.length}")
    return w.data().var(axis=1, ddof=1)


def moving_average(m, width_seconds: float):
    """Trailing mean over (t - width, t]; leading partial windows use what exists."""
    from .markers import MarkerSeries  # local import, markers depends on this module

    if len(m.times) == 0:
        raise EmptyInput("moving_average on empty marker series")
    if width_seconds <= 0:
        raise ConfigError(f"width must be positive, got {width_seconds}")
    times = np.asarray(m.times, dtype=np.float64)
    values = np.asarray(m.values, dtype=np.float64)
    out = np.empty_like(values)
    lo = 0
    # small guard keeps the open left endpoint stable against time roundoff
    for i, t in enumerate(times):
        cutoff = t - width_seconds + 1e-9 * max(abs(t), width_seconds, 1.0)
        while times[lo] <= cutoff:
            lo += 1
        out[i] = values[lo:i + 1].mean()
    return MarkerSeries(kind=m.kind, times=times.copy(), values=out,
                        window_length=m.window_length, stride=m.stride)
