"""Network markers on window+grouping, marker streams, sweeps, and warnings.

CNM(Net) = |DG| * |NDG| / sum of cs(x_j -> x_i) over j in DG, i in NDG,
for a pairwise causal strength cs (Granger or transfer entropy). The
baseline DNB = SD_d * PCC_d / PCC_o uses standard deviations and Pearson
magnitudes instead. Blow-ups are kept finite and plottable: the strength
sum is floored at 1e-12 and marker values are clipped at 1e12.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import causality
from .causality import KIND_GC, KIND_TE_BINNED, KIND_TE_GAUSSIAN
from .errors import (
    CnmError,
    ConfigError,
    DataError,
    DegenerateInput,
    EmptyInput,
)
from .grouping import NodeGrouping, classify_groups
from .series import MultivariateSeries, Window, extract_window

CLIP_CEILING = 1e12
STRENGTH_FLOOR = 1e-12
PCC_FLOOR = 1e-12
SD_FLOOR = 1e-12          # sigma floor in the warning z-score
BATCH_PAIR_THRESHOLD = 16  # above this many pairs the all-pairs GC kernel wins

MARKER_KINDS = ("cnm-gc", "cnm-te", "dnb")
DEFAULT_WINDOW = 30  # samples, sized for 1 Hz snapshot streams
DEFAULT_STRIDE = 1

CS_KINDS = (KIND_GC, KIND_TE_BINNED, KIND_TE_GAUSSIAN)


@dataclass(frozen=True)
class MarkerSeries:
    """One marker value per analysis window, stamped at the window end."""

    kind: str
    times: np.ndarray
    values: np.ndarray
    window_length: int
    stride: int

    def __post_init__(self):
        t = np.asarray(self.times, dtype=np.float64)
        v = np.asarray(self.values, dtype=np.float64)
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)
        if t.shape != v.shape or t.ndim != 1:
            raise DataError("times and values must be 1-D and equally long")
        if len(t) > 1 and not np.all(np.diff(t) > 0):
            raise DataError("marker times must be strictly increasing")
        if len(v) and (not np.all(np.isfinite(v)) or np.min(v) < 0):
            raise DataError("marker values must be finite and >= 0")

    def __len__(self):
        return len(self.times)


@dataclass(frozen=True)
class WarningReport:
    warning_times: tuple
    events: tuple
    per_event_valid: tuple
    accuracy: float


@dataclass(frozen=True)
class SweepPoint:
    """One grid point of a parameter sweep; error is set when the run failed."""

    value: float
    markers: dict = field(default_factory=dict)
    dg_size: int | None = None
    error: str | None = None


def _check_grouping(w: Window, g: NodeGrouping):
    n = w.series.n_channels
    idx = g.dg + g.ndg
    if g.n_channels != n or (idx and (min(idx) < 0 or max(idx) >= n)):
        raise ConfigError(
            f"grouping covers {g.n_channels} channels with indices {sorted(idx)}, "
            f"window has {n}")


def cnm(w: Window, g: NodeGrouping, cs_kind: str = KIND_GC,
        bins: int = causality.DEFAULT_BINS) -> float:
    """Causal network marker of the window under the given grouping."""
    if cs_kind not in CS_KINDS:
        raise ConfigError(f"cs_kind must be one of {CS_KINDS}, got {cs_kind!r}")
    _check_grouping(w, g)
    data = w.data()
    dg, ndg = g.dg, g.ndg
    for i in ndg:
        if np.ptp(data[i]) == 0.0:
            raise DegenerateInput(f"pair (j={dg[0]}, i={i}): constant target channel")
    total = 0.0
    if cs_kind in (KIND_GC, KIND_TE_GAUSSIAN):
        if len(dg) * len(ndg) >= BATCH_PAIR_THRESHOLD:
            G = causality.granger_matrix(data)
            total = float(G[np.ix_(dg, ndg)].sum())
        else:
            centered = data - data.mean(axis=1, keepdims=True)
            from . import _accel
            for j in dg:
                for i in ndg:
                    _, _, _, rss0, rss1 = _accel.gc_fit(centered[j], centered[i])
                    if rss0 > 0.0:
                        total += max(0.0, float(np.log(rss0 / rss1)))
        if cs_kind == KIND_TE_GAUSSIAN:
            total /= 2.0
    else:
        for j in dg:
            for i in ndg:
                try:
                    total += causality.transfer_entropy_binned(
                        data[j], data[i], bins, direction=(j, i)).value
                except CnmError as exc:
                    raise type(exc)(f"pair (j={j}, i={i}): {exc}") from exc
    if total < STRENGTH_FLOOR:
        return CLIP_CEILING
    return min(CLIP_CEILING, len(dg) * len(ndg) / total)


def dnb(w: Window, g: NodeGrouping) -> float:
    """Variance/correlation baseline marker: SD_d * PCC_d / PCC_o."""
    _check_grouping(w, g)
    data = w.data()
    dg, ndg = g.dg, g.ndg
    sd_d = float(data[list(dg)].std(axis=1, ddof=1).mean())

    def abs_pcc(a, b):
        try:
            return abs(causality.pearson_correlation(a, b))
        except DegenerateInput:
            return 0.0  # constant pairs contribute zero correlation

    if len(dg) == 1:
        pcc_d = 1.0
    else:
        acc = [abs_pcc(data[dg[a]], data[dg[b]])
               for a in range(len(dg)) for b in range(a + 1, len(dg))]
        pcc_d = float(np.mean(acc))
    acc = [abs_pcc(data[j], data[i]) for j in dg for i in ndg]
    pcc_o = max(float(np.mean(acc)), PCC_FLOOR)
    return min(CLIP_CEILING, sd_d * pcc_d / pcc_o)


def _window_value(w: Window, g: NodeGrouping, kind: str, bins: int) -> float:
    if kind == "cnm-gc":
        return cnm(w, g, KIND_GC)
    if kind == "cnm-te":
        return cnm(w, g, KIND_TE_BINNED, bins)
    return dnb(w, g)


def marker_stream(s: MultivariateSeries, window_length: int = DEFAULT_WINDOW,
                  stride: int = DEFAULT_STRIDE, kind: str = "cnm-gc",
                  grouping_mode: str = "per-window",
                  grouping: NodeGrouping | None = None,
                  bins: int = causality.DEFAULT_BINS) -> MarkerSeries:
    """Sliding-window marker series; a failed window leaves a gap, not an abort.

    grouping_mode 'per-window' reclassifies every window; 'frozen' classifies
    the first window once and reuses it. An explicit grouping overrides both.
    """
    if kind not in MARKER_KINDS:
        raise ConfigError(f"marker kind must be one of {MARKER_KINDS}, got {kind!r}")
    if grouping_mode not in ("per-window", "frozen"):
        raise ConfigError(f"grouping_mode must be per-window or frozen, got {grouping_mode!r}")
    if not 3 <= window_length <= s.n_samples:
        raise ConfigError(
            f"window_length must be in [3, {s.n_samples}], got {window_length}")
    if stride < 1:
        raise ConfigError(f"stride must be >= 1, got {stride}")
    frozen = grouping
    times, values = [], []
    for start in range(0, s.n_samples - window_length + 1, stride):
        w = extract_window(s, start, window_length)
        try:
            if frozen is None and grouping_mode == "frozen":
                frozen = classify_groups(w)
            g = frozen if frozen is not None else classify_groups(w)
            value = _window_value(w, g, kind, bins)
        except CnmError:
            continue
        times.append(w.end_time)
        values.append(value)
    return MarkerSeries(kind=kind, times=np.asarray(times), values=np.asarray(values),
                        window_length=window_length, stride=stride)


def _default_tail(n_samples: int) -> int:
    return min(max(n_samples // 4, 30), 5000)


def _eval_sweep_point(args):
    model, param, value, config, seed, kinds, tail, bins = args
    from .models import get_model  # deferred so worker processes import lazily

    _, simulate = get_model(model)
    try:
        cfg = replace(config, **{param: value, "seed": seed})
        series = simulate(cfg)
        n = series.n_samples
        tail_n = tail if tail is not None else _default_tail(n)
        tail_n = min(max(tail_n, 3), n)
        w = extract_window(series, n - tail_n, tail_n)
        g = classify_groups(w)
        markers = {kind: _window_value(w, g, kind, bins) for kind in kinds}
        return SweepPoint(value=value, markers=markers, dg_size=len(g.dg))
    except CnmError as exc:
        return SweepPoint(value=value, error=f"{type(exc).__name__}: {exc}")


def marker_sweep(model: str, param: str, values, kinds=("cnm-gc",),
                 config=None, seed: int = 0, tail: int | None = None,
                 bins: int = causality.DEFAULT_BINS, jobs: int = 1):
    """Stationary-tail marker vs parameter; per-point seed = seed + grid index.

    Each grid point simulates the model with `param` replaced, evaluates all
    requested marker kinds on the tail window, and never aborts the grid:
    failures are recorded on their SweepPoint.
    """
    from .models import get_model

    config_cls, _ = get_model(model)
    if config is None:
        config = config_cls()
    values = [float(v) for v in values]
    if not values:
        raise ConfigError("empty parameter grid")
    for kind in kinds:
        if kind not in MARKER_KINDS:
            raise ConfigError(f"marker kind must be one of {MARKER_KINDS}, got {kind!r}")
    if not hasattr(config, param):
        raise ConfigError(f"model {model!r} has no parameter {param!r}")
    tasks = [(model, param, v, config, seed + k, tuple(kinds), tail, bins)
             for k, v in enumerate(values)]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_eval_sweep_point, tasks))
    return [_eval_sweep_point(t) for t in tasks]


def detect_warning(m: MarkerSeries, baseline_seconds: float,
                   kappa: float = 3.0) -> np.ndarray:
    """Trailing z-score rule: warn at t when value > mu + kappa * sigma of the
    baseline window ending just before t; warnings within one baseline window
    of the previous one merge into a single event. Points earlier than one
    full baseline after the stream start are burn-in and never score: a
    two-point fragment is not a baseline and its sigma is hair-trigger."""
    if len(m) == 0:
        raise EmptyInput("empty marker series")
    if baseline_seconds <= 0:
        raise ConfigError(f"baseline must be positive, got {baseline_seconds}")
    span = float(m.times[-1] - m.times[0])
    if baseline_seconds >= span:
        raise ConfigError(
            f"baseline {baseline_seconds} s must be shorter than the series span {span} s")
    if kappa <= 0:
        raise ConfigError(f"kappa must be positive, got {kappa}")
    times, values = m.times, m.values
    eps = 1e-9 * max(abs(float(times[0])), baseline_seconds, 1.0)
    crossings = []
    lo = 0
    for i in range(len(m)):
        t = times[i]
        if t - times[0] < baseline_seconds - eps:
            continue
        while times[lo] < t - baseline_seconds:
            lo += 1
        base = values[lo:i]  # ends before t
        if len(base) < 2:
            continue
        mu = float(base.mean())
        sigma = max(float(base.std()), SD_FLOOR)
        if values[i] > mu + kappa * sigma:
            crossings.append(float(t))
    merged = []
    for t in crossings:
        if not merged or t - merged[-1] > baseline_seconds:
            merged.append(t)
    return np.asarray(merged)


def _check_events(events):
    ev = [(float(a), float(b)) for a, b in events]
    if not ev:
        raise EmptyInput("no events")
    for onset, end in ev:
        if end < onset:
            raise DataError(f"event ends before it starts: ({onset}, {end})")
    for k in range(1, len(ev)):
        if ev[k][0] < ev[k - 1][1]:
            raise DataError(f"events overlap or are unsorted near {ev[k]}")
    return ev


def _valid_flags(warning_times, events, lead_window_seconds):
    w = np.sort(np.asarray(list(warning_times), dtype=np.float64))
    return [bool(np.any((w >= onset - lead_window_seconds) & (w <= onset)))
            for onset, _ in events], w


def evaluate_warnings(warning_times, events, lead_window_seconds: float) -> WarningReport:
    """An event is caught iff some warning falls in [onset - lead, onset]."""
    if lead_window_seconds < 0:
        raise ConfigError(f"lead window must be >= 0, got {lead_window_seconds}")
    ev = _check_events(events)
    flags, w = _valid_flags(warning_times, ev, lead_window_seconds)
    return WarningReport(warning_times=tuple(w), events=tuple(ev),
                         per_event_valid=tuple(flags),
                         accuracy=float(np.mean(flags)))


def evaluate_combined(warning_sets: dict, events, lead_window_seconds: float,
                      mode: str = "any") -> WarningReport:
    """Score a combination of marker streams: 'any' ORs the per-event validity
    of the members, 'all' ANDs it."""
    if mode not in ("any", "all"):
        raise ConfigError(f"mode must be any or all, got {mode!r}")
    if not warning_sets:
        raise EmptyInput("no marker streams to combine")
    if lead_window_seconds < 0:
        raise ConfigError(f"lead window must be >= 0, got {lead_window_seconds}")
    ev = _check_events(events)
    member_flags = []
    all_times = []
    for times in warning_sets.values():
        flags, w = _valid_flags(times, ev, lead_window_seconds)
        member_flags.append(flags)
        all_times.extend(w.tolist())
    combine = any if mode == "any" else all
    flags = [combine(col) for col in zip(*member_flags)]
    return WarningReport(warning_times=tuple(sorted(all_times)), events=tuple(ev),
                         per_event_valid=tuple(flags),
                         accuracy=float(np.mean(flags)))
