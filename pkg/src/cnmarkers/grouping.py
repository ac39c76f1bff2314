"""Channel grouping: dominant group (DG) vs non-dominant group (NDG).

The split clusters per-node variances with 1-D 2-means. In one dimension
the optimal clusters are contiguous in sorted order, so the exact optimum
is found by scanning the n-1 contiguous split points; this is what Lloyd
iterations from min/max seeds converge to on clean data, without their
local-optimum failure modes.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DegenerateInput, ParseError
from .series import Window, node_variances


@dataclass(frozen=True)
class NodeGrouping:
    """Disjoint channel index sets; dg carries the larger mean variance."""

    dg: tuple
    ndg: tuple
    variances: np.ndarray | None = None

    def __post_init__(self):
        dg = tuple(int(i) for i in self.dg)
        ndg = tuple(int(i) for i in self.ndg)
        object.__setattr__(self, "dg", dg)
        object.__setattr__(self, "ndg", ndg)
        if not dg or not ndg:
            raise DegenerateInput("both groups must be non-empty")
        if set(dg) & set(ndg):
            raise DegenerateInput("groups overlap")
        if self.variances is not None:
            var = np.asarray(self.variances, dtype=np.float64)
            object.__setattr__(self, "variances", var)
            if not np.mean(var[list(dg)]) > np.mean(var[list(ndg)]):
                raise DegenerateInput("dominant group does not dominate mean variance")

    @property
    def n_channels(self) -> int:
        return len(self.dg) + len(self.ndg)


def kmeans_split(values):
    """Exact 1-D 2-means: returns (high indices, low indices), both sorted.

    Scans all contiguous splits of the sorted values for minimal within-
    cluster sum of squares; on SSE ties the later split wins, which sends
    tied boundary points to the low cluster.
    """
    v = np.asarray(values, dtype=np.float64)
    if v.ndim != 1 or len(v) < 2:
        raise DegenerateInput(f"need >= 2 values, got shape {v.shape}")
    if np.ptp(v) == 0.0:
        raise DegenerateInput("all values identical; no two-cluster split exists")
    order = np.argsort(v, kind="stable")
    sv = v[order]
    ps = np.concatenate(([0.0], np.cumsum(sv)))
    ps2 = np.concatenate(([0.0], np.cumsum(sv * sv)))
    n = len(sv)
    best_i, best_sse = 1, np.inf
    for i in range(1, n):
        sse_lo = ps2[i] - ps[i] ** 2 / i
        sse_hi = (ps2[n] - ps2[i]) - (ps[n] - ps[i]) ** 2 / (n - i)
        sse = sse_lo + sse_hi
        if sse <= best_sse:
            best_sse, best_i = sse, i
    low = np.sort(order[:best_i])
    high = np.sort(order[best_i:])
    return tuple(int(i) for i in high), tuple(int(i) for i in low)


def classify_groups(w: Window) -> NodeGrouping:
    """Group the window's channels by variance; DG is the high cluster."""
    if w.series.n_channels < 2:
        raise DegenerateInput("grouping needs >= 2 channels")
    var = node_variances(w)
    high, low = kmeans_split(var)
    return NodeGrouping(dg=high, ndg=low, variances=var)


def parse_grouping_file(path, channel_names) -> NodeGrouping:
    """Fixed grouping override: one 'DG: name' or 'NDG: name' line per channel."""
    names = list(channel_names)
    index = {name: i for i, name in enumerate(names)}
    dg, ndg = [], []
    seen = set()
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            head, sep, name = line.partition(":")
            tag = head.strip().upper()
            name = name.strip()
            if not sep or tag not in ("DG", "NDG") or not name:
                raise ParseError(f"{path}: line {lineno}: expected 'DG: name' or 'NDG: name'")
            if name not in index:
                raise ConfigError(f"{path}: line {lineno}: unknown channel {name!r}")
            if name in seen:
                raise ConfigError(f"{path}: line {lineno}: channel {name!r} listed twice")
            seen.add(name)
            (dg if tag == "DG" else ndg).append(index[name])
    missing = [n for n in names if n not in seen]
    if missing:
        raise ConfigError(f"{path}: channels not assigned: {', '.join(missing)}")
    if not dg or not ndg:
        raise ConfigError(f"{path}: both DG and NDG must be non-empty")
    return NodeGrouping(dg=tuple(sorted(dg)), ndg=tuple(sorted(ndg)))
