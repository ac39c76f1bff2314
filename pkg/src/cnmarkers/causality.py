"""Pairwise directed causal-strength estimators and Pearson correlation.

All estimators are lag-1 and bivariate. The regressions carry no intercept;
sequences are mean-centered before fitting, which makes the missing
intercept harmless and the Granger statistic invariant under per-sequence
affine maps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _accel
from .errors import ConfigError, DegenerateInput, InsufficientData

DEFAULT_BINS = 8
MAX_BINS = 64  # histogram memory guard: bins**3 cells

KIND_GC = "gc"
KIND_TE_BINNED = "te-binned"
KIND_TE_GAUSSIAN = "te-gaussian"


@dataclass(frozen=True)
class GcFit:
    """Lag-1 least-squares fit pair: restricted (a) and full (b, c) models."""

    a: float
    b: float
    c: float
    rss0: float
    rss1: float
    n_eff: int


@dataclass(frozen=True)
class CausalStrength:
    value: float
    kind: str
    direction: tuple | None = None  # (source index, target index) when known
    fit: GcFit | None = None


def _as_pair(source, target, min_len: int):
    x = np.ascontiguousarray(source, dtype=np.float64)
    y = np.ascontiguousarray(target, dtype=np.float64)
    if x.ndim != 1 or y.ndim != 1:
        raise DegenerateInput("estimators expect 1-D sequences")
    if len(x) != len(y):
        raise DegenerateInput(f"length mismatch: {len(x)} vs {len(y)}")
    if len(y) < min_len:
        raise InsufficientData(f"need >= {min_len} samples, got {len(y)}")
    return x, y


def pearson_correlation(x, y) -> float:
    """Standard PCC, clamped to [-1, 1]; constant input is undefined here."""
    xa, ya = _as_pair(x, y, 2)
    xc = xa - xa.mean()
    yc = ya - ya.mean()
    sxx = float(xc @ xc)
    syy = float(yc @ yc)
    if sxx == 0.0 or syy == 0.0:
        raise DegenerateInput("constant sequence; correlation undefined")
    r = float(xc @ yc) / math.sqrt(sxx * syy)
    return min(1.0, max(-1.0, r))


def granger_fit(source, target) -> GcFit:
    """Fit both lag-1 models on mean-centered copies of the pair."""
    xa, ya = _as_pair(source, target, 4)
    if np.ptp(ya) == 0.0:
        raise DegenerateInput("constant target; Granger fit undefined")
    xc = xa - xa.mean()
    yc = ya - ya.mean()
    a, b, c, rss0, rss1 = _accel.gc_fit(xc, yc)
    return GcFit(a=a, b=b, c=c, rss0=rss0, rss1=rss1, n_eff=len(ya) - 1)


def _gc_value(fit: GcFit) -> float:
    if fit.rss0 <= 0.0:
        return 0.0
    return max(0.0, math.log(fit.rss0 / fit.rss1))


def granger_causality(source, target, direction=None) -> CausalStrength:
    """ln(rss0/rss1) of the nested lag-1 fits; >= 0, in nats."""
    fit = granger_fit(source, target)
    return CausalStrength(value=_gc_value(fit), kind=KIND_GC,
                          direction=direction, fit=fit)


def granger_matrix(data) -> np.ndarray:
    """All ordered pairs at once: out[j, i] = GC(channel j -> channel i).

    Constant channels produce zero rows/columns instead of raising; callers
    that need the strict single-pair contract should use granger_causality.
    """
    X = np.ascontiguousarray(data, dtype=np.float64)
    if X.ndim != 2 or X.shape[0] < 2:
        raise DegenerateInput("granger_matrix expects a channels x samples matrix, >= 2 channels")
    if X.shape[1] < 4:
        raise InsufficientData(f"need >= 4 samples, got {X.shape[1]}")
    return _accel.gc_matrix(X)


def transfer_entropy_binned(source, target, bins: int = DEFAULT_BINS,
                            direction=None) -> CausalStrength:
    """Plug-in transfer entropy on equal-width bins over each sequence's range."""
    if not isinstance(bins, (int, np.integer)) or isinstance(bins, bool):
        raise ConfigError(f"bins must be an integer, got {bins!r}")
    if bins < 2 or bins > MAX_BINS:
        raise ConfigError(f"bins must be in [2, {MAX_BINS}], got {bins}")
    xa, ya = _as_pair(source, target, 4)
    if np.ptp(xa) == 0 or np.ptp(ya) == 0:
        # a constant carries no information; skip the histogram noise floor
        value = 0.0
    else:
        value = _accel.te_binned(xa, ya, int(bins))
    return CausalStrength(value=value, kind=KIND_TE_BINNED, direction=direction)


def transfer_entropy_gaussian(source, target, direction=None) -> CausalStrength:
    """Gaussian-process identity TE = GC/2, exact by construction."""
    fit = granger_fit(source, target)
    return CausalStrength(value=_gc_value(fit) / 2.0, kind=KIND_TE_GAUSSIAN,
                          direction=direction, fit=fit)
