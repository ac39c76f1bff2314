"""Linear mixed-AR oracle for the directed-causality vanishing analysis.

Latent modes follow independent AR(1) recursions y_{t+1} = lambda_k y_t +
noise; the observed channels are X = S Y for an invertible mixing S. The
default S zeroes the dominant mode's loading on channels 3 and 4, so
channel pairs realize all four analytic regimes of Granger strength as
lambda_max -> 1: vanishing (dominant-loaded source into unloaded target),
bounded (both directions involving the unloaded pair), and invariant
(pairs decoupled from the dominant mode).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.signal import lfilter

from ..errors import ConfigError
from ..series import MultivariateSeries

# rows 3 and 4 carry no dominant-mode loading (first column zero)
S_FIX = np.array([
    [1.0, 0.5, 0.3, 0.2],
    [0.8, -0.4, 0.25, -0.3],
    [0.0, 0.9, -0.5, 0.4],
    [0.0, 0.6, 0.7, -0.5],
])

MAX_MIXING_COND = 1e8


@dataclass(frozen=True)
class LinearOracleConfig:
    lambdas: tuple = (0.9, 0.5, 0.3, 0.2)   # lambdas[0] is the dominant mode
    noise_sds: tuple = (1.0, 1.0, 1.0, 1.0)
    steps: int = 200000
    seed: int = 0
    mixing: np.ndarray | None = None        # defaults to S_FIX for 4 modes

    def resolved_mixing(self) -> np.ndarray:
        if self.mixing is not None:
            return np.asarray(self.mixing, dtype=np.float64)
        if len(self.lambdas) == 4:
            return S_FIX
        raise ConfigError("provide a mixing matrix for other than 4 modes")

    def validate(self):
        lams = np.asarray(self.lambdas, dtype=np.float64)
        if lams.ndim != 1 or len(lams) < 2:
            raise ConfigError("need >= 2 modes")
        if np.max(np.abs(lams)) >= 1.0:
            raise ConfigError(f"all |lambda| must be < 1, got {self.lambdas}")
        if len(self.noise_sds) != len(lams):
            raise ConfigError(
                f"{len(self.noise_sds)} noise sds for {len(lams)} modes")
        if min(self.noise_sds) <= 0:
            raise ConfigError("noise sds must be positive")
        if self.steps < 2:
            raise ConfigError(f"steps must be >= 2, got {self.steps}")
        S = self.resolved_mixing()
        n = len(lams)
        if S.shape != (n, n):
            raise ConfigError(f"mixing must be {n}x{n}, got {S.shape}")
        if np.linalg.cond(S) >= MAX_MIXING_COND:
            raise ConfigError("mixing matrix is ill-conditioned")


def simulate_linear_oracle(cfg: LinearOracleConfig) -> MultivariateSeries:
    """Stationary start: y_0 ~ N(0, sd^2/(1-lambda^2)) per mode, then the
    AR recursions; channels are the mixed X = S Y."""
    cfg.validate()
    lams = np.asarray(cfg.lambdas, dtype=np.float64)
    n = len(lams)
    S = cfg.resolved_mixing()
    rng = np.random.default_rng(cfg.seed)
    eps = rng.standard_normal((n, cfg.steps))
    Y = np.empty((n, cfg.steps))
    for k in range(n):
        y0 = cfg.noise_sds[k] / math.sqrt(1.0 - lams[k] ** 2) * rng.standard_normal()
        drive = cfg.noise_sds[k] * eps[k]
        Y[k] = lfilter([1.0], [1.0, -lams[k]], drive, zi=np.array([lams[k] * y0]))[0]
    X = S @ Y
    names = tuple(f"x{k + 1}" for k in range(n))
    return MultivariateSeries(names, 1.0, X)
