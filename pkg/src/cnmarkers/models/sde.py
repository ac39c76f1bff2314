"""Seedable Euler-Maruyama integrator for additive-noise SDEs.

Noise convention: the white-noise term has spectral density 2D, realized
discretely as independent normal increments of variance 2*D*dt per
component, i.e. x_{t+1} = x_t + drift(x_t)*dt + sqrt(2*D*dt)*zeta_t.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, DivergenceError
from ..series import MultivariateSeries


@dataclass(frozen=True)
class SdeSpec:
    drift: object                     # state vector -> rate-of-change vector
    x0: tuple
    dt: float
    steps: int
    noise_amplitude: float = 0.0      # the D in 2*D*dt
    seed: int = 0
    channel_names: tuple | None = None

    def validate(self):
        if not (self.dt > 0 and math.isfinite(self.dt)):
            raise ConfigError(f"dt must be positive, got {self.dt}")
        if self.steps < 1:
            raise ConfigError(f"steps must be >= 1, got {self.steps}")
        if self.noise_amplitude < 0:
            raise ConfigError(f"noise amplitude must be >= 0, got {self.noise_amplitude}")
        if len(self.x0) < 1:
            raise ConfigError("empty initial state")


def euler_maruyama(spec: SdeSpec) -> MultivariateSeries:
    """Integrate spec.steps steps; the output includes the initial state,
    so the series has steps+1 samples."""
    spec.validate()
    x = np.asarray(spec.x0, dtype=np.float64).copy()
    n = len(x)
    rng = np.random.default_rng(spec.seed)
    amp = math.sqrt(2.0 * spec.noise_amplitude * spec.dt)
    out = np.empty((n, spec.steps + 1))
    out[:, 0] = x
    for t in range(spec.steps):
        d = np.asarray(spec.drift(x), dtype=np.float64)
        if not np.all(np.isfinite(d)):
            raise DivergenceError(f"non-finite drift at step {t}")
        x = x + d * spec.dt + amp * rng.standard_normal(n)
        if not np.all(np.isfinite(x)):
            raise DivergenceError(f"non-finite state at step {t}")
        out[:, t + 1] = x
    names = spec.channel_names or tuple(f"x{k + 1}" for k in range(n))
    return MultivariateSeries(tuple(names), spec.dt, out)
