"""Prey-predator reaction-diffusion dynamics on a fixed 11x11 lattice.

Explicit finite differences with a conservative 5-point Laplacian and
zero-flux (mirror-edge) boundaries. The carrying capacity K is the control
parameter: short-range activation with long-range inhibition (D1 << D2)
destabilizes the uniform equilibrium into spatial patterns as K crosses
the bifurcation near 2. Channels are per-cell 1 Hz snapshots, each the
mean of the preceding second of integration.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..errors import ConfigError, DivergenceError
from ..series import MultivariateSeries

GRID_N = 11           # lattice is fixed at 11x11 cells
SNAPSHOT_SECONDS = 1.0


@dataclass(frozen=True)
class TuringConfig:
    K: float = 2.0
    D1: float = 0.01      # prey diffusion
    D2: float = 1.0       # predator diffusion
    r: float = 0.5
    eps: float = 1.0
    beta: float = 0.6
    B: float = 0.4
    eta: float = 0.25
    omega: float = 0.4
    h: float = 1.0        # lattice spacing
    dt: float = 0.05
    seconds: int = 800
    D_noise: float = 1e-5
    seed: int = 0
    field: str = "H"      # which field(s) become channels: H | P | both

    def validate(self):
        for name in ("K", "r", "eps", "beta", "B", "eta", "omega", "h"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if self.D1 < 0 or self.D2 < 0:
            raise ConfigError("diffusion coefficients must be >= 0")
        if self.D_noise < 0:
            raise ConfigError(f"D_noise must be >= 0, got {self.D_noise}")
        if self.seconds < 1:
            raise ConfigError(f"seconds must be >= 1, got {self.seconds}")
        if self.dt <= 0:
            raise ConfigError(f"dt must be positive, got {self.dt}")
        dmax = max(self.D1, self.D2)
        if dmax > 0 and self.dt > self.h ** 2 / (4.0 * dmax):
            raise ConfigError(
                f"explicit scheme unstable: need dt <= h^2/(4*max(D1,D2)) = "
                f"{self.h ** 2 / (4.0 * dmax):.4g}, got {self.dt}")
        per = round(SNAPSHOT_SECONDS / self.dt)
        if per < 1 or abs(per * self.dt - SNAPSHOT_SECONDS) > 1e-9:
            raise ConfigError(f"dt = {self.dt} must divide the {SNAPSHOT_SECONDS} s snapshot window")
        if self.field not in ("H", "P", "both"):
            raise ConfigError(f"field must be H, P or both, got {self.field!r}")


def turing_equilibrium(cfg: TuringConfig) -> tuple:
    """Positive spatially uniform equilibrium (H*, P*) of the reaction part."""
    r, eps, beta, B, eta, omega, K = (cfg.r, cfg.eps, cfg.beta, cfg.B,
                                      cfg.eta, cfg.omega, cfg.K)
    # from the predator nullcline, beta*H/(B+H+omega*P) = eta/eps; substituting
    # the prey nullcline P = eps*r*(1-H/K)*H/eta gives a quadratic in H
    a2 = omega * eps * r / K
    a1 = eps * beta - eta - omega * eps * r
    a0 = -eta * B
    disc = a1 * a1 - 4.0 * a2 * a0
    if disc < 0:
        raise ConfigError("no positive uniform equilibrium for these parameters")
    Hs = (-a1 + math.sqrt(disc)) / (2.0 * a2)
    if Hs <= 0:
        raise ConfigError("no positive uniform equilibrium for these parameters")
    Ps = (eps * beta * Hs - eta * B - eta * Hs) / (eta * omega)
    if Ps <= 0:
        raise ConfigError("uniform equilibrium has no predators for these parameters")
    return float(Hs), float(Ps)


def laplacian5(F: np.ndarray) -> np.ndarray:
    """5-point Laplacian with mirror edges (zero-flux), unscaled by spacing."""
    out = -4.0 * F
    out[1:, :] += F[:-1, :]
    out[0, :] += F[0, :]
    out[:-1, :] += F[1:, :]
    out[-1, :] += F[-1, :]
    out[:, 1:] += F[:, :-1]
    out[:, 0] += F[:, 0]
    out[:, :-1] += F[:, 1:]
    out[:, -1] += F[:, -1]
    return out


def _channel_names(field: str) -> tuple:
    names = []
    fields = ("H", "P") if field == "both" else (field,)
    for f in fields:
        names.extend(f"{f}_{r}_{c}" for r in range(GRID_N) for c in range(GRID_N))
    return tuple(names)


def simulate_turing(cfg: TuringConfig) -> MultivariateSeries:
    """Integrate from the uniform equilibrium under weak additive noise;
    one snapshot per second, each cell averaging the preceding second."""
    cfg.validate()
    r, eps, beta, B, eta, omega = cfg.r, cfg.eps, cfg.beta, cfg.B, cfg.eta, cfg.omega
    K, D1, D2, h, dt = cfg.K, cfg.D1, cfg.D2, cfg.h, cfg.dt
    per = round(SNAPSHOT_SECONDS / dt)
    Hs, Ps = turing_equilibrium(cfg)
    rng = np.random.default_rng(cfg.seed)
    amp = math.sqrt(2.0 * cfg.D_noise * dt)
    n = GRID_N
    Hf = np.full((n, n), Hs)
    Pf = np.full((n, n), Ps)
    want_h = cfg.field in ("H", "both")
    want_p = cfg.field in ("P", "both")
    cells = n * n
    width = cells * (want_h + want_p)
    snaps = np.empty((cfg.seconds, width))
    accH = np.zeros((n, n))
    accP = np.zeros((n, n))
    h2 = h * h
    for sct in range(cfg.seconds):
        accH[:] = 0.0
        accP[:] = 0.0
        for _ in range(per):
            pred = beta * Hf * Pf / (B + Hf + omega * Pf)
            dH = r * (1 - Hf / K) * Hf - pred + D1 * laplacian5(Hf) / h2
            dP = eps * pred - eta * Pf + D2 * laplacian5(Pf) / h2
            Hf = Hf + dH * dt + amp * rng.standard_normal((n, n))
            Pf = Pf + dP * dt + amp * rng.standard_normal((n, n))
            np.clip(Hf, 0.0, None, out=Hf)
            np.clip(Pf, 0.0, None, out=Pf)
            accH += Hf
            accP += Pf
        if not (np.all(np.isfinite(Hf)) and np.all(np.isfinite(Pf))):
            raise DivergenceError(f"non-finite field in second {sct}")
        parts = []
        if want_h:
            parts.append((accH / per).ravel())
        if want_p:
            parts.append((accP / per).ravel())
        snaps[sct] = np.concatenate(parts) if len(parts) > 1 else parts[0]
    return MultivariateSeries(_channel_names(cfg.field), SNAPSHOT_SECONDS, snaps.T)
