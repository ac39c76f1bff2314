"""Mutualistic two-guild network with dimension-reduction analysis.

A bipartite incidence matrix M couples n pollinators to m plants. The
one-mode projection A drives logistic-plus-interaction dynamics whose
mean-field reduction collapses the n-dimensional system onto the scalars
x_eff and beta_eff; the resilience curve beta(x) then predicts the fold
where the low-population branch loses stability. A global weight
`debuff` in (0, 1] rescales all interactions and is the control knob that
moves the system toward that fold.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from ..errors import (
    ConfigError,
    DegenerateNetwork,
    DivergenceError,
    NoFoldError,
    ProjectionError,
)
from ..series import MultivariateSeries

log = logging.getLogger(__name__)

# fold search bracket: the low branch of the calibrated defaults lives
# well inside [0.02, 4.0]
FOLD_X_LO = 0.02
FOLD_X_HI = 4.0
FOLD_GRID = 4000
FOLD_X_TOL = 1e-9


@dataclass(frozen=True)
class MutualisticConfig:
    n: int = 20
    m: int = 15
    density: float = 0.25
    network_seed: int = 0
    M: np.ndarray | None = None   # explicit incidence matrix overrides the recipe
    B: float = 0.1
    C: float = 1.0
    K: float = 5.0
    D: float = 5.0
    E: float = 0.9
    H: float = 0.1
    s: float = 1.0
    debuff: float = 0.3
    D_noise: float = 1e-4
    dt: float = 0.01
    steps: int = 20000
    seed: int = 0

    def validate(self):
        if not (self.K > self.C > 0):
            raise ConfigError(f"need K > C > 0, got K={self.K}, C={self.C}")
        for name in ("B", "D", "E", "H", "s"):
            if getattr(self, name) <= 0:
                raise ConfigError(f"{name} must be positive, got {getattr(self, name)}")
        if not 0 < self.debuff <= 1:
            raise ConfigError(f"debuff must be in (0, 1], got {self.debuff}")
        if self.M is None:
            if self.n < 1 or self.m < 1:
                raise ConfigError(f"need n, m >= 1, got n={self.n}, m={self.m}")
            if not 0 < self.density <= 1:
                raise ConfigError(f"density must be in (0, 1], got {self.density}")
        else:
            M = np.asarray(self.M, dtype=np.float64)
            if M.ndim != 2 or M.shape != (self.n, self.m):
                raise ConfigError(f"M must be {self.n}x{self.m}, got {M.shape}")
            if np.min(M) < 0:
                raise ConfigError("M must be non-negative")
        if self.D_noise < 0:
            raise ConfigError(f"D_noise must be >= 0, got {self.D_noise}")
        if self.dt <= 0 or self.steps < 1:
            raise ConfigError(f"need dt > 0 and steps >= 1, got dt={self.dt}, steps={self.steps}")


def random_bipartite_matrix(n: int, m: int, density: float, seed: int) -> np.ndarray:
    """0/1 incidence matrix at the given density; empty rows/columns get one
    partner so both projections exist."""
    rng = np.random.default_rng(seed)
    M = (rng.random((n, m)) < density).astype(float)
    for r in range(n):
        if M[r].sum() == 0:
            M[r, rng.integers(m)] = 1.0
    for c in range(m):
        if M[:, c].sum() == 0:
            M[rng.integers(n), c] = 1.0
    return M


def interaction_matrix(cfg: MutualisticConfig) -> np.ndarray:
    if cfg.M is not None:
        return np.asarray(cfg.M, dtype=np.float64)
    return random_bipartite_matrix(cfg.n, cfg.m, cfg.density, cfg.network_seed)


def project_bipartite(M) -> tuple:
    """Weighted one-mode projections: A couples rows via shared columns with
    column-degree normalization, Abar couples columns via row-degree."""
    M = np.asarray(M, dtype=np.float64)
    col = M.sum(axis=0)
    row = M.sum(axis=1)
    if np.any(col <= 0):
        raise ProjectionError(f"column {int(np.argmin(col))} is all-zero")
    if np.any(row <= 0):
        raise ProjectionError(f"row {int(np.argmin(row))} is all-zero")
    A = (M / col) @ M.T
    Abar = (M / row[:, None]).T @ M
    return A, Abar


def effective_reduction(A, x) -> tuple:
    """Mean-field scalars: x_eff = 1'Ax / 1'A1 and beta_eff = 1'A^2 1 / 1'A1."""
    A = np.asarray(A, dtype=np.float64)
    x = np.asarray(x, dtype=np.float64)
    one = np.ones(A.shape[0])
    den = float(one @ A @ one)
    if den <= 0:
        raise DegenerateNetwork("zero interaction mass: 1'A1 <= 0")
    x_eff = float(one @ A @ x) / den
    beta_eff = float(one @ A @ A @ one) / den
    return x_eff, beta_eff


def resilience_beta(x, cfg: MutualisticConfig):
    """Explicit solution beta(x) of f(beta, x) = 0 for the reduced dynamics."""
    B, C, K, D, E, H = cfg.B, cfg.C, cfg.K, cfg.D, cfg.E, cfg.H
    return -(B + x * (1 - x / K) * (x / C - 1)) * (D + (E + H) * x) / (x * x)


def reduced_drift(beta, x, cfg: MutualisticConfig):
    """f(beta, x): growth of the reduced scalar state."""
    B, C, K, D, E, H = cfg.B, cfg.C, cfg.K, cfg.D, cfg.E, cfg.H
    return B + x * (1 - x / K) * (x / C - 1) + beta * x * x / (D + (E + H) * x)


def resilience_curve(cfg: MutualisticConfig, x_grid):
    """(x, beta(x)) pairs over the grid; x = 0 points are excluded."""
    out = []
    skipped = 0
    for x in np.asarray(x_grid, dtype=np.float64):
        if x == 0.0:
            skipped += 1
            continue
        out.append((float(x), float(resilience_beta(x, cfg))))
    if skipped:
        log.warning("resilience_curve: skipped %d grid point(s) at x = 0", skipped)
    return out


def _dbeta_dx(x: float, cfg: MutualisticConfig, h: float = 1e-7) -> float:
    return (resilience_beta(x + h, cfg) - resilience_beta(x - h, cfg)) / (2 * h)


def find_fold(cfg: MutualisticConfig) -> tuple:
    """Lower-branch fold (x_c, beta_c) where dbeta/dx crosses zero."""
    xs = np.linspace(FOLD_X_LO, FOLD_X_HI, FOLD_GRID)
    d = np.array([_dbeta_dx(x, cfg) for x in xs])
    for i in range(len(xs) - 1):
        if d[i] > 0 and d[i + 1] <= 0:
            a, b = xs[i], xs[i + 1]
            for _ in range(200):
                if b - a < FOLD_X_TOL:
                    break
                mid = 0.5 * (a + b)
                if _dbeta_dx(mid, cfg) > 0:
                    a = mid
                else:
                    b = mid
            xc = 0.5 * (a + b)
            return xc, float(resilience_beta(xc, cfg))
    raise NoFoldError("dbeta/dx has no sign change on the low branch (monostable parameters)")


def low_branch_state(cfg: MutualisticConfig, beta_eff: float):
    """x on the low branch with beta(x) = beta_eff, or None past the fold."""
    xc, bc = find_fold(cfg)
    if beta_eff >= bc:
        return None
    a, b = FOLD_X_LO, xc
    fa = resilience_beta(a, cfg) - beta_eff
    for _ in range(200):
        if b - a < 1e-12:
            break
        mid = 0.5 * (a + b)
        fm = resilience_beta(mid, cfg) - beta_eff
        if (fa < 0) == (fm < 0):
            a, fa = mid, fm
        else:
            b = mid
    return 0.5 * (a + b)


def simulate_mutualistic(cfg: MutualisticConfig) -> MultivariateSeries:
    """Euler-Maruyama on the pollinator guild with interactions debuffed
    globally; starts on the low branch (fold state if the low branch is
    gone). Populations are clamped at zero from below; clamps are counted
    and logged."""
    cfg.validate()
    M = interaction_matrix(cfg)
    A, _ = project_bipartite(M)
    Ad = cfg.debuff * A
    n = A.shape[0]
    _, beta_eff = effective_reduction(Ad, np.ones(n))
    x_low = low_branch_state(cfg, beta_eff)
    if x_low is None:
        x_low, _ = find_fold(cfg)
    rng = np.random.default_rng(cfg.seed)
    amp = math.sqrt(2.0 * cfg.D_noise * cfg.dt)
    B, C, K, D, E, H, s = cfg.B, cfg.C, cfg.K, cfg.D, cfg.E, cfg.H, cfg.s
    out = np.empty((n, cfg.steps + 1))
    x = np.full(n, x_low)
    out[:, 0] = x
    clamped = 0
    for t in range(cfg.steps):
        inter = (Ad * (x[:, None] * x[None, :])
                 / (D + E * x[:, None] + H * x[None, :])).sum(axis=1)
        drift = s * (B + x * (1 - x / K) * (x / C - 1) + inter)
        x = x + drift * cfg.dt + amp * rng.standard_normal(n)
        neg = x < 0.0
        if np.any(neg):
            clamped += int(neg.sum())
            x[neg] = 0.0
        if not np.all(np.isfinite(x)):
            raise DivergenceError(f"non-finite population at step {t}")
        out[:, t + 1] = x
    if clamped:
        log.info("clamped %d negative population excursions", clamped)
    return MultivariateSeries(tuple(f"x{k + 1}" for k in range(n)), cfg.dt, out)
