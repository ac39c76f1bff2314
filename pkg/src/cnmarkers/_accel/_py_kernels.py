"""Pure numpy implementation of the hot estimator kernels.

Contract shared with the compiled backend:

  gc_fit(source, target) -> (a, b, c, rss0, rss1)
      Inputs are 1-D float64 arrays, already mean-centered, equal length
      T >= 2; both lag-1 regressions run over the T-1 rows t = 0..T-2.
  te_binned(source, target, bins) -> float
      Plug-in transfer entropy in nats on raw (uncentered) sequences.
  gc_matrix(data) -> ndarray
      All ordered channel pairs at once; data is channels x samples and
      is centered internally; out[j, i] = GC(channel j -> channel i).

All paths share the same ridge fallback and residual floor so the two
backends and the pairwise/batched paths agree to float tolerance.
"""
import math

import numpy as np

RIDGE_COND = 1e12    # eigenvalue ratio beyond which the 2x2 solve is regularized
RIDGE_SCALE = 1e-8   # ridge = RIDGE_SCALE * trace of the Gram matrix
RSS_FLOOR = 1e-15    # rss1 floored at rss0 * RSS_FLOOR before the log ratio

IS_COMPILED = False


def gc_fit(source, target):
    yp = target[1:]
    yl = target[:-1]
    xl = source[:-1]
    g11 = float(yl @ yl)
    g22 = float(xl @ xl)
    g12 = float(yl @ xl)
    b1 = float(yp @ yl)
    b2 = float(yp @ xl)
    a = b1 / g11 if g11 > 0.0 else 0.0
    r0 = yp - a * yl
    rss0 = float(r0 @ r0)
    # ridge fallback keeps collinear regressors solvable
    tr = g11 + g22
    disc = math.hypot(g11 - g22, 2.0 * g12)
    lmin = 0.5 * (tr - disc)
    lmax = 0.5 * (tr + disc)
    h11, h22 = g11, g22
    if lmin <= lmax / RIDGE_COND:
        lam = RIDGE_SCALE * tr
        h11 += lam
        h22 += lam
    det = h11 * h22 - g12 * g12
    if det == 0.0:
        det = 1.0
    b = (h22 * b1 - g12 * b2) / det
    c = (h11 * b2 - g12 * b1) / det
    r1 = yp - b * yl - c * xl
    rss1 = float(r1 @ r1)
    rss1 = max(rss1, rss0 * RSS_FLOOR)
    return a, b, c, rss0, rss1


def _codes(v, bins):
    lo = v.min()
    hi = v.max()
    if hi <= lo:
        return np.zeros(len(v), dtype=np.int64)
    # ratio before scaling: keeps binning exactly invariant under affine maps
    c = np.floor((v - lo) / (hi - lo) * bins).astype(np.int64)
    return np.minimum(c, bins - 1)


def _plogp_sum(counts):
    c = counts[counts > 0]
    return float((c * np.log(c)).sum())


def te_binned(source, target, bins):
    cx = _codes(source, bins)
    cy = _codes(target, bins)
    ypc = cy[1:]
    ylc = cy[:-1]
    xlc = cx[:-1]
    m = len(ypc)
    c3 = np.bincount((ypc * bins + ylc) * bins + xlc, minlength=bins ** 3).astype(float)
    c_yx = np.bincount(ylc * bins + xlc, minlength=bins ** 2).astype(float)
    c_py = np.bincount(ypc * bins + ylc, minlength=bins ** 2).astype(float)
    c_y = np.bincount(ylc, minlength=bins).astype(float)
    te = (_plogp_sum(c3) + _plogp_sum(c_y) - _plogp_sum(c_py) - _plogp_sum(c_yx)) / m
    return max(0.0, te)


def gc_matrix(data):
    X = np.ascontiguousarray(data, dtype=np.float64)
    n = X.shape[0]
    Xc = X - X.mean(axis=1, keepdims=True)
    P = np.ascontiguousarray(Xc[:, :-1])
    F = np.ascontiguousarray(Xc[:, 1:])
    A0 = P @ P.T                      # A0[i, j] = sum over t of ch_i[t] * ch_j[t]
    A1 = F @ P.T                      # A1[i, j] = sum over t of ch_i[t+1] * ch_j[t]
    dF = np.einsum("ij,ij->i", F, F)
    g = np.diag(A0).copy()
    diag1 = A1.diagonal().copy()
    safe = np.where(g > 0.0, g, 1.0)
    rss0 = dF - np.where(g > 0.0, diag1 ** 2 / safe, 0.0)
    # target i in rows, source j in columns for the 2x2 solves
    gii = g[:, None] * np.ones((1, n))
    gjj = g[None, :] * np.ones((n, 1))
    g12 = A0
    b1 = diag1[:, None] * np.ones((1, n))
    b2 = A1
    tr = gii + gjj
    disc = np.hypot(gii - gjj, 2.0 * g12)
    lmax = 0.5 * (tr + disc)
    lmin = 0.5 * (tr - disc)
    ridge = np.where(lmin <= lmax / RIDGE_COND, RIDGE_SCALE * tr, 0.0)
    h11 = gii + ridge
    h22 = gjj + ridge
    det = h11 * h22 - g12 * g12
    det = np.where(det == 0.0, 1.0, det)
    beta1 = (h22 * b1 - g12 * b2) / det
    beta2 = (h11 * b2 - g12 * b1) / det
    # residual quadratic form stays exact when the ridge shifted the solve
    rss1 = (dF[:, None] - 2.0 * (beta1 * b1 + beta2 * b2)
            + beta1 * beta1 * gii + 2.0 * beta1 * beta2 * g12 + beta2 * beta2 * gjj)
    r0 = rss0[:, None] * np.ones((1, n))
    rss1 = np.maximum(rss1, r0 * RSS_FLOOR)
    # constant targets have rss0 = rss1 = 0; keep the masked ratio finite
    G = np.where(r0 > 0.0,
                 np.log(np.maximum(r0, 1e-300) / np.maximum(rss1, 1e-300)), 0.0)
    G = np.maximum(G, 0.0)
    # a constant source adds nothing; pin to exact zero instead of clamp noise
    G[:, g <= 0.0] = 0.0
    np.fill_diagonal(G, 0.0)
    return G.T.copy()                 # out[j, i] = GC(j -> i)
