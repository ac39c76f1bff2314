# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled implementation of the hot estimator kernels.

Mirrors _py_kernels exactly (same ridge fallback, same floors); see that
module for the shared contract. Gram matrices for gc_matrix still come
from BLAS; the per-pair algebra runs as C loops without temporaries.
"""
import numpy as np

cimport numpy as cnp
from libc.math cimport floor, hypot, log

cnp.import_array()

IS_COMPILED = True

cdef double RIDGE_COND = 1e12
cdef double RIDGE_SCALE = 1e-8
cdef double RSS_FLOOR = 1e-15


def gc_fit(double[::1] source, double[::1] target):
    cdef Py_ssize_t t, m = target.shape[0] - 1
    cdef double g11 = 0.0, g22 = 0.0, g12 = 0.0, b1 = 0.0, b2 = 0.0
    cdef double yl, xl, yp, a, r, rss0 = 0.0, rss1 = 0.0
    cdef double tr, disc, lmin, lmax, h11, h22, det, b, c, lam
    for t in range(m):
        yl = target[t]
        xl = source[t]
        yp = target[t + 1]
        g11 += yl * yl
        g22 += xl * xl
        g12 += yl * xl
        b1 += yp * yl
        b2 += yp * xl
    a = b1 / g11 if g11 > 0.0 else 0.0
    for t in range(m):
        r = target[t + 1] - a * target[t]
        rss0 += r * r
    tr = g11 + g22
    disc = hypot(g11 - g22, 2.0 * g12)
    lmin = 0.5 * (tr - disc)
    lmax = 0.5 * (tr + disc)
    h11 = g11
    h22 = g22
    if lmin <= lmax / RIDGE_COND:
        lam = RIDGE_SCALE * tr
        h11 += lam
        h22 += lam
    det = h11 * h22 - g12 * g12
    if det == 0.0:
        det = 1.0
    b = (h22 * b1 - g12 * b2) / det
    c = (h11 * b2 - g12 * b1) / det
    for t in range(m):
        r = target[t + 1] - b * target[t] - c * source[t]
        rss1 += r * r
    if rss1 < rss0 * RSS_FLOOR:
        rss1 = rss0 * RSS_FLOOR
    return a, b, c, rss0, rss1


cdef void _fill_codes(double[::1] v, long long[::1] out, int bins) nogil:
    cdef Py_ssize_t t, n = v.shape[0]
    cdef double lo = v[0], hi = v[0], span
    cdef long long code
    for t in range(1, n):
        if v[t] < lo:
            lo = v[t]
        if v[t] > hi:
            hi = v[t]
    if hi <= lo:
        for t in range(n):
            out[t] = 0
        return
    span = hi - lo
    for t in range(n):
        # ratio before scaling: keeps binning exactly invariant under affine maps
        code = <long long> floor((v[t] - lo) / span * bins)
        if code > bins - 1:
            code = bins - 1
        out[t] = code


def te_binned(double[::1] source, double[::1] target, int bins):
    cdef Py_ssize_t t, n = target.shape[0], m = n - 1
    cdef cnp.ndarray[long long, ndim=1] cx = np.empty(n, dtype=np.int64)
    cdef cnp.ndarray[long long, ndim=1] cy = np.empty(n, dtype=np.int64)
    _fill_codes(source, cx, bins)
    _fill_codes(target, cy, bins)
    cdef cnp.ndarray[long long, ndim=1] c3 = np.zeros(bins ** 3, dtype=np.int64)
    cdef cnp.ndarray[long long, ndim=1] c_yx = np.zeros(bins ** 2, dtype=np.int64)
    cdef cnp.ndarray[long long, ndim=1] c_py = np.zeros(bins ** 2, dtype=np.int64)
    cdef cnp.ndarray[long long, ndim=1] c_y = np.zeros(bins, dtype=np.int64)
    cdef long long[::1] vx = cx, vy = cy
    cdef long long[::1] h3 = c3, hyx = c_yx, hpy = c_py, hy = c_y
    cdef long long yp, yl, xl
    for t in range(m):
        yp = vy[t + 1]
        yl = vy[t]
        xl = vx[t]
        h3[(yp * bins + yl) * bins + xl] += 1
        hyx[yl * bins + xl] += 1
        hpy[yp * bins + yl] += 1
        hy[yl] += 1
    cdef double s3 = 0.0, syx = 0.0, spy = 0.0, sy = 0.0, c, te
    for t in range(bins ** 3):
        c = <double> h3[t]
        if c > 0.0:
            s3 += c * log(c)
    for t in range(bins ** 2):
        c = <double> hyx[t]
        if c > 0.0:
            syx += c * log(c)
        c = <double> hpy[t]
        if c > 0.0:
            spy += c * log(c)
    for t in range(bins):
        c = <double> hy[t]
        if c > 0.0:
            sy += c * log(c)
    te = (s3 + sy - spy - syx) / m
    return te if te > 0.0 else 0.0


def gc_matrix(data):
    X = np.ascontiguousarray(data, dtype=np.float64)
    cdef Py_ssize_t n = X.shape[0]
    Xc = X - X.mean(axis=1, keepdims=True)
    P = np.ascontiguousarray(Xc[:, :-1])
    F = np.ascontiguousarray(Xc[:, 1:])
    A0 = np.asarray(P @ P.T, dtype=np.float64)
    A1 = np.asarray(F @ P.T, dtype=np.float64)
    dF = np.einsum("ij,ij->i", F, F)
    cdef double[:, ::1] a0 = A0
    cdef double[:, ::1] a1 = A1
    cdef double[::1] df = dF
    cdef cnp.ndarray[double, ndim=2] out = np.zeros((n, n), dtype=np.float64)
    cdef double[:, ::1] G = out
    cdef Py_ssize_t i, j
    cdef double gii, gjj, g12, b1, b2, rss0, rss1, tr, disc, lmin, lmax
    cdef double h11, h22, det, beta1, beta2, lam, floor1, val
    for i in range(n):
        gii = a0[i, i]
        b1 = a1[i, i]
        rss0 = df[i] - (b1 * b1 / gii if gii > 0.0 else 0.0)
        if rss0 <= 0.0:
            continue
        for j in range(n):
            if j == i:
                continue
            gjj = a0[j, j]
            if gjj <= 0.0:
                continue              # constant source adds nothing: exact zero
            g12 = a0[i, j]
            b2 = a1[i, j]
            tr = gii + gjj
            disc = hypot(gii - gjj, 2.0 * g12)
            lmin = 0.5 * (tr - disc)
            lmax = 0.5 * (tr + disc)
            h11 = gii
            h22 = gjj
            if lmin <= lmax / RIDGE_COND:
                lam = RIDGE_SCALE * tr
                h11 += lam
                h22 += lam
            det = h11 * h22 - g12 * g12
            if det == 0.0:
                det = 1.0
            beta1 = (h22 * b1 - g12 * b2) / det
            beta2 = (h11 * b2 - g12 * b1) / det
            # residual quadratic form stays exact when the ridge shifted the solve
            rss1 = (df[i] - 2.0 * (beta1 * b1 + beta2 * b2)
                    + beta1 * beta1 * gii + 2.0 * beta1 * beta2 * g12 + beta2 * beta2 * gjj)
            floor1 = rss0 * RSS_FLOOR
            if rss1 < floor1:
                rss1 = floor1
            val = log(rss0 / rss1)
            G[j, i] = val if val > 0.0 else 0.0
    return out
