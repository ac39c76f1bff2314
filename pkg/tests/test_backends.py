"""The compiled kernels and the numpy fallback must be interchangeable."""
import math
import subprocess
import sys

import numpy as np
import pytest

from cnmarkers import _accel
from cnmarkers._accel import PY_BACKEND, _py_kernels

try:
    from cnmarkers._accel import _kernels as CY_BACKEND
    HAVE_CY = bool(CY_BACKEND.IS_COMPILED)
except ImportError:
    HAVE_CY = False

needs_cython = pytest.mark.skipif(not HAVE_CY,
                                  reason="compiled extension not built")


def fixtures():
    """Window pairs spanning the estimator's regimes, ridge cases included."""
    rng = np.random.default_rng(42)
    out = []
    x = rng.standard_normal(400)
    y = 0.5 * np.roll(x, 1) + 0.3 * rng.standard_normal(400)
    out.append(("coupled", x, y))
    out.append(("independent", rng.standard_normal(200),
                rng.standard_normal(200)))
    # near-collinear regressors force the ridge path
    base = rng.standard_normal(300)
    out.append(("collinear", base, base * (1 + 1e-13) + 1e-13))
    out.append(("constant-source", np.full(150, 3.0),
                rng.standard_normal(150)))
    out.append(("tiny", rng.standard_normal(4), rng.standard_normal(4)))
    big = 1e8 * rng.standard_normal(250)
    out.append(("large-scale", big, 1e-8 * rng.standard_normal(250)))
    return out


def gc_value(backend, x, y):
    a, b, c, rss0, rss1 = backend.gc_fit(x, y)
    if rss0 <= 0.0:
        return 0.0
    return max(0.0, math.log(rss0 / max(rss1, rss0 * 1e-15)))


@needs_cython
class TestBackendEquivalence:
    @pytest.mark.parametrize("name,x,y", fixtures(),
                             ids=[f[0] for f in fixtures()])
    def test_gc_fit_values_agree(self, name, x, y):
        g_py = gc_value(PY_BACKEND, x, y)
        g_cy = gc_value(CY_BACKEND, x, y)
        assert g_cy == pytest.approx(g_py, rel=1e-6, abs=1e-9)

    @pytest.mark.parametrize("bins", [2, 8, 64])
    def test_te_binned_agrees(self, bins):
        rng = np.random.default_rng(7)
        x = rng.standard_normal(500)
        y = np.roll(x, 1) + 0.1 * rng.standard_normal(500)
        t_py = PY_BACKEND.te_binned(x, y, bins)
        t_cy = CY_BACKEND.te_binned(x, y, bins)
        assert t_cy == pytest.approx(t_py, abs=1e-12)

    def test_gc_matrix_agrees_with_constant_channel(self):
        rng = np.random.default_rng(13)
        data = rng.standard_normal((6, 300))
        data[2] = 1.5  # constant row must zero its column and row exactly
        m_py = PY_BACKEND.gc_matrix(data)
        m_cy = CY_BACKEND.gc_matrix(data)
        assert np.allclose(m_cy, m_py, rtol=1e-6, atol=1e-9)
        assert np.all(m_cy[2] == 0.0) and np.all(m_cy[:, 2] == 0.0)
        assert np.all(m_py[2] == 0.0) and np.all(m_py[:, 2] == 0.0)

    def test_ridge_path_produces_identical_decisions(self):
        # same near-singular Gram matrix must take the ridge branch in both
        rng = np.random.default_rng(3)
        x = rng.standard_normal(100)
        for scale in (1e-16, 1e-13, 1e-10):
            y = x * (1.0 + scale)
            f_py = PY_BACKEND.gc_fit(y, x)
            f_cy = CY_BACKEND.gc_fit(y, x)
            assert f_cy[3] == pytest.approx(f_py[3], rel=1e-9)


class TestSelection:
    def test_env_override_forces_the_fallback(self):
        code = ("import cnmarkers, sys;"
                "sys.stdout.write(cnmarkers.BACKEND)")
        out = subprocess.run([sys.executable, "-c", code],
                             env={"CNMARKERS_PURE_PYTHON": "1", "PATH": "/usr/bin:/bin"},
                             capture_output=True, text=True, check=True)
        assert out.stdout == "python"

    def test_active_backend_is_exported(self):
        assert _accel.BACKEND in ("cython", "python")
        assert _accel.gc_fit is _accel._impl.gc_fit
