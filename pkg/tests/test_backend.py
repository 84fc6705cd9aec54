import math
import os
import subprocess
import sys

import mpmath
import numpy as np
import pytest

from fracpw import _core_py, backend

try:
    from fracpw import _core
except ImportError:  # extension not built
    _core = None

needs_ext = pytest.mark.skipif(_core is None, reason="compiled extension not built")


@pytest.fixture
def data():
    rng = np.random.default_rng(3)
    nodes = np.sort(rng.uniform(-2, 2, 300))
    coeffs = rng.normal(size=300) + 1j * rng.normal(size=300)
    return rng, nodes, coeffs


def test_selected_backend_is_known():
    assert backend.BACKEND in ("cython", "python")
    if _core is not None and os.environ.get("FRACPW_BACKEND", "") != "python":
        assert backend.BACKEND == "cython"


def test_forced_python_backend():
    out = subprocess.run(
        [sys.executable, "-c", "import fracpw; print(fracpw.BACKEND)"],
        capture_output=True, text=True, check=True,
        env={**os.environ, "FRACPW_BACKEND": "python"})
    assert out.stdout.strip() == "python"


@pytest.mark.parametrize("impl", [_core_py, _core] if _core else [_core_py])
@pytest.mark.parametrize("m", [-1, 0, 1, 3])
def test_corrected_exp_against_series(impl, m):
    u = np.array([1e-9, 1e-4 + 2e-4j, 0.3j, -0.9, 1.5 - 2j, 12j])
    mpmath.mp.dps = 50
    ref = [complex(mpmath.exp(mpmath.mpc(v)) - sum(
        mpmath.mpc(v) ** j / mpmath.factorial(j) for j in range(m + 1))) for v in u]
    got = impl.corrected_exp(u, m)
    assert np.allclose(got, ref, rtol=1e-13, atol=0)


@needs_ext
@pytest.mark.parametrize("m", [-1, 0, 1, 2])
def test_exp_sum_parity_real_and_complex(data, m):
    rng, nodes, coeffs = data
    for z in (rng.uniform(-30, 30, 97), rng.uniform(-5, 5, 50) + 1j * rng.uniform(-3, 3, 50)):
        a = _core.exp_sum(z, nodes, coeffs, m)
        b = _core_py.exp_sum(z, nodes, coeffs, m)
        assert np.max(np.abs(a - b)) <= 1e-12 * np.sum(np.abs(coeffs))


@needs_ext
def test_sinc_sum_parity(data):
    rng, _, _ = data
    idx = np.arange(-40, 41, dtype=float)
    vals = rng.normal(size=81) + 1j * rng.normal(size=81)
    t = np.concatenate([rng.uniform(-45, 45, 200), idx[::7], idx[:5] + 1e-6,
                        rng.uniform(-3, 3, 5) + 0.2j])
    a = _core.sinc_sum(t, idx, vals)
    b = _core_py.sinc_sum(t, idx, vals)
    assert np.max(np.abs(a - b)) <= 1e-12 * np.sum(np.abs(vals))


@pytest.mark.parametrize("impl", [_core_py, _core] if _core else [_core_py])
def test_sinc_sum_lattice_exact(impl):
    idx = np.arange(-5, 6, dtype=float)
    vals = np.arange(11) + 1j
    assert np.array_equal(impl.sinc_sum(idx, idx, vals), vals)


@pytest.mark.parametrize("impl", [_core_py, _core] if _core else [_core_py])
def test_exp_sum_read_only_inputs(impl, data):
    _, nodes, coeffs = data
    nodes.setflags(write=False)
    coeffs.setflags(write=False)
    z = np.linspace(-1, 1, 5)
    z.setflags(write=False)
    expect = np.exp(1j * np.outer(z, nodes)) @ coeffs
    assert np.allclose(impl.exp_sum(z, nodes, coeffs, -1), expect, rtol=1e-12)


@pytest.mark.parametrize("impl", [_core_py, _core] if _core else [_core_py])
def test_sinc_near_lattice_series(impl):
    idx = np.array([0.0])
    t = np.array([1e-7, 2.0 + 1e-9])
    got = impl.sinc_sum(t, idx, np.array([1.0 + 0j]))
    x = math.pi * t
    assert np.allclose(got, np.sin(x) / x, rtol=1e-12)
