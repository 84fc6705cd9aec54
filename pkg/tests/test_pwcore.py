import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from fracpw import (CriticalExponentError, FracPWFunction, InvalidArgument,
                    ShiftRangeError, SpectralDensity, band_mask, build_grid,
                    derivative, esp_norm, esp_norm_info, frac_laplacian,
                    inverse_laplacian, make_params, project, pw_norm,
                    shift_imaginary, synth_eval)
from fracpw.families import conjugate_even, random_function
from fracpw.pwcore import corrected_exp, from_function, lp_norm_at, pw_inner
from fracpw.quadrature import panels_for_range, weighted_norm


def const(params, value=1.0, grid=None):
    grid = grid or build_grid(params.a)
    return FracPWFunction(params, SpectralDensity(grid, np.full(grid.size, value,
                                                                dtype=complex)))


# ------------------------------------------------------------ params

def test_make_params_orders():
    assert make_params(1, 0.25, 2).m == -1
    assert make_params(1, 1.7, 2).m == 1
    assert make_params(1, 0.3, 4).m == 0


@pytest.mark.parametrize("s,p", [(1.5, 2), (0.5, 2), (0.25, 4), (2.5, 2)])
def test_critical_exponents_rejected(s, p):
    with pytest.raises(CriticalExponentError):
        make_params(1, s, p)


@pytest.mark.parametrize("a,s,p", [(0, 0.2, 2), (1, -0.1, 2), (1, 0.2, 1), (1, 0.2, math.inf)])
def test_invalid_params(a, s, p):
    with pytest.raises(InvalidArgument):
        make_params(a, s, p)


def test_density_grid_must_match_bandwidth():
    with pytest.raises(InvalidArgument):
        const(make_params(1, 0.25), grid=build_grid(2.0))


# ------------------------------------------------------------ synthesis

def test_synth_constant_spectrum():
    f = const(make_params(math.pi, 0.0))
    assert abs(synth_eval(f, 0) - math.sqrt(2 * math.pi)) <= 1e-8


def test_synth_vanishes_to_order_m(rng):
    f = random_function(make_params(1, 1.7), rng, "smooth")
    g = weighted_norm(f.g, 0.0)
    assert abs(synth_eval(f, 0)) <= 1e-12 * g
    d = (synth_eval(f, 1e-4) - synth_eval(f, -1e-4)) / 2e-4
    assert abs(d) <= 1e-6 * g


def test_synth_weighted_spectrum():
    p = make_params(1, 0.25)
    f = from_function(p, lambda xi: np.abs(xi) ** 0.5)
    assert abs(synth_eval(f, 0) - (4 / 3) / math.sqrt(2 * math.pi)) <= 1e-6


def test_taylor_vanishing_fourth_order_stencil(rng):
    f = random_function(make_params(1, 1.7), rng, "smooth")
    g = weighted_norm(f.g, 0.0)
    h = 1e-3
    v = {k: synth_eval(f, k * h) for k in (-2, -1, 0, 1, 2)}
    d0 = v[0]
    d1 = (v[-2] - 8 * v[-1] + 8 * v[1] - v[2]) / (12 * h)
    assert abs(d0) <= 1e-6 * g
    assert abs(d1) <= 1e-6 * g


def test_corrected_exp_small_argument():
    u = np.array([1e-8, 1e-3j, 0.5, 2.0 + 1j])
    for m in range(4):
        ref = np.exp(u) - sum(u ** j / math.factorial(j) for j in range(m + 1))
        got = corrected_exp(u, m)
        # series is exact where the subtraction cancels
        lead = u[0] ** (m + 1) / math.factorial(m + 1) * (1 + u[0] / (m + 2))
        assert abs(got[0] - lead) <= 1e-12 * abs(got[0])
        assert np.allclose(got[2:], ref[2:], rtol=1e-12)


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), alpha=st.complex_numbers(max_magnitude=10),
       beta=st.complex_numbers(max_magnitude=10),
       z=st.complex_numbers(max_magnitude=5))
def test_linearity(seed, alpha, beta, z):
    rng = np.random.default_rng(seed)
    grid = build_grid(1.0, 16)
    p = make_params(1, 0.25)
    f = random_function(p, rng, "smooth", grid)
    h = random_function(p, rng, "smooth", grid)
    lhs = synth_eval(f * alpha + h * beta, z)
    rhs = alpha * synth_eval(f, z) + beta * synth_eval(h, z)
    scale = (abs(alpha) * abs(synth_eval(f, z)) + abs(beta) * abs(synth_eval(h, z))
             + 1e-300)
    assert abs(lhs - rhs) <= 1e-13 * scale + 1e-300


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 2**31 - 1), s=st.sampled_from([0.0, 0.25, 1.7]))
def test_hermitian_symmetry(seed, s):
    rng = np.random.default_rng(seed)
    f = conjugate_even(random_function(make_params(1, s), rng, "rough",
                                       build_grid(1.0, 16)))
    x = np.linspace(-3, 3, 13)
    assert np.max(np.abs(f(x).imag)) <= 1e-12 * weighted_norm(f.g, 0.0)


# ------------------------------------------------------------ multipliers

def test_frac_laplacian_multiplier():
    f = const(make_params(1, 1.2))
    h = frac_laplacian(f, 1.0)
    assert np.array_equal(h.values, np.abs(f.grid.nodes) ** 1.0 + 0j)
    assert abs(h.params.s - 0.2) <= 1e-15


def test_frac_laplacian_to_classical(params_small):
    h = frac_laplacian(const(params_small), 0.25)
    assert h.params.s == 0.0 and h.params.m == -1


def test_frac_laplacian_round_trip(rng, params_small):
    f = random_function(params_small, rng, "rough")
    back = frac_laplacian(frac_laplacian(f, 0.25), -0.25, params_small)
    assert np.max(np.abs(back.values - f.values) / np.abs(f.values)) <= 1e-13


def test_isometry_seed42():
    f = random_function(make_params(1, 0.25), np.random.default_rng(42), "smooth")
    h = frac_laplacian(f, 0.25)
    assert abs(pw_norm(f) - pw_norm(h)) <= 1e-12 * pw_norm(f)


def test_inverse_laplacian_examples():
    h = const(make_params(1, 0.0))
    f = inverse_laplacian(h, make_params(1, 0.25))
    assert abs(pw_norm(f) - math.sqrt(2)) <= 1e-8
    back = frac_laplacian(f, 0.25)
    assert np.max(np.abs(back.values - h.values)) <= 1e-13
    f2 = inverse_laplacian(h, make_params(1, 1.7))
    assert abs(synth_eval(f2, 0)) <= 1e-12 * pw_norm(f2)


def test_inverse_laplacian_requires_classical(params_small):
    with pytest.raises(InvalidArgument):
        inverse_laplacian(const(params_small), params_small)


def test_derivative_multiplier(params_small):
    f = const(params_small)
    d = derivative(f, 2)
    assert np.allclose(d.values, -f.grid.nodes ** 2)


def test_shift_identity(rng, params_small):
    f = random_function(params_small, rng)
    assert np.array_equal(shift_imaginary(f, 0.0).values, f.values)


def test_shift_against_dense_oracle(params_small):
    f = const(params_small)
    dense = build_grid(1.0, 4 * 64)
    xi, w = dense.nodes, dense.weights
    oracle = np.sum(w * np.exp(-2 * xi) * np.abs(xi) ** 0.5)
    assert abs(pw_norm(shift_imaginary(f, 1.0)) ** 2 - oracle) <= 1e-6


def test_shift_range_guard(params_small):
    with pytest.raises(ShiftRangeError):
        shift_imaginary(const(params_small), 701.0)


def test_plancherel_polya_spectral_100_seeds():
    p = make_params(1, 0.25)
    for k in range(100):
        f = random_function(p, np.random.default_rng([42, k]), "rough")
        for y in (-2.0, -0.5, 0.5, 2.0):
            assert pw_norm(shift_imaginary(f, y)) <= math.exp(abs(y)) * pw_norm(f)


# ------------------------------------------------------------ projection

def test_project_same_grid_identity(rng, params_small):
    f = random_function(params_small, rng)
    g = project(f.g, params_small)
    assert np.max(np.abs(g.values - f.values)) <= 1e-14


def _wide(a, b, s, rng, inside=True):
    grid = build_grid(b)
    vals = rng.normal(size=grid.size) + 1j * rng.normal(size=grid.size)
    mask = np.abs(grid.nodes) <= a
    vals = np.where(mask if not inside else np.ones_like(mask), vals, 0)
    vals = np.where(~mask, vals, 0) if not inside else vals
    return SpectralDensity(grid, vals)


def test_project_disjoint_support(rng):
    t = make_params(1, 0.25)
    gw = _wide(1, 2, 0.25, rng, inside=False)
    assert pw_norm(project(gw, t)) <= 1e-14


def test_project_narrower_source_rejected(rng):
    with pytest.raises(InvalidArgument):
        project(_wide(1, 2, 0.25, rng), make_params(3, 0.25))


@pytest.mark.parametrize("s", [0.25, 1.7])
def test_project_non_expansive_and_idempotent(s):
    t = make_params(1, s)
    for k in range(100):
        rng = np.random.default_rng([7, k])
        fw = random_function(make_params(2, s), rng, ("rough", "smooth")[k % 2])
        pf = project(fw.g, t)
        assert pw_norm(pf) <= weighted_norm(fw.g, s) * (1 + 1e-12)
        ppf = project(pf.g, t)
        assert np.max(np.abs(ppf.values - pf.values)) <= 1e-12 * max(pw_norm(pf), 1)


def test_project_self_adjoint(rng):
    grid = build_grid(2.0)
    p = make_params(2, 0.25)
    f = random_function(p, rng, "rough", grid)
    h = random_function(p, rng, "rough", grid)
    lhs = pw_inner(band_mask(f, 1.0), h)
    rhs = pw_inner(f, band_mask(h, 1.0))
    assert abs(lhs - rhs) <= 1e-10 * pw_norm(f) * pw_norm(h)


def test_project_across_grids_interpolates():
    # smooth density on a wide grid projected onto a fresh narrow grid
    t = make_params(1, 0.25)
    wgrid = build_grid(2.0)
    fw = from_function(make_params(2, 0.25), lambda xi: np.cos(xi), wgrid)
    pf = project(fw.g, t)
    assert pf.grid.a == 1.0
    assert np.max(np.abs(pf.values - np.cos(pf.grid.nodes))) <= 1e-7


# ------------------------------------------------------------ norms

def test_pw_norm_examples(params_small):
    assert pw_norm(const(params_small, 0.0)) == 0.0
    assert abs(pw_norm(const(params_small)) - math.sqrt(4 / 3)) <= 1e-8


def test_esp_norm_p2_matches_spectral():
    p = make_params(1, 0.25)
    f = const(p, grid=build_grid(1.0, panels_for_range(1.0, 200)))
    val = lp_norm_at(f, 2, 200)
    assert abs(val - pw_norm(f)) <= 5e-3 * pw_norm(f)


def test_esp_norm_zero(params_small):
    assert esp_norm(const(params_small, 0.0), 2) == 0.0


def test_esp_norm_p4_stable():
    p = make_params(math.pi, 0.0)
    f = const(p, grid=build_grid(math.pi, panels_for_range(math.pi, 200)))
    v1, v2 = lp_norm_at(f, 4, 100), lp_norm_at(f, 4, 200)
    assert abs(v1 - v2) <= 1e-3 * v2


def test_esp_norm_info_reports(rng):
    f = random_function(make_params(1, 0.25), rng, "smooth")
    info = esp_norm_info(f, 2)
    assert info.converged and info.spectral_agrees
    assert info.history[-1][1] == info.value
    with pytest.raises(InvalidArgument):
        esp_norm_info(f, 1.0)
