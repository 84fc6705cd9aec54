import math

import numpy as np
import pytest

from fracpw import (FracPWFunction, InvalidArgument, SampleSet, SpectralDensity,
                    basis_psi, build_grid, make_params, norm_from_samples,
                    pw_norm, reconstruct_from_samples, sample_laplacian,
                    sample_plain, sinc_eval, synth_eval)
from fracpw.families import conjugate_even, random_function, smooth_profile
from fracpw.quadrature import panels_for_range
from fracpw.sampling import norm_constant, resolve_norm_constant


def member(a, s, N, seed, laplacian=True, factor=1):
    rng = np.random.default_rng(seed)
    prof = smooth_profile(rng, a, s, laplacian=laplacian)
    grid = build_grid(a, factor * panels_for_range(a, N * math.pi / a))
    return FracPWFunction(make_params(a, s), SpectralDensity(grid, prof(grid.nodes)))


@pytest.mark.parametrize("s", [0.3, 1.7])
def test_laplacian_samples_of_psi0(s):
    f = basis_psi(make_params(math.pi, s), 0)
    v = sample_laplacian(f, 4).values
    expect = np.zeros(9)
    expect[4] = 1.0
    assert np.max(np.abs(v - expect)) <= 1e-8


def test_zero_function_samples(params_small):
    g = build_grid(1.0)
    f = FracPWFunction(params_small, SpectralDensity(g, np.zeros(g.size)))
    s = sample_laplacian(f, 5)
    assert not np.any(s.values)
    assert norm_from_samples(s) == 0.0
    rec = reconstruct_from_samples(s, params_small, g)
    assert pw_norm(rec) == 0.0


def test_conjugate_even_samples_real(rng, params_small):
    f = conjugate_even(random_function(params_small, rng, "smooth"))
    v = sample_laplacian(f, 16).values
    assert np.max(np.abs(v.imag)) <= 1e-12 * pw_norm(f)


@pytest.mark.parametrize("s", [0.3, 1.7])
def test_reconstruct_basis_vector(s):
    p = make_params(2.0, s)
    f = basis_psi(p, 0)
    for N in (1, 3):
        rec = reconstruct_from_samples(sample_laplacian(f, N), p, f.grid)
        assert pw_norm(rec - f) <= 1e-8


def test_reconstruct_shifted_basis_vector():
    p = make_params(2.0, 0.3)
    f = basis_psi(p, -2)
    rec = reconstruct_from_samples(sample_laplacian(f, 4), p, f.grid)
    assert pw_norm(rec - f) <= 1e-8


def test_reconstruct_random_member_converges():
    f = member(2.0, 0.3, 256, [42, 5])
    errs = {}
    for N in (64, 256):
        rec = reconstruct_from_samples(sample_laplacian(f, N), f.params, f.grid)
        errs[N] = pw_norm(f - rec) / pw_norm(f)
    assert errs[256] <= 1e-3
    assert errs[256] < errs[64]


def test_kind_mismatch_rejected(params_small, rng):
    f = random_function(params_small, rng)
    plain = sample_plain(f, 3)
    lap = sample_laplacian(f, 3)
    with pytest.raises(InvalidArgument):
        reconstruct_from_samples(plain, params_small, f.grid)
    with pytest.raises(InvalidArgument):
        norm_from_samples(plain)
    with pytest.raises(InvalidArgument):
        sinc_eval(lap, 0.0)


def test_plain_samples_need_small_s(params_large, rng):
    with pytest.raises(InvalidArgument):
        sample_plain(random_function(params_large, rng), 3)


def test_sample_set_shape_enforced():
    with pytest.raises(InvalidArgument):
        SampleSet(1.0, "plain-samples", 2, np.zeros(4))
    with pytest.raises(InvalidArgument):
        SampleSet(1.0, "other", 0, np.zeros(1))


def test_norm_of_psi0_at_a_pi():
    f = basis_psi(make_params(math.pi, 0.3), 0)
    assert abs(norm_from_samples(sample_laplacian(f, 8)) - 1.0) <= 1e-8
    # both candidate constants coincide at a = pi
    assert abs(norm_from_samples(sample_laplacian(f, 8), 1.0) - 1.0) <= 1e-8


def test_norm_constant_validation():
    s = SampleSet(1.0, "laplacian-samples", 0, np.ones(1))
    with pytest.raises(InvalidArgument):
        norm_from_samples(s, 0.0)
    with pytest.raises(InvalidArgument):
        norm_constant(1.0, "pi")


def test_constant_resolution_and_norm():
    a = 2.0
    f = member(a, 0.3, 1024, [42, 5])
    fd = member(a, 0.3, 1024, [42, 5], factor=4)
    res = resolve_norm_constant(f, fd, 1024)
    assert res.winner == "pi/a" and res.decisive
    dense = pw_norm(fd)
    nrm = norm_from_samples(sample_laplacian(f, 512))
    assert abs(nrm - dense) <= 1e-3 * dense
    rejected = norm_from_samples(sample_laplacian(f, 512), a / math.pi)
    ratio = (rejected / dense) ** 2
    assert abs(ratio - (a / math.pi) ** 2) <= 1e-2


def test_parseval_tail_nonnegative():
    f = member(2.0, 0.3, 256, [1, 2])
    total = pw_norm(f) ** 2
    for N in (8, 32, 128, 256):
        assert total - norm_from_samples(sample_laplacian(f, N)) ** 2 >= -1e-10


def test_sinc_delta_at_origin():
    s = SampleSet(1.0, "plain-samples", 3, np.eye(7)[3])
    assert sinc_eval(s, 0.0) == 1.0


def test_sinc_interpolates_exactly(rng):
    a, N = 1.3, 6
    v = rng.normal(size=2 * N + 1) + 1j * rng.normal(size=2 * N + 1)
    s = SampleSet(a, "plain-samples", N, v)
    for k in range(-N, N + 1):
        assert sinc_eval(s, k * math.pi / a) == v[k + N]


def test_sinc_reconstruction_converges():
    f = member(1.0, 0.25, 256, [42, 6], laplacian=False)
    z = np.linspace(-3, 3, 61)
    exact = synth_eval(f, z)
    errs = {N: np.max(np.abs(sinc_eval(sample_plain(f, N), z) - exact)) / pw_norm(f)
            for N in (64, 256)}
    assert errs[256] <= 5e-3
    assert errs[256] < errs[64]


def test_two_reconstructions_agree():
    f = member(1.0, 0.25, 256, [3, 3])
    z = np.linspace(-3, 3, 61)
    exact = synth_eval(f, z)
    e_sinc = sinc_eval(sample_plain(f, 256), z)
    rec = reconstruct_from_samples(sample_laplacian(f, 256), f.params, f.grid)
    e_psi = synth_eval(rec, z)
    bound = max(np.max(np.abs(e_sinc - exact)), np.max(np.abs(e_psi - exact)))
    assert np.max(np.abs(e_sinc - e_psi)) <= 2 * bound


def test_resolution_flag_recorded(params_small, rng):
    f = random_function(params_small, rng)
    assert sample_laplacian(f, 4).context["resolved"]
    assert not sample_laplacian(f, 4096).context["resolved"]
