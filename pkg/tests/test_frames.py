import math

import numpy as np
import pytest

from fracpw import InvalidArgument, build_grid
from fracpw.frames import (WindowSpec, analysis_matrix, equivalence_check,
                           frame_bounds, gram_matrix, lai_experiment,
                           rayleigh_quotient)
from fracpw.quadrature import panels_for_range

CONST = WindowSpec()
POW = WindowSpec("power", 0.25)


def lattice(N, a):
    return np.arange(-N, N + 1) * math.pi / a


def test_window_parse():
    assert WindowSpec.parse("const") == CONST
    assert WindowSpec.parse("pow:0.25") == POW
    assert POW.label() == "pow:0.25"
    for bad in ("pow:0.5", "pow:-1", "square"):
        with pytest.raises(InvalidArgument):
            WindowSpec.parse(bad)


def test_gram_lattice_orthogonal(grid1):
    G = gram_matrix(CONST, lattice(4, 1.0), grid1)
    assert np.max(np.abs(G - 2 * np.eye(9))) <= 1e-8


def test_gram_power_single(grid1):
    G = gram_matrix(POW, [0.0], grid1)
    assert abs(G[0, 0] - 4.0) <= 1e-6


@pytest.mark.parametrize("window", [CONST, POW])
def test_gram_hermitian_and_psd(window, grid1, rng):
    lam = np.sort(rng.uniform(-10, 10, 12))
    G = gram_matrix(window, lam, grid1)
    assert np.array_equal(G, G.conj().T)
    assert np.linalg.eigvalsh(G).min() >= -1e-10 * np.trace(G).real


def test_duplicate_lambdas_rejected(grid1):
    with pytest.raises(InvalidArgument):
        gram_matrix(CONST, [0.0, 1.0, 0.0], grid1)


def test_frame_bounds_lattice_parseval():
    a, N = 1.0, 64
    grid = build_grid(a, panels_for_range(a, N * math.pi / a))
    smin, smax = frame_bounds(CONST, lattice(N, a), grid)
    assert 1.95 <= smax <= 2.05
    assert smin / smax >= 0.8


def test_frame_bounds_single_lambda(grid1):
    smin, smax = frame_bounds(POW, [0.7], grid1, interior=False)
    G = gram_matrix(POW, [0.7], grid1)
    assert abs(smax - G[0, 0].real) <= 1e-12 * smax
    assert smin == 0.0


def test_frame_bounds_monotone_in_lambdas(grid1, rng):
    lam = list(rng.uniform(-8, 8, 6))
    A = analysis_matrix(POW, lam, grid1)
    v = rng.normal(size=grid1.size) + 1j * rng.normal(size=grid1.size)
    prev_s = frame_bounds(POW, lam, grid1, interior=False)[1]
    prev_e = np.linalg.norm(A @ v) ** 2
    for extra in (9.5, -9.1, 0.05):
        lam.append(extra)
        smax = frame_bounds(POW, lam, grid1, interior=False)[1]
        e = np.linalg.norm(analysis_matrix(POW, lam, grid1) @ v) ** 2
        assert smax >= prev_s * (1 - 1e-12) and e >= prev_e * (1 - 1e-12)
        prev_s, prev_e = smax, e


def test_power_window_upper_bound_grading_converged():
    # refining the grading toward 0 leaves sigma_max^2 unchanged once resolved
    a, N = 1.0, 32
    lam = lattice(N, a)
    vals = [frame_bounds(POW, lam, build_grid(a, 256, g), interior=False)[1]
            for g in (2.0, 4.0)]
    assert abs(vals[0] - vals[1]) <= 1e-4 * vals[1]
    const = frame_bounds(CONST, lam, build_grid(a, 256), interior=False)[1]
    assert vals[1] > const


def test_rayleigh_constant_window_is_parseval():
    a = 1.0
    grid = build_grid(a, 512)
    assert abs(rayleigh_quotient(CONST, 0.1, a, 256, grid) - 2 * a) <= 1e-6


def test_lai_blowup():
    hs = [0.2 / 2 ** k for k in range(5)]
    rep = lai_experiment(0.25, 1.0, 256, hs)
    ctx = rep.context
    assert ctx["status"] == "ok"
    target = 2 ** 0.5
    assert all(0.85 * target <= r <= 1.15 * target for r in ctx["growth_ratios"])
    assert ctx["control_spread"] <= 0.10
    assert abs(ctx["loglog_slope"] - 0.5) <= 0.1
    q = [v for _, v in rep.blowup]
    assert all(q2 > q1 for q1, q2 in zip(q, q[1:]))


def test_lai_flags_truncation():
    rep = lai_experiment(0.25, 1.0, 16, [0.2, 0.1, 0.05])
    assert rep.context["status"] == "truncation-dominated"


@pytest.mark.parametrize("kw", [dict(s=0.6), dict(hs=[0.3, 0.1]), dict(hs=[0.1, 0.2])])
def test_lai_argument_checks(kw):
    args = dict(s=0.25, a=1.0, N=64, hs=[0.2, 0.1])
    args.update(kw)
    with pytest.raises(InvalidArgument):
        lai_experiment(**args)


def test_equivalence_small_set(grid1):
    rep = equivalence_check(0.25, [0.0, math.pi, -math.pi], grid1)
    assert rep.measured <= 1e-12 and rep.passed


def test_equivalence_s0(grid1):
    assert equivalence_check(0.0, [0.0, 1.0, 2.5], grid1).measured == 0.0


def test_equivalence_random_sets(grid1):
    for k in range(5):
        lam = np.random.default_rng([42, k]).uniform(-20, 20, 9)
        assert equivalence_check(0.25, lam, grid1).passed
