"""The acceptance battery: one function per criterion, tolerances pinned here.

Each criterion returns a :class:`Criterion` with the measured quantities and
a pass flag. ``run_all`` drives them in order; the CLI ``paper-suite``
command and ``tests/test_acceptance.py`` both use it.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from .families import random_function, smooth_profile
from .frames import equivalence_check, lai_experiment
from .kernels import basis_psi, kernel_eval
from .pwcore import (FracPWFunction, SpectralDensity, frac_laplacian, make_params,
                     project, pw_inner, pw_norm, synth_eval)
from .quadrature import build_grid, panels_for_range, weighted_norm
from .sampling import (norm_from_samples, reconstruct_from_samples,
                       resolve_norm_constant, sample_laplacian, sample_plain,
                       sinc_eval)
from .verify import (RKHS_POINTS, SuiteConfig, check_projection_bound,
                     check_reproducing, estimate_type, run_suite)

SEED = 42


@dataclass
class Criterion:
    number: int
    name: str
    passed: bool
    measured: dict = field(default_factory=dict)

    def line(self):
        vals = ", ".join(f"{k}={_fmt(v)}" for k, v in self.measured.items())
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d} {self.name}: {vals}"

    def as_dict(self):
        return {"number": self.number, "name": self.name, "pass": self.passed,
                "measured": {k: _jsonable(v) for k, v in self.measured.items()}}


def _fmt(v):
    if isinstance(v, float):
        return f"{v:.3e}"
    return str(v)


def _jsonable(v):
    if isinstance(v, (np.floating, float)):
        return float(v)
    if isinstance(v, (np.bool_, bool)):
        return bool(v)
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return v


def c01_quadrature():
    g = build_grid(1.0)
    e1 = abs(np.sum(g.weights * np.abs(g.nodes) ** -0.5) - 4.0)
    e2 = abs(np.sum(g.weights * np.abs(g.nodes) ** 0.5) - 4.0 / 3.0)
    return Criterion(1, "quadrature oracle", e1 <= 1e-6 and e2 <= 1e-6,
                     {"err_inv_sqrt": e1, "err_sqrt": e2, "tol": 1e-6})


def c02_isometry(trials=100):
    worst = 0.0
    rng = np.random.default_rng([SEED, 2])
    sets = [(1.0, 0.25), (2.0, 0.3), (1.0, 1.7)]
    for i in range(trials):
        a, s = sets[i % 3]
        f = random_function(make_params(a, s), rng, "rough")
        lhs = pw_norm(f)
        rhs = weighted_norm(frac_laplacian(f, s).g, 0.0)
        worst = max(worst, abs(lhs - rhs) / lhs)
    return Criterion(2, "isometry", worst <= 1e-12, {"max_rel_diff": worst, "tol": 1e-12})


def c03_rkhs():
    rng = np.random.default_rng([SEED, 3])
    resid = {}
    for a, s in ((1.0, 0.25), (1.0, 1.7)):
        f = random_function(make_params(a, s), rng, "rough")
        resid[s] = check_reproducing(f, RKHS_POINTS).measured
    k00 = kernel_eval(make_params(1.0, 0.25), 0, 0)
    k_err = abs(k00 - 2.0 / math.pi)
    prm = make_params(1.0, 1.7)
    f = random_function(prm, rng, "rough")
    k0 = max(abs(kernel_eval(prm, 0, z)) for z in RKHS_POINTS)
    f0 = abs(pw_inner(f, _kernel_fn(prm, 0, f.grid)))
    vanish = max(k0, f0 / pw_norm(f))
    ok = max(resid.values()) <= 1e-8 and k_err <= 1e-6 and vanish <= 1e-12
    return Criterion(3, "RKHS identity", ok, {
        "resid_s0.25": resid[0.25], "resid_s1.7": resid[1.7],
        "K00_err": k_err, "K0_vanish": vanish})


def _kernel_fn(params, z, grid):
    from .kernels import kernel_density
    return kernel_density(params, z, grid)


def c04_onb():
    worst = 0.0
    for s in (0.3, 1.7):
        prm = make_params(2.0, s)
        grid = build_grid(2.0)
        psis = [basis_psi(prm, n, grid) for n in range(-5, 6)]
        G = np.array([[pw_inner(u, v) for v in psis] for u in psis])
        worst = max(worst, float(np.max(np.abs(G - np.eye(11)))))
    return Criterion(4, "ONB", worst <= 1e-10, {"max_gram_dev": worst, "tol": 1e-10})


def _sampling_member(a, s, N, seed, family="laplacian-smooth"):
    """Seeded member on a grid resolving the lattice up to N, plus its 4x twin."""
    rng = np.random.default_rng(seed)
    prof = smooth_profile(rng, a, s, laplacian=(family == "laplacian-smooth"))
    prm = make_params(a, s)
    panels = panels_for_range(a, N * math.pi / a)
    g = build_grid(a, panels)
    gd = build_grid(a, 4 * panels)
    return (FracPWFunction(prm, SpectralDensity(g, prof(g.nodes))),
            FracPWFunction(prm, SpectralDensity(gd, prof(gd.nodes))))


def c05_sampling():
    a, s = 2.0, 0.3
    f, fd = _sampling_member(a, s, 1024, [SEED, 5])
    res = resolve_norm_constant(f, fd, 1024)
    dense = pw_norm(fd)
    nrm = norm_from_samples(sample_laplacian(f, 512))
    norm_err = abs(nrm - dense) / dense
    rejected = norm_from_samples(sample_laplacian(f, 512), a / math.pi)
    f2, _ = _sampling_member(a, s, 256, [SEED, 5])
    prm = f2.params
    errs = {}
    for N in (64, 256):
        rec = reconstruct_from_samples(sample_laplacian(f2, N), prm, f2.grid)
        errs[N] = pw_norm(f2 - rec) / pw_norm(f2)
    ok = (res.decisive and res.winner == "pi/a" and norm_err <= 1e-3
          and errs[256] <= 1e-3 and errs[256] < errs[64])
    return Criterion(5, "sampling identities", ok, {
        "measured_constant": res.measured, "winner": res.winner,
        "rel_to_winner": abs(res.measured / res.pi_over_a - 1.0),
        "norm_rel_err_N512": norm_err,
        "rejected_constant_ratio": (rejected / dense) ** 2,
        "recon_err_N64": errs[64], "recon_err_N256": errs[256]})


def c06_sinc():
    f, _ = _sampling_member(1.0, 0.25, 256, [SEED, 6], family="smooth")
    zs = np.linspace(-3.0, 3.0, 61)
    exact = synth_eval(f, zs)
    norm = pw_norm(f)
    errs = {N: float(np.max(np.abs(sinc_eval(sample_plain(f, N), zs) - exact))) / norm
            for N in (64, 256)}
    ok = errs[256] <= 5e-3 and errs[256] < errs[64]
    return Criterion(6, "sinc reconstruction", ok,
                     {"err_N64": errs[64], "err_N256": errs[256], "tol": 5e-3})


def c07_bernstein(trials=100):
    r = run_suite("bernstein", SuiteConfig(seed=SEED, trials=trials))
    ratios = [t["ratio"] for t in r["trials"]]
    ok = all(x <= 1 + 5e-3 for x in ratios) and r["near_extremal"]["ratio"] >= 0.96
    return Criterion(7, "Bernstein", ok, {
        "trials": len(ratios), "max_ratio": max(ratios),
        "near_extremal": r["near_extremal"]["ratio"]})


def c08_plancherel_polya(trials=100):
    r = run_suite("pp", SuiteConfig(seed=SEED, trials=trials))
    ratios = [t["ratio"] for t in r["trials"]]
    ok = (all(x <= 1 + 5e-3 for x in ratios)
          and r["spectral_max_excess"] <= 1e-12
          and r["near_extremal"]["ratio"] >= 0.97)
    return Criterion(8, "Plancherel-Polya", ok, {
        "trials": len(ratios), "max_ratio": max(ratios),
        "spectral_excess": r["spectral_max_excess"],
        "near_extremal": r["near_extremal"]["ratio"]})


def c09_type(trials=10):
    rng = np.random.default_rng([SEED, 9])
    slopes = {}
    ok = True
    for a, s in ((1.0, 0.25), (2.0, 0.3)):
        prm = make_params(a, s)
        vals = [estimate_type(random_function(prm, rng, "full-band")).measured
                for _ in range(trials)]
        slopes[a] = (min(vals), max(vals))
        ok &= max(vals) <= a + 0.05 and min(vals) >= a - 0.1
    return Criterion(9, "exponential type", bool(ok), {
        "a1_range": list(slopes[1.0]), "a2_range": list(slopes[2.0])})


def c10_projection(trials=100, bound_seeds=50):
    rng = np.random.default_rng([SEED, 10])
    idem = 0.0
    excess = -np.inf
    for i in range(trials):
        a, s = ((1.0, 0.25), (1.0, 1.7))[i % 2]
        wide = make_params(2 * a, s)
        fam = "rough" if i % 4 < 2 else "smooth"
        fw = random_function(wide, rng, fam)
        target = make_params(a, s)
        p1 = project(fw, target)
        p2 = project(p1, target)
        idem = max(idem, float(np.max(np.abs(p2.values - p1.values))) /
                   max(1.0, float(np.max(np.abs(p1.values)))))
        excess = max(excess, pw_norm(p1) / pw_norm(fw) - 1.0)
    drift = {}
    for a, s in ((1.0, 0.2), (1.0, 1.7)):
        for p in (2.0, 4.0):
            rep = check_projection_bound(range(bound_seeds), make_params(a, s, p), p)
            drift[f"s{s}_p{p:g}"] = rep.measured
    ok = idem <= 1e-10 and excess <= 1e-10 and max(drift.values()) <= 0.05
    return Criterion(10, "projection", ok, {
        "idempotence": idem, "norm_excess": excess, "max_drift": max(drift.values()),
        **{f"drift_{k}": v for k, v in drift.items()}})


def c11_frame_collapse():
    s = 0.25
    hs = [0.2 / 2 ** k for k in range(5)]
    rep = lai_experiment(s, 1.0, 2048, hs)
    ctx = rep.context
    target = 2 ** (2 * s)
    growth_ok = all(abs(r / target - 1) <= 0.15 for r in ctx["growth_ratios"])
    mono = all(q2 > q1 for (_, q1), (_, q2) in zip(rep.blowup, rep.blowup[1:]))
    ok = (growth_ok and mono and ctx["control_spread"] <= 0.10
          and abs(ctx["loglog_slope"] - 2 * s) <= 0.1 and ctx["status"] == "ok")
    return Criterion(11, "frame collapse", ok, {
        "growth_ratios": ctx["growth_ratios"], "target": target,
        "control_spread": ctx["control_spread"], "slope": ctx["loglog_slope"]})


def c12_equivalence():
    grid = build_grid(1.0)
    worst = 0.0
    for k in range(5):
        rng = np.random.default_rng([SEED, 12, k])
        lam = np.sort(rng.uniform(-20.0, 20.0, 9))
        worst = max(worst, equivalence_check(0.25, lam, grid).measured)
    return Criterion(12, "frame equivalence", worst <= 1e-10,
                     {"max_entry_diff": worst, "tol": 1e-10})


def c13_determinism():
    import tempfile
    from pathlib import Path
    from .cli import main
    blobs, codes = [], []
    with tempfile.TemporaryDirectory() as d:
        for k in range(2):
            out = Path(d) / f"run{k}.json"
            codes.append(main(["verify", "--suite", "all", "--seed", str(SEED),
                               "--json", str(out), "--quiet"]))
            blobs.append(out.read_bytes())
    same = blobs[0] == blobs[1]
    return Criterion(13, "determinism", same, {"bytes": len(blobs[0]),
                                               "exit_codes": codes})


CRITERIA = (c01_quadrature, c02_isometry, c03_rkhs, c04_onb, c05_sampling,
            c06_sinc, c07_bernstein, c08_plancherel_polya, c09_type,
            c10_projection, c11_frame_collapse, c12_equivalence, c13_determinism)


def run_all(echo=None):
    out = []
    for crit in CRITERIA:
        c = crit()
        if echo:
            echo(c.line())
        out.append(c)
    return out
