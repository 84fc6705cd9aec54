"""Command-line front end.

Every invocation is normalised into one experiment config (a JSON object with
keys command, params, grid, io, seed, options) before anything runs. A config
file given with ``--config`` supplies the base; command-line flags override
it. The config hash stamped on every output is computed from this
normalised form minus the ``io`` section, so moving an output file does not
change its contents.

Exit codes: 0 success, 1 a check or criterion failed, 2 config/schema or
argument error, 3 numeric failure.
"""
import argparse
import copy
import json
import math
import os
import sys

import numpy as np

from . import __version__, backend
from .errors import FracPWError, InvalidArgument, NumericError
from .io import (atomic_write, config_hash, dumps_json, eval_csv_text,
                 function_from_json, function_to_json, header_line,
                 kernel_csv_text, read_lambdas, read_samples, write_json,
                 write_samples)
from .quadrature import (DEFAULT_GRADING, DEFAULT_INNER_LEVELS, DEFAULT_PANELS,
                         build_grid, panels_for_range)

COMMANDS = ("synth", "eval", "kernel", "reconstruct", "norms", "verify", "frame",
            "paper-suite")
TOP_KEYS = {"command", "params", "grid", "io", "seed", "options"}
PARAM_KEYS = {"a", "s", "p"}
GRID_KEYS = {"panels", "grading", "inner_levels"}
IO_KEYS = {"input", "output", "report", "lambdas", "density", "samples"}
OPTION_KEYS = {
    "synth": {"g", "family", "eval", "samples"},
    "eval": {"eval", "axis", "laplacian"},
    "kernel": {"w", "z"},
    "reconstruct": {"mode", "eval"},
    "norms": {"p", "R", "tol"},
    "verify": {"suite", "trials"},
    "frame": {"mode", "window", "lattice", "levels", "N", "h0", "s"},
    "paper-suite": {"criteria"},
}
EVAL_KEYS = {"start", "stop", "num"}
DEFAULT_EVAL = {"start": -3.0, "stop": 3.0, "num": 61}


class ConfigError(Exception):
    """Schema violation; ``key`` is a dotted path to the offending entry."""

    def __init__(self, key, message):
        super().__init__(f"{key}: {message}")
        self.key = key


# ------------------------------------------------------------ schema

def _check_keys(obj, allowed, where):
    if not isinstance(obj, dict):
        raise ConfigError(where or "<root>", "expected a JSON object")
    for k in obj:
        if k not in allowed:
            raise ConfigError(f"{where}.{k}" if where else k, "unknown key")


def _number(obj, key, where, kind=float, required=False, default=None):
    if key not in obj:
        if required:
            raise ConfigError(f"{where}.{key}", "required")
        return default
    v = obj[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ConfigError(f"{where}.{key}", f"expected a number, got {v!r}")
    if kind is int and int(v) != v:
        raise ConfigError(f"{where}.{key}", f"expected an integer, got {v!r}")
    return kind(v)


def validate(config):
    """Strictly validate a config dict; raises ConfigError naming the key."""
    _check_keys(config, TOP_KEYS, "")
    cmd = config.get("command")
    if cmd not in COMMANDS:
        raise ConfigError("command", f"must be one of {', '.join(COMMANDS)}")
    _check_keys(config.get("params", {}), PARAM_KEYS, "params")
    for k in PARAM_KEYS:
        _number(config.get("params", {}), k, "params")
    grid = config.get("grid", {})
    _check_keys(grid, GRID_KEYS, "grid")
    _number(grid, "panels", "grid", int)
    _number(grid, "grading", "grid")
    _number(grid, "inner_levels", "grid", int)
    io_ = config.get("io", {})
    _check_keys(io_, IO_KEYS, "io")
    for k, v in io_.items():
        if v is not None and not isinstance(v, str):
            raise ConfigError(f"io.{k}", "expected a path string")
    if "seed" in config and config["seed"] is not None:
        _number(config, "seed", "", int)
    opts = config.get("options", {})
    _check_keys(opts, OPTION_KEYS[cmd], "options")
    if "eval" in opts:
        _check_keys(opts["eval"], EVAL_KEYS, "options.eval")
        for k in EVAL_KEYS:
            _number(opts["eval"], k, "options.eval", int if k == "num" else float)
    return config


def _require_seed(config):
    seed = config.get("seed")
    if seed is None:
        raise ConfigError("seed", "required for randomized commands")
    return int(seed)


def _params(config, need_s=True):
    from .pwcore import make_params
    p = config.get("params", {})
    a = _number(p, "a", "params", required=True)
    s = _number(p, "s", "params", required=need_s, default=0.0)
    try:
        return make_params(a, s, _number(p, "p", "params", default=2.0))
    except InvalidArgument as exc:
        raise ConfigError("params", str(exc)) from exc


def _grid(config, a, x_max=None):
    """Grid from config; panels default from FRACPW_PANELS, else sized for x_max."""
    g = config.get("grid", {})
    panels = g.get("panels")
    if panels is None:
        env = os.environ.get("FRACPW_PANELS")
        if env:
            try:
                panels = int(env)
            except ValueError:
                raise ConfigError("FRACPW_PANELS", f"not an integer: {env!r}") from None
        else:
            panels = DEFAULT_PANELS
            if x_max is not None:
                panels = max(panels, panels_for_range(a, x_max))
    try:
        return build_grid(a, int(panels), float(g.get("grading", DEFAULT_GRADING)),
                          int(g.get("inner_levels", DEFAULT_INNER_LEVELS)))
    except InvalidArgument as exc:
        raise ConfigError("grid", str(exc)) from exc


def _eval_points(opts):
    spec = {**DEFAULT_EVAL, **opts.get("eval", {})}
    if spec["num"] < 1:
        raise ConfigError("options.eval.num", "must be >= 1")
    return np.linspace(spec["start"], spec["stop"], int(spec["num"]))


def _complex_list(v, key):
    try:
        return [complex(x) if isinstance(x, (int, float)) else complex(x[0], x[1])
                for x in v]
    except (TypeError, IndexError, ValueError):
        raise ConfigError(key, "expected a list of numbers or [re, im] pairs") from None


# ------------------------------------------------------------ output

class Context:
    def __init__(self, config, quiet=False):
        self.config = config
        self.quiet = quiet
        self.echo = {k: v for k, v in config.items() if k != "io"}
        self.hash = config_hash(self.echo)

    def say(self, text):
        if not self.quiet:
            print(text)

    def io(self, key):
        return self.config.get("io", {}).get(key)

    def emit_csv(self, text, key="output"):
        path = self.io(key)
        if path:
            atomic_write(path, text)
            self.say(f"wrote {path}")
        elif not self.quiet:
            sys.stdout.write(text)

    def emit_json(self, report, key="report"):
        report = {"version": __version__, "config_hash": self.hash,
                  "config": self.echo, **report}
        path = self.io(key)
        if path:
            write_json(path, report)
            self.say(f"wrote {path}")
        elif not self.quiet:
            sys.stdout.write(dumps_json(report))
        return report


# ------------------------------------------------------------ commands

def _load_function(ctx):
    path = ctx.io("input")
    if not path:
        raise ConfigError("io.input", "density JSON required")
    with open(path) as fh:
        data = json.load(fh)
    try:
        return function_from_json(data)
    except (KeyError, TypeError, InvalidArgument) as exc:
        raise ConfigError("io.input", f"bad density file: {exc}") from exc


def _synth_values(params, grid, opts, config):
    from .families import random_function
    from .pwcore import SpectralDensity, FracPWFunction
    spec = opts.get("g", "unit")
    xi = grid.nodes
    if spec == "unit":
        vals = np.ones_like(xi, dtype=np.complex128)
    elif spec == "zero":
        vals = np.zeros_like(xi, dtype=np.complex128)
    elif isinstance(spec, str) and spec.startswith("power:"):
        try:
            t = float(spec[6:])
        except ValueError:
            raise ConfigError("options.g", f"bad exponent in {spec!r}") from None
        vals = np.abs(xi).astype(np.complex128) ** t
    elif spec == "random":
        rng = np.random.default_rng(_require_seed(config))
        family = opts.get("family", "smooth")
        try:
            return random_function(params, rng, family, grid)
        except InvalidArgument as exc:
            raise ConfigError("options.family", str(exc)) from exc
    else:
        raise ConfigError("options.g", "expected unit, zero, power:T or random")
    return FracPWFunction(params, SpectralDensity(grid, vals))


def cmd_synth(ctx):
    from .sampling import sample_laplacian, sample_plain
    cfg, opts = ctx.config, ctx.config.get("options", {})
    params = _params(cfg)
    x = _eval_points(opts)
    samp = opts.get("samples")
    x_max = float(np.max(np.abs(x)))
    if samp:
        _check_keys(samp, {"N", "kind"}, "options.samples")
        N = _number(samp, "N", "options.samples", int, required=True)
        x_max = max(x_max, N * math.pi / params.a)
    grid = _grid(cfg, params.a, x_max)
    f = _synth_values(params, grid, opts, cfg)
    header = header_line(ctx.echo, grid)
    ctx.emit_csv(eval_csv_text(x, f(x), header))
    if ctx.io("density"):
        write_json(ctx.io("density"), function_to_json(f))
        ctx.say(f"wrote {ctx.io('density')}")
    if samp:
        kind = samp.get("kind", "laplacian-samples")
        if kind == "laplacian-samples":
            s = sample_laplacian(f, N)
        elif kind == "plain-samples":
            s = sample_plain(f, N)
        else:
            raise ConfigError("options.samples.kind",
                              "expected laplacian-samples or plain-samples")
        path = ctx.io("samples")
        if not path:
            raise ConfigError("io.samples", "required when options.samples is set")
        write_samples(path, s, header)
        ctx.say(f"wrote {path}")
    return 0


def cmd_eval(ctx):
    from .pwcore import frac_laplacian
    opts = ctx.config.get("options", {})
    f = _load_function(ctx)
    t = opts.get("laplacian")
    if t is not None:
        f = frac_laplacian(f, float(t))
    x = _eval_points(opts)
    axis = opts.get("axis", "real")
    if axis == "real":
        z = x
    elif axis == "imag":
        z = 1j * x
    else:
        raise ConfigError("options.axis", "expected real or imag")
    ctx.emit_csv(eval_csv_text(z, f(z), header_line(ctx.echo, f.grid)))
    return 0


def cmd_kernel(ctx):
    from .kernels import kernel_point
    from .verify import RKHS_POINTS
    cfg, opts = ctx.config, ctx.config.get("options", {})
    params = _params(cfg)
    ws = _complex_list(opts.get("w", RKHS_POINTS), "options.w")
    zs = _complex_list(opts.get("z", RKHS_POINTS), "options.z")
    x_max = max(abs(v) for v in ws + zs)
    grid = _grid(cfg, params.a, max(x_max, 1.0))
    pts = [kernel_point(params, w, z, grid) for w in ws for z in zs]
    ctx.emit_csv(kernel_csv_text(pts, header_line(ctx.echo, grid)))
    return 0


def cmd_reconstruct(ctx):
    from .sampling import LAPLACIAN, PLAIN, reconstruct_from_samples, sinc_eval
    cfg, opts = ctx.config, ctx.config.get("options", {})
    path = ctx.io("input")
    if not path:
        raise ConfigError("io.input", "sample CSV required")
    try:
        samples = read_samples(path)
    except (OSError, KeyError, ValueError) as exc:
        raise ConfigError("io.input", f"bad sample file: {exc}") from exc
    x = _eval_points(opts)
    mode = opts.get("mode", "psi" if samples.kind == LAPLACIAN else "sinc")
    if mode == "sinc":
        if samples.kind != PLAIN:
            raise ConfigError("options.mode", "sinc mode needs plain-samples")
        values, grid = sinc_eval(samples, x), None
    elif mode == "psi":
        params = _params(cfg)
        if params.a != samples.a:
            raise ConfigError("params.a", f"samples were taken with a={samples.a}")
        grid = _grid(cfg, params.a,
                     max(float(np.max(np.abs(x))), samples.N * math.pi / params.a))
        f = reconstruct_from_samples(samples, params, grid)
        values = f(x)
        if ctx.io("density"):
            write_json(ctx.io("density"), function_to_json(f))
            ctx.say(f"wrote {ctx.io('density')}")
    else:
        raise ConfigError("options.mode", "expected psi or sinc")
    ctx.emit_csv(eval_csv_text(x, values, header_line(ctx.echo, grid)))
    return 0


def cmd_norms(ctx):
    from .pwcore import esp_norm_info, pw_norm
    opts = ctx.config.get("options", {})
    f = _load_function(ctx)
    ps = opts.get("p", [f.params.p])
    ps = [ps] if isinstance(ps, (int, float)) else ps
    tol = float(opts.get("tol", 1e-3))
    R = opts.get("R")
    out = {"pw_norm": pw_norm(f) if f.params.p == 2 else None, "esp": []}
    for p in ps:
        if not 1 < float(p) < math.inf:
            raise ConfigError("options.p", f"p must lie in (1, inf), got {p!r}")
        out["esp"].append(esp_norm_info(f, float(p), R, tol).as_dict())
    ctx.emit_json(out)
    return 0


def cmd_verify(ctx):
    from .verify import SUITES, SuiteConfig, run_suite
    cfg, opts = ctx.config, ctx.config.get("options", {})
    suite = opts.get("suite", "all")
    if suite not in SUITES + ("all",):
        raise ConfigError("options.suite", f"expected one of {SUITES + ('all',)}")
    seed = _require_seed(cfg)
    panels = cfg.get("grid", {}).get("panels") or int(
        os.environ.get("FRACPW_PANELS", DEFAULT_PANELS))
    scfg = SuiteConfig(seed=seed, trials=int(opts.get("trials", 100)),
                       panels=int(panels))
    rep = run_suite(suite, scfg)
    ctx.emit_json(rep)
    if suite == "all":
        for r in rep["suites"]:
            ctx.say(f"[{'PASS' if r['pass'] else 'FAIL'}] {r['claim']}")
    else:
        ctx.say(f"[{'PASS' if rep['pass'] else 'FAIL'}] {rep['claim']}")
    return 0 if rep["pass"] else 1


def _jsonable_float(x):
    return float(x) if np.isfinite(x) else None


def cmd_frame(ctx):
    from .frames import (WindowSpec, frame_bounds, gram_matrix, lai_experiment)
    cfg, opts = ctx.config, ctx.config.get("options", {})
    mode = opts.get("mode", "bounds")
    if mode == "lai":
        params = cfg.get("params", {})
        a = _number(params, "a", "params", default=1.0)
        s = _number(opts, "s", "options", default=_number(params, "s", "params",
                                                          default=0.25))
        levels = _number(opts, "levels", "options", int, default=4)
        h0 = _number(opts, "h0", "options", default=0.2 * a)
        N = _number(opts, "N", "options", int, default=2048)
        hs = [h0 / 2 ** k for k in range(levels + 1)]
        try:
            rep = lai_experiment(s, a, N, hs, cfg.get("grid", {}).get("panels"))
        except InvalidArgument as exc:
            raise ConfigError("options", str(exc)) from exc
        d = rep.as_dict()
        d.pop("lambdas")
        d["sigma_min_sq"] = _jsonable_float(d["sigma_min_sq"])
        ctx.emit_json(d)
        for (h, q), r in zip(rep.blowup[1:], rep.context["growth_ratios"]):
            ctx.say(f"h={h:.5g} quotient={q:.6g} ratio={r:.4f}")
        return 0
    if mode != "bounds":
        raise ConfigError("options.mode", "expected bounds or lai")
    a = _number(cfg.get("params", {}), "a", "params", required=True)
    try:
        window = WindowSpec.parse(opts.get("window", "const"))
    except InvalidArgument as exc:
        raise ConfigError("options.window", str(exc)) from exc
    if ctx.io("lambdas"):
        try:
            lam = read_lambdas(ctx.io("lambdas"))
        except OSError as exc:
            raise ConfigError("io.lambdas", str(exc)) from exc
    elif "lattice" in opts:
        n = _number(opts, "lattice", "options", int)
        lam = np.arange(-n, n + 1) * math.pi / a
    else:
        raise ConfigError("io.lambdas", "give a lambda file or options.lattice")
    if lam.size == 0:
        raise ConfigError("io.lambdas", "no lambda values")
    grid = _grid(cfg, a, max(float(np.max(np.abs(lam))), 1.0))
    try:
        G = gram_matrix(window, lam, grid)
        smin, smax = frame_bounds(window, lam, grid, interior=lam.size > 1)
    except InvalidArgument as exc:
        raise ConfigError("io.lambdas", str(exc)) from exc
    ctx.emit_json({"window": window.label(), "lambdas": lam.tolist(),
                   "grid": grid.spec(), "sigma_min_sq": smin, "sigma_max_sq": smax,
                   "gram": {"re": G.real.tolist(), "im": G.imag.tolist()}})
    ctx.say(f"sigma_min^2={smin:.6g} sigma_max^2={smax:.6g}")
    return 0


def cmd_paper_suite(ctx):
    from .acceptance import CRITERIA
    opts = ctx.config.get("options", {})
    wanted = opts.get("criteria")
    results = []
    for k, crit in enumerate(CRITERIA, start=1):
        if wanted and k not in wanted:
            continue
        c = crit()
        ctx.say(c.line())
        results.append(c)
    ok = all(c.passed for c in results)
    rep = {"pass": ok, "backend": backend.BACKEND,
           "criteria": [c.as_dict() for c in results]}
    if ctx.io("report"):
        ctx.emit_json(rep)
    ctx.say(f"{sum(c.passed for c in results)}/{len(results)} criteria passed")
    return 0 if ok else 1


HANDLERS = {"synth": cmd_synth, "eval": cmd_eval, "kernel": cmd_kernel,
            "reconstruct": cmd_reconstruct, "norms": cmd_norms,
            "verify": cmd_verify, "frame": cmd_frame,
            "paper-suite": cmd_paper_suite}


def run(config, quiet=False):
    """Validate and execute a config; returns the process exit status."""
    try:
        config = validate(copy.deepcopy(config))
        return HANDLERS[config["command"]](Context(config, quiet))
    except ConfigError as exc:
        print(f"fracpw: config error at {exc}", file=sys.stderr)
        return 2
    except (NumericError, ArithmeticError, np.linalg.LinAlgError) as exc:
        module = type(exc).__module__.split(".")[-1]
        print(f"fracpw: numeric error ({config.get('command')}, {module}): {exc}",
              file=sys.stderr)
        return 3
    except FracPWError as exc:
        print(f"fracpw: invalid input: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"fracpw: {exc}", file=sys.stderr)
        return 2


# ------------------------------------------------------------ argparse

def _common():
    p = argparse.ArgumentParser(add_help=False)
    S = argparse.SUPPRESS
    p.add_argument("--config", default=S, help="experiment config JSON")
    p.add_argument("--out", default=S, help="primary output path (CSV)")
    p.add_argument("--seed", type=int, default=S, help="random seed")
    p.add_argument("--json", default=S, help="JSON report path")
    p.add_argument("--quiet", action="store_true", default=S)
    return p


def _param_flags(p):
    S = argparse.SUPPRESS
    p.add_argument("--a", type=float, default=S, help="bandwidth")
    p.add_argument("--s", type=float, default=S, help="fractional order")
    p.add_argument("--p", type=float, default=S, help="integrability exponent")
    p.add_argument("--panels", type=int, default=S)
    p.add_argument("--grading", type=float, default=S)
    p.add_argument("--inner-levels", type=int, default=S, dest="inner_levels")


def _eval_flags(p):
    S = argparse.SUPPRESS
    p.add_argument("--start", type=float, default=S)
    p.add_argument("--stop", type=float, default=S)
    p.add_argument("--num", type=int, default=S)


def build_parser():
    common = _common()
    ap = argparse.ArgumentParser(prog="fracpw", parents=[common],
                                 description="Fractional Paley-Wiener toolkit.")
    ap.add_argument("--version", action="version", version=f"fracpw {__version__}")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND")
    S = argparse.SUPPRESS

    p = sub.add_parser("synth", parents=[common], help="synthesise and evaluate")
    _param_flags(p)
    _eval_flags(p)
    p.add_argument("--g", default=S, help="unit, zero, power:T or random")
    p.add_argument("--family", default=S)
    p.add_argument("--density", default=S, help="write the density JSON here")
    p.add_argument("--samples", default=S, help="write lattice samples here")
    p.add_argument("--sample-N", type=int, default=S, dest="sample_N")
    p.add_argument("--sample-kind", default=S, dest="sample_kind",
                   choices=("laplacian-samples", "plain-samples"))

    p = sub.add_parser("eval", parents=[common], help="evaluate a density file")
    p.add_argument("--input", default=S)
    _eval_flags(p)
    p.add_argument("--axis", default=S, choices=("real", "imag"))
    p.add_argument("--laplacian", type=float, default=S,
                   help="apply the fractional Laplacian of this order first")

    p = sub.add_parser("kernel", parents=[common], help="reproducing kernel values")
    _param_flags(p)
    p.add_argument("--w", type=complex, nargs="+", default=S)
    p.add_argument("--z", type=complex, nargs="+", default=S)

    p = sub.add_parser("reconstruct", parents=[common], help="rebuild from samples")
    _param_flags(p)
    _eval_flags(p)
    p.add_argument("--input", default=S, help="sample CSV (with .json sidecar)")
    p.add_argument("--mode", default=S, choices=("psi", "sinc"))
    p.add_argument("--density", default=S)

    p = sub.add_parser("norms", parents=[common], help="norms of a density file")
    p.add_argument("--input", default=S)
    p.add_argument("--norm-p", type=float, nargs="+", default=S, dest="norm_p")
    p.add_argument("--R", type=float, default=S)
    p.add_argument("--tol", type=float, default=S)

    p = sub.add_parser("verify", parents=[common], help="run a verification suite")
    p.add_argument("--suite", default=S,
                   choices=("bernstein", "pp", "type", "rkhs", "projection", "all"))
    p.add_argument("--trials", type=int, default=S)
    p.add_argument("--panels", type=int, default=S)

    p = sub.add_parser("frame", parents=[common], help="frame bounds / collapse")
    p.add_argument("mode", nargs="?", default=None, choices=("bounds", "lai"))
    p.add_argument("--a", type=float, default=S)
    p.add_argument("--s", type=float, default=S)
    p.add_argument("--window", default=S, help="const or pow:S")
    p.add_argument("--lambdas", default=S, help="CSV of real lambdas")
    p.add_argument("--lattice", type=int, default=S, help="use n pi/a, |n| <= N")
    p.add_argument("--report", default=S, help="alias of --json")
    p.add_argument("--levels", type=int, default=S)
    p.add_argument("--N", type=int, default=S)
    p.add_argument("--h0", type=float, default=S)
    p.add_argument("--panels", type=int, default=S)

    sub.add_parser("paper-suite", parents=[common], help="full acceptance battery")
    return ap


_FLAG_MAP = {
    # flag dest -> (section, key)
    "a": ("params", "a"), "s": ("params", "s"), "p": ("params", "p"),
    "panels": ("grid", "panels"), "grading": ("grid", "grading"),
    "inner_levels": ("grid", "inner_levels"),
    "out": ("io", "output"), "json": ("io", "report"), "report": ("io", "report"),
    "input": ("io", "input"), "lambdas": ("io", "lambdas"),
    "density": ("io", "density"), "samples": ("io", "samples"),
    "g": ("options", "g"), "family": ("options", "family"),
    "axis": ("options", "axis"), "laplacian": ("options", "laplacian"),
    "mode": ("options", "mode"), "norm_p": ("options", "p"),
    "R": ("options", "R"), "tol": ("options", "tol"),
    "suite": ("options", "suite"), "trials": ("options", "trials"),
    "window": ("options", "window"), "lattice": ("options", "lattice"),
    "levels": ("options", "levels"), "N": ("options", "N"),
    "h0": ("options", "h0"),
}


def config_from_args(args):
    """Merge a --config file (if any) with explicit flags into one config."""
    ns = vars(args)
    if "config" in ns:
        try:
            with open(ns["config"]) as fh:
                config = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ConfigError("<file>", f"invalid JSON: {exc}") from exc
        if not isinstance(config, dict):
            raise ConfigError("<root>", "expected a JSON object")
    else:
        config = {}
    cmd = ns.get("command")
    if cmd:
        if config.get("command") not in (None, cmd):
            raise ConfigError("command",
                              f"config says {config['command']!r}, flag says {cmd!r}")
        config["command"] = cmd
    if "seed" in ns:
        config["seed"] = ns["seed"]
    for dest, (section, key) in _FLAG_MAP.items():
        if dest not in ns:
            continue
        if section == "params" and cmd == "frame" and dest == "s":
            section = "options"
        if ns[dest] is None:
            continue
        config.setdefault(section, {})[key] = ns[dest]
    opts = config.get("options", {})
    eval_spec = {k: ns[k] for k in ("start", "stop", "num") if k in ns}
    if eval_spec:
        opts.setdefault("eval", {}).update(eval_spec)
    if "sample_N" in ns or "sample_kind" in ns:
        samp = opts.setdefault("samples", {})
        if "sample_N" in ns:
            samp["N"] = ns["sample_N"]
        if "sample_kind" in ns:
            samp["kind"] = ns["sample_kind"]
    for key in ("w", "z"):
        if key in ns:
            opts[key] = [[v.real, v.imag] for v in ns[key]]
    if opts:
        config["options"] = opts
    return config


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    quiet = getattr(args, "quiet", False)
    try:
        config = config_from_args(args)
    except ConfigError as exc:
        print(f"fracpw: config error at {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"fracpw: {exc}", file=sys.stderr)
        return 2
    if "command" not in config:
        parser.print_help(sys.stderr)
        return 2
    return run(config, quiet)


if __name__ == "__main__":
    sys.exit(main())
