"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_backends.py [--repeat 5] [--nodes 2048] [--points 4096]
"""
import argparse
import timeit

import numpy as np

from fracpw import _core_py

try:
    from fracpw import _core
except ImportError:
    _core = None


def cases(nodes, points, rng):
    xi = np.sort(rng.uniform(-1, 1, nodes))
    c = rng.normal(size=nodes) + 1j * rng.normal(size=nodes)
    x = np.linspace(-200, 200, points)
    z = x + 0.5j
    idx = np.arange(-nodes // 2, nodes // 2 + 1, dtype=float)
    v = rng.normal(size=idx.size) + 1j * rng.normal(size=idx.size)
    t = rng.uniform(idx[0], idx[-1], points)
    return {
        "exp_sum real z, m=-1": lambda m: m.exp_sum(x, xi, c, -1),
        "exp_sum complex z, m=1": lambda m: m.exp_sum(z, xi, c, 1),
        "sinc_sum": lambda m: m.sinc_sum(t, idx, v),
    }


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--nodes", type=int, default=2048)
    ap.add_argument("--points", type=int, default=4096)
    args = ap.parse_args(argv)
    impls = {"python": _core_py}
    if _core is not None:
        impls["cython"] = _core
    else:
        print("compiled extension not built; timing the fallback only")
    rng = np.random.default_rng(0)
    print(f"{'kernel':<26}" + "".join(f"{k:>12}" for k in impls) + "   speedup")
    for name, fn in cases(args.nodes, args.points, rng).items():
        times = {}
        for key, mod in impls.items():
            fn(mod)  # warm-up
            times[key] = min(timeit.repeat(lambda: fn(mod), number=1, repeat=args.repeat))
        row = f"{name:<26}" + "".join(f"{times[k] * 1e3:>10.2f}ms" for k in impls)
        if "cython" in times:
            row += f"   {times['python'] / times['cython']:6.1f}x"
        print(row)


if __name__ == "__main__":
    main()
