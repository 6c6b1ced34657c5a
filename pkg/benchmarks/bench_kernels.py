"""Time the numpy and numba variant of every kernel on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--scale 1.0]

Each kernel is called once per variant before timing so numba compilation
(or cache loading) is excluded.  Outputs are compared so a speedup never
hides a wrong answer.
"""

import argparse
import time

import numpy as np

from bsmls import _kernels
from bsmls._accel import HAVE_NUMBA


def cases(scale, rng):
    ns = max(10, int(200_000 * scale))
    t = rng.uniform(0.0, 14.0, ns)
    yield "cox_de_boor_table", (t, 14, 4)
    n, r = 50, 4
    tc = rng.uniform(r - 1, n + 1, ns)
    yield "span_basis", (tc, n, r)
    yield "curve_values", (tc, rng.normal(size=(n + 1, 2)), n, r)
    side = max(4, int(300 * np.sqrt(scale)))
    u = np.repeat(np.linspace(r - 1, n + 1, side), side)
    v = np.tile(np.linspace(r - 1, n + 1, side), side)
    yield "surface_values", (u, v, rng.normal(size=(n + 1, n + 1, 3)), n, r)
    p = max(11, int(1001 * np.sqrt(scale)))
    design = np.column_stack([np.ones(6), rng.uniform(-1, 1, 6)])
    axes = np.vstack([np.linspace(-2, 2, p), np.linspace(-3, 3, p)])
    yield "grid_scan", (axes, design, rng.normal(size=6), rng.uniform(0.1, 1, 6))


def best_time(func, args, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        func(*args)
        times.append(time.perf_counter() - start)
    return min(times)


def same(a, b):
    if isinstance(a, tuple):
        return all(same(x, y) for x, y in zip(a, b))
    if np.ndim(a) == 0:
        return bool(np.isclose(a, b, rtol=1e-12, atol=1e-12))
    return bool(np.allclose(a, b, rtol=1e-12, atol=1e-12))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    parser.add_argument("--scale", type=float, default=1.0, help="multiply problem sizes")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args(argv)
    if not HAVE_NUMBA:
        print("numba is not importable; nothing to compare")
        return 1

    rng = np.random.default_rng(args.seed)
    print(f"{'kernel':<20}{'numpy [s]':>12}{'numba [s]':>12}{'speedup':>10}  match")
    for name, call_args in cases(args.scale, rng):
        numpy_fn, numba_fn = _kernels.VARIANTS[name]
        agree = same(numpy_fn(*call_args), numba_fn(*call_args))
        t_np = best_time(numpy_fn, call_args, args.repeat)
        t_nb = best_time(numba_fn, call_args, args.repeat)
        print(f"{name:<20}{t_np:>12.5f}{t_nb:>12.5f}{t_np / t_nb:>9.1f}x  {agree}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
