"""Time the compiled kernels against the NumPy fallback.

    python3 benchmarks/bench_kernels.py [--cells 400 1600 6400] [--repeat 3]

Both backends run the same scenario from identical initial cells; the script
also checks that their outputs are bit-identical.
"""
import argparse
import time

import numpy as np

from elasto_waves.fixtures import FIXTURES, RUNNING_EXAMPLE
from elasto_waves.numerics import grid_for, initial_cells, kernels


def _time(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--cells", type=int, nargs="+", default=[400, 1600, 6400])
    ap.add_argument("--t", type=float, default=2.0)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--scenario", default=RUNNING_EXAMPLE, choices=sorted(FIXTURES))
    args = ap.parse_args(argv)

    if kernels.BACKEND != "cython":
        print("compiled extension not available; only the NumPy backend can be timed")
    s = FIXTURES[args.scenario]
    impls = {"python": kernels.python_backend}
    if kernels.BACKEND == "cython":
        impls["cython"] = kernels

    print(f"{'kernel':<8}{'cells':>8}{'steps':>8}" + "".join(f"{n + ' [s]':>14}" for n in impls) + f"{'speedup':>10}")
    for n in args.cells:
        g = grid_for(s, args.t, n)
        for kernel in ("fv", "glimm"):
            times, outs = {}, {}
            for name, impl in impls.items():
                def run(impl=impl):
                    u, sg = initial_cells(s, g)
                    if kernel == "fv":
                        steps = impl.fv_evolve(u, sg, s.k, g.dx, g.cfl, args.t)
                    else:
                        steps = impl.glimm_evolve(u, sg, s.k, g.dx, g.cfl, args.t, 0)
                    return steps, u, sg

                times[name], outs[name] = _time(run, args.repeat)
            steps = outs["python"][0]
            if len(outs) == 2:
                a, b = outs["python"], outs["cython"]
                if not (a[0] == b[0] and np.array_equal(a[1], b[1]) and np.array_equal(a[2], b[2])):
                    raise SystemExit(f"backends disagree for {kernel} at n={n}")
                speed = f"{times['python'] / times['cython']:>9.1f}x"
            else:
                speed = f"{'-':>10}"
            print(f"{kernel:<8}{n:>8}{steps:>8}" + "".join(f"{times[k]:>14.4f}" for k in impls) + speed)


if __name__ == "__main__":
    main()
