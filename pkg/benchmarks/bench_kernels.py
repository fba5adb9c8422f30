"""Compiled versus pure-Python kernels on double-precision workloads.

Each kernel runs on identical inputs through both backends; outputs are
checked for bit-identity before timing. The end-to-end section builds
every row of the bundled linear table in double with each backend.

    python benchmarks/bench_kernels.py [--repeat 5]
"""

import argparse
import math
import random
import timeit

from padecheb import _pykernels, arith, kernels
from padecheb.cli import published
from padecheb.methods import ApproxSpec


def _workloads(rng):
    coeffs = [rng.uniform(-1, 1) for _ in range(20)]
    xs = [-1 + 2 * i / 1999 for i in range(2000)]
    numer = [rng.uniform(-1, 1) for _ in range(6)]
    denom = [2.0] + [rng.uniform(-0.3, 0.3) for _ in range(5)]
    size = 24
    rows = [[rng.uniform(-1, 1) for _ in range(size)] for _ in range(size)]
    rhs = [rng.uniform(-1, 1) for _ in range(size)]
    s = 256
    us = [math.cos((2 * k + 1) * math.pi / (2 * s)) for k in range(s)]
    gs = [math.exp(u) for u in us]
    return {
        "horner (deg 19)": lambda k: k.horner(coeffs, 0.37),
        "clenshaw (deg 19)": lambda k: k.clenshaw(coeffs, 0.37, True),
        "rational grid (2000 pts)": lambda k: k.rational_on_grid(numer, denom, xs, 1, True, 0, -1.0, 1.0),
        "LU solve (24x24)": lambda k: k.lu_solve(rows, rhs),
        "assemble linear (m=n=8, s=256)": lambda k: k.assemble_linear(us, us, gs, 8, 8, math.pi / s),
        "Chebyshev coeffs (40 of 256)": lambda k: k.chebyshev_coeffs(gs, us, 40, 2.0 / s),
    }


def _time(fn, repeat):
    number = 1
    while timeit.timeit(fn, number=number) < 0.05:
        number *= 2
    return min(timeit.repeat(fn, number=number, repeat=repeat)) / number


def _table_rows(ctx):
    for name, parity, m, n, *_ in published()["linear_table"]["rows"]:
        ApproxSpec(name, m, n, parity=parity).build(ctx)


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)
    compiled = kernels._compiled
    if compiled is None:
        print("compiled extension not built; nothing to compare (run pip install -e . --no-build-isolation)")
        return 1
    print(f"{'kernel':34} {'python':>11} {'cython':>11} {'speedup':>8}  identical")
    for label, call in _workloads(random.Random(0)).items():
        same = call(_pykernels) == call(compiled)
        tp = _time(lambda: call(_pykernels), args.repeat)
        tc = _time(lambda: call(compiled), args.repeat)
        print(f"{label:34} {tp * 1e6:9.1f}us {tc * 1e6:9.1f}us {tp / tc:7.1f}x  {same}")

    ctx = arith.double()
    timings = {}
    for label, backend in (("python", None), ("cython", compiled)):
        kernels._compiled = backend
        timings[label] = min(timeit.repeat(lambda: _table_rows(ctx), number=1, repeat=max(1, args.repeat // 2)))
    kernels._compiled = compiled
    print(f"\nlinear table, all rows in double: python {timings['python']:.3f}s, "
          f"cython {timings['cython']:.3f}s, speedup {timings['python'] / timings['cython']:.1f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
