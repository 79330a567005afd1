#!/usr/bin/env python3
"""Time the pure-numpy backend against the compiled one.

Usage::

    python3 benchmarks/compare_backends.py [--repeat 7] [--grid 20000]

Each primitive is timed best-of-``repeat`` on both backends (when the
compiled one is importable), and a whole-pipeline summation is timed through
the public facade for each backend setting.  Results go to stdout as a
plain table; nothing here is a correctness check — parity lives in
``tests/test_backends.py``.
"""

import argparse
import timeit

import numpy as np

from finsum import backend
from finsum.kernels import recognize_pair
from finsum.laplace import sum_via_integral
from finsum.series import SeriesSpec


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def bench_primitives(repeat, grid):
    rng = np.random.default_rng(7)
    t = np.linspace(1e-3, 40.0, grid)
    t15 = np.linspace(1e-3, 40.0, 15)  # one quadrature panel's worth
    alpha = np.linspace(-60.0, 60.0, grid)
    mixed = rng.normal(scale=1e8, size=grid) + rng.normal(size=grid)

    cases = (
        ("phi_grid standard", lambda m: m.phi_grid(t, 50, 0, 1.0 + 0j, 0j)),
        ("phi_grid, 15-pt panel", lambda m: m.phi_grid(t15, 50, 0, 1.0 + 0j,
                                                       0j)),
        ("phi_grid shifted-alt", lambda m: m.phi_grid(t, 50, 3, 1.0 + 0j,
                                                      0.4 + 0.1j)),
        ("dirichlet_grid", lambda m: m.dirichlet_grid(alpha, 40)),
        ("neumaier_sum", lambda m: m.neumaier_sum(mixed)),
        ("hurwitz_head", lambda m: m.hurwitz_head(1.5, 0.7, 5000)),
    )

    from finsum import _purecore
    impls = [("pure", _purecore)]
    try:
        from finsum import _fastcore
        impls.append(("compiled", _fastcore))
    except ImportError:
        print("note: compiled backend not importable; timing pure only\n")

    print(f"primitive timings, best of {repeat}, grid={grid}")
    header = "  {:<22}" + "{:>12}" * len(impls) + "{:>10}"
    print(header.format("primitive", *[n for n, _ in impls],
                        "speedup" if len(impls) == 2 else ""))
    for label, call in cases:
        times = [best_of(lambda m=mod: call(m), repeat) for _, mod in impls]
        row = "  {:<22}".format(label)
        for s in times:
            row += f"{s * 1e6:>10.1f}us"
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.2f}x"
        print(row)


def bench_pipeline(repeat):
    kern = recognize_pair("1/(k^2+1)").kernel
    spec = SeriesSpec(lambda x: 1.0 / (x * x + 1.0), 50)

    def run():
        return sum_via_integral(spec, kern, tol=1e-11).value

    print(f"\nwhole pipeline (sum_via_integral, N=50), best of {repeat}")
    times = {}
    for name in backend.available():
        backend.set_backend(name)
        times[name] = best_of(run, repeat)
        print(f"  {name:<10}{times[name] * 1e3:>10.2f}ms  "
              f"(backend impl: {backend.active()})")
    backend.set_backend("auto")
    if len(times) == 2:
        pure, fast = times["pure"], times["compiled"]
        print(f"  speedup {pure / fast:.2f}x")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=7)
    ap.add_argument("--grid", type=int, default=20000)
    args = ap.parse_args()
    bench_primitives(args.repeat, args.grid)
    bench_pipeline(args.repeat)


if __name__ == "__main__":
    main()
