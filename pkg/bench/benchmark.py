"""Backend benchmark: compiled kernels vs the pure-numpy fallback.

Times the batched statistic kernels on synthetic null data and prints
one row per (kernel, n, batch). Run from the repo root::

    python bench/benchmark.py [--quick]
"""

import argparse
import time

import numpy as np

from mgfnorm import _dispatch
from mgfnorm.montecarlo import _batch_gram


def _make_batch(batch, n, d, seed):
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((batch, n, d))
    return _batch_gram(x)


def _time(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--quick", action="store_true", help="smaller grid")
    args = ap.parse_args()

    grid = [(64, 50, 2), (64, 100, 3)] if args.quick else [
        (256, 50, 2),
        (256, 100, 3),
        (64, 300, 3),
    ]
    cases = [
        ("t_stat", lambda k, g, s, d: k.t_stat(g, s, 5.0, d)),
        ("skewness_sums", lambda k, g, s, d: k.skewness_sums(g, s)),
        ("hj_stat", lambda k, g, s, d: k.hj_stat(g, s, 2.0, d)),
        ("hz_stat", lambda k, g, s, d: k.hz_stat(g, s, 1.0, d)),
        ("energy_stat", lambda k, g, s, d: k.energy_stat(g, s, d)),
    ]
    hjm_grid = [(8, 50, 2)] if args.quick else [(16, 50, 2), (4, 100, 3)]

    backends = {}
    for name in ("numba", "numpy"):
        try:
            _dispatch.set_backend(name)
            backends[name] = _dispatch.get_kernels()
        except ImportError:
            print("backend %s unavailable, skipping" % name)
    _dispatch.set_backend("auto")

    # compile everything outside the timed region
    g0, s0 = _make_batch(2, 20, 2, 0)
    for kern in backends.values():
        for _, call in cases:
            call(kern, g0, s0, 2)
        kern.hjm_stat(g0, s0, 5.0, 2)

    print("%-14s %6s %5s %4s" % ("kernel", "batch", "n", "d"), end="")
    for name in backends:
        print(" %12s" % name, end="")
    print(" %8s" % "speedup")

    for batch, n, d in grid:
        gram, sqn = _make_batch(batch, n, d, 1)
        for label, call in cases:
            times = {
                name: _time(call, kern, gram, sqn, d)
                for name, kern in backends.items()
            }
            _print_row(label, batch, n, d, backends, times)
    for batch, n, d in hjm_grid:
        gram, sqn = _make_batch(batch, n, d, 2)
        times = {
            name: _time(lambda k: k.hjm_stat(gram, sqn, 5.0, d), kern, repeat=1)
            for name, kern in backends.items()
        }
        _print_row("hjm_stat", batch, n, d, backends, times)


def _print_row(label, batch, n, d, backends, times):
    print("%-14s %6d %5d %4d" % (label, batch, n, d), end="")
    for name in backends:
        print(" %10.4fs" % times[name], end="")
    if len(times) == 2:
        t = list(times.values())
        print(" %7.1fx" % (max(t) / min(t)), end="")
    print()


if __name__ == "__main__":
    main()
