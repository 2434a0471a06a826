#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Times the raw array kernels on large grids plus two end-to-end workloads
that are dominated by kernel evaluations: normalizing a perturbation (a
million-point sup scan) and verifying its vanishing moments (oscillatory
quadrature panels).

Usage:
    python benchmarks/bench_kernels.py [--size 1000000] [--repeats 5]
"""
import argparse
import math
import time

import numpy as np

from powerlindley import _kernels as kern
from powerlindley._kernels import pure
from powerlindley.distribution import PLParams
from powerlindley.stieltjes import PerturbationSpec, normalize, verify_vanishing_moments

try:
    from powerlindley._kernels import _core
except ImportError:
    _core = None


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def kernel_workloads(size):
    rng = np.random.default_rng(1)
    x = np.ascontiguousarray(np.exp(rng.uniform(math.log(1e-8), math.log(1e6), size)))
    u = np.ascontiguousarray(np.exp(rng.uniform(math.log(1e-6), math.log(60.0), size)))
    return [
        ("pdf grid", lambda impl: impl.pl_pdf_arr(0.3, 1.0, x)),
        ("survival grid", lambda impl: impl.pl_survival_arr(0.3, 1.0, x)),
        ("log-pdf grid", lambda impl: impl.pl_log_pdf_arr(0.3, 1.0, u)),
        ("perturbation H1 grid", lambda impl: impl.perturbation_raw_arr(1, 0.3, 1.0, 1.0, 0.4, x)),
        ("perturbation H3 grid", lambda impl: impl.perturbation_raw_arr(3, 0.3, 1.0, 1.0, 0.4, x)),
        ("damped sine grid", lambda impl: impl.damped_sine_arr(11.0, 2.0, 2.75, 0.0, u)),
    ]


def end_to_end_workloads():
    params = PLParams(0.3, 1.0)
    raw = PerturbationSpec("H1", params)

    def run_normalize():
        normalize(raw)

    spec = normalize(raw)

    def run_verification():
        verify_vanishing_moments(spec, 10)

    return [
        ("normalize (1e6-point sup scan)", run_normalize),
        ("vanishing moments k<=10", run_verification),
    ]


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=1_000_000,
                        help="array length for the kernel benchmarks")
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    if _core is None:
        print("compiled kernels are not built; install with Cython available "
              "to benchmark both implementations")
        return

    width = 34
    print(f"{'workload':<{width}}{'python':>12}{'compiled':>12}{'speedup':>10}")
    for name, work in kernel_workloads(args.size):
        t_py = best_of(lambda: work(pure), args.repeats)
        t_c = best_of(lambda: work(_core), args.repeats)
        print(f"{name:<{width}}{t_py * 1e3:>10.2f}ms{t_c * 1e3:>10.2f}ms"
              f"{t_py / t_c:>9.2f}x")

    for name, work in end_to_end_workloads():
        kern.set_backend("python")
        t_py = best_of(work, max(2, args.repeats // 2))
        kern.set_backend("compiled")
        t_c = best_of(work, max(2, args.repeats // 2))
        print(f"{name:<{width}}{t_py * 1e3:>10.2f}ms{t_c * 1e3:>10.2f}ms"
              f"{t_py / t_c:>9.2f}x")


if __name__ == "__main__":
    main()
