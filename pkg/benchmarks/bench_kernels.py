#!/usr/bin/env python3
"""Benchmark the numba-compiled kernels against the pure-numpy fallback.

Runs each hot kernel on identical inputs through both paths, checks the
outputs are bit-identical, and prints per-kernel timings with speedups.

    python benchmarks/bench_kernels.py [--budget N] [--repeats K]
"""

import argparse
import math
import time

import numpy as np

from prefnet import kernels
from prefnet.evolution import EvolutionConfig, Model, evolve


def _time(fn, repeats):
    best = math.inf
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def bench_walk(compiled, budget, repeats):
    net = evolve(EvolutionConfig(model=Model.GLOBAL, n_nodes=400, timesteps=300,
                                 m_events=3, increment=10.0, m0_links=5, seed=1))
    rng = np.random.default_rng(2)
    initiators = np.sort(rng.choice(400, size=100, replace=False)).astype(np.int64)
    chain_length = 20
    uniforms = rng.random(math.ceil(budget / chain_length) + budget)
    eta = 0.3

    def run(kernel):
        counts = np.zeros((400, 400))
        status = kernel(net.weights, net.degrees, eta, initiators, chain_length,
                        budget, uniforms, counts)
        assert status == kernels.STATUS_OK
        return counts

    reference = run(compiled["walk_imprint"])  # also warms the jit
    assert np.array_equal(reference, run(kernels.walk_imprint_numpy))
    t_jit = _time(lambda: run(compiled["walk_imprint"]), repeats)
    t_np = _time(lambda: run(kernels.walk_imprint_numpy), repeats)
    return f"walk_imprint ({budget} steps)", t_jit, t_np


def bench_evolution(compiled, name, repeats):
    n, n_events, x = 400, 1500, 10.0
    rng = np.random.default_rng(3)
    if name == "global_events":
        base = np.zeros((n, n))
        base[0, 1] = base[1, 0] = 1.0
        jit_fn, np_fn = compiled["global_events"], kernels.run_global_events_numpy
    else:
        base = np.full((n, n), 1.01)
        np.fill_diagonal(base, 0.0)
        jit_fn, np_fn = compiled["local_events"], kernels.run_local_events_numpy
    uniforms = rng.random(2 * n_events)

    def run(kernel):
        w = base.copy()
        d = w.sum(axis=1)
        assert kernel(w, d, x, uniforms) == kernels.STATUS_OK
        return w

    reference = run(jit_fn)
    assert np.array_equal(reference, run(np_fn))
    t_jit = _time(lambda: run(jit_fn), repeats)
    t_np = _time(lambda: run(np_fn), repeats)
    return f"{name} ({n_events} events)", t_jit, t_np


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--budget", type=int, default=100_000,
                        help="walk steps per imprint benchmark (default 100000)")
    parser.add_argument("--repeats", type=int, default=3,
                        help="timing repetitions, best-of (default 3)")
    args = parser.parse_args()

    compiled = kernels.numba_kernels()
    if compiled is None:
        raise SystemExit("numba is not available; nothing to compare against")

    print("compiling kernels (first call includes jit time)...")
    rows = [
        bench_walk(compiled, args.budget, args.repeats),
        bench_evolution(compiled, "global_events", args.repeats),
        bench_evolution(compiled, "local_events", args.repeats),
    ]

    print()
    print(f"{'kernel':<32} {'numba':>12} {'numpy':>12} {'speedup':>9}")
    print("-" * 69)
    for label, t_jit, t_np in rows:
        print(f"{label:<32} {t_jit * 1e3:>9.2f} ms {t_np * 1e3:>9.2f} ms {t_np / t_jit:>8.1f}x")
    print("-" * 69)
    print("outputs verified bit-identical across both paths")


if __name__ == "__main__":
    main()
