"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 5]
"""
from __future__ import annotations

import argparse
import timeit

import numpy as np

from specirr import _kernels
from specirr.graph import complete_bipartite, cone, from_edges, is_connected, path, pineapple


def _random_connected(rng, n, p):
    while True:
        g = from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p])
        if is_connected(g):
            return g


def cases():
    rng = np.random.default_rng(1)
    adj_small = [_random_connected(rng, 10, 0.4).adjacency() for _ in range(200)]
    big = _random_connected(rng, 200, 0.05).adjacency()
    long_path = path(120).adjacency()
    clique_graphs = [pineapple(48, 20), cone(path(60)), complete_bipartite(30, 30)]
    clique_graphs += [_random_connected(rng, 40, 0.6) for _ in range(5)]
    pos7, pairs7 = _kernels.permutation_positions(7), _kernels.pair_list(7)

    def perron_small(impl):
        for a in adj_small:
            impl.perron_power(a, 1.0, 1e-12, 100000)

    def perron_big(impl):
        impl.perron_power(big, 1.0, 1e-12, 100000)
        impl.perron_power(long_path, 1.0, 1e-12, 200000)

    def clique(impl):
        for g in clique_graphs:
            impl.max_clique(g.rows, g.n)

    def classify7(impl):
        impl.classify_patterns(7, pos7, pairs7)

    return {
        "perron, 200 graphs n=10": perron_small,
        "perron, n=200 and path(120)": perron_big,
        "max clique, n<=61": clique,
        "classify all n=7 patterns": classify7,
    }


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    backends = _kernels.available_backends()
    names = sorted(backends)
    print(f"{'case':<30}" + "".join(f"{n:>12}" for n in names) + ("     speedup" if len(names) == 2 else ""))
    for label, fn in cases().items():
        times = {}
        for name in names:
            impl = backends[name]
            times[name] = min(timeit.repeat(lambda: fn(impl), number=1, repeat=args.repeat))
        row = f"{label:<30}" + "".join(f"{times[n] * 1e3:>10.1f}ms" for n in names)
        if len(names) == 2:
            row += f"{times['python'] / times['cython']:>11.1f}x"
        print(row)


if __name__ == "__main__":
    main()
