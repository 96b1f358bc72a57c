"""Time the numba kernels against their numpy / pure-Python fallbacks.

    python benchmarks/bench_kernels.py --n 16 --repeat 3

Both paths are imported from the same module, so this runs regardless of
RELGRAPH_DISABLE_NUMBA.  Outputs are compared before timing.
"""

from __future__ import annotations

import argparse
import random
import time

import numpy as np

from relgraph import _kernels as K
from relgraph.graph import Graph


def random_masks(n: int, p: float, seed: int) -> np.ndarray:
    rng = random.Random(seed)
    g = Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p])
    return K.as_masks(g.bitmasks())


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(n: int, seed: int):
    adj = random_masks(n, 0.5, seed)
    sparse = random_masks(n + 6, 0.15, seed)
    closed = adj | (np.int64(1) << np.arange(n, dtype=np.int64))
    vec = K.independent_table_np(adj, n).astype(np.int64)
    yield "held_karp", (adj, n, 0), K.held_karp_table_np, "held_karp_table_nb"
    yield "closed_cover", (closed, n), K.closed_cover_table_np, "closed_cover_table_nb"
    yield "independent", (adj, n), K.independent_table_np, "independent_table_nb"
    yield "zeta", (vec, n), K.zeta_np, "zeta_nb"
    yield "mobius", (vec, n), K.mobius_np, "mobius_nb"
    yield "mis_search", (sparse, n + 6), K.mis_search_py, "mis_search_nb"


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=16)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    print(f"n={args.n}  numba available: {K.HAVE_NUMBA}  active backend: {K.BACKEND}")
    print(f"{'kernel':14} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for name, call_args, np_fn, nb_name in cases(args.n, args.seed):
        t_np = best_of(lambda: np_fn(*call_args), args.repeat)
        if not K.HAVE_NUMBA:
            print(f"{name:14} {t_np:10.4f} {'-':>10} {'-':>8}")
            continue
        nb_fn = getattr(K, nb_name)
        expected, got = np_fn(*call_args), nb_fn(*call_args)  # also triggers compilation
        if not np.array_equal(np.asarray(expected), np.asarray(got)):
            raise SystemExit(f"{name}: numba and numpy paths disagree")
        t_nb = best_of(lambda: nb_fn(*call_args), args.repeat)
        print(f"{name:14} {t_np:10.4f} {t_nb:10.4f} {t_np / t_nb:8.1f}x")


if __name__ == "__main__":
    main()
