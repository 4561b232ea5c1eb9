"""Compare the numba and numpy kernel backends on the two hot paths.

Run from the repository root:

    python3 benchmarks/bench_backends.py
    python3 benchmarks/bench_backends.py --n 2000 --words 4000 --repeat 5

The numba column disappears (with a note) when that backend is unavailable,
for instance under TERNCWC_BACKEND=numpy.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from terncwc import _kernels
from terncwc.builder import build_subcode
from terncwc.core import pack_code
from terncwc.packing import _adjacency_bits, residual_graph


def _time(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_distance(impls, n: int, n_words: int, w: int, repeat: int, rng) -> dict[str, float]:
    # random weight-w codewords, duplicates fine: the scan cost is what matters
    from terncwc.core import Codeword, TernaryCode

    words = []
    for _ in range(n_words):
        supp = rng.choice(n, size=w - 1, replace=False)
        words.append(Codeword.from_parts(n, ones=supp[:-1].tolist(), twos=[int(supp[-1])]))
    pos, val = pack_code(TernaryCode(n, tuple(words)))
    out = {}
    for name, impl in impls.items():
        fn = impl["max_shared_full"]
        fn(pos, val)  # warm (jit compile)
        out[name] = _time(lambda: fn(pos, val), repeat)
    return out


def bench_packing(impls, n: int, w: int, repeat: int) -> dict[str, float]:
    res = build_subcode(n, w)
    graph = residual_graph(res.plan.n, res.code.words, extra_edges=res.leftover)
    out = {}
    for name, impl in impls.items():
        fn = impl["greedy_pack"]

        def run():
            adj = _adjacency_bits(graph)
            deg = graph.degree.copy()
            fn(adj, deg, graph.n, w)

        run()  # warm
        out[name] = _time(run, repeat)
    return out


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1500, help="code length for the distance scan")
    ap.add_argument("--words", type=int, default=3000, help="word count for the distance scan")
    ap.add_argument("--pack-n", type=int, default=1202, help="build length for the packing bench")
    ap.add_argument("--w", type=int, default=5)
    ap.add_argument("--repeat", type=int, default=3, help="repeats, best-of reported")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    impls = dict(_kernels.IMPLS)
    if "numba" not in impls:
        print("numba backend unavailable (not installed, or disabled via "
              "TERNCWC_BACKEND): benchmarking numpy only")

    rng = np.random.default_rng(args.seed)
    dist = bench_distance(impls, args.n, args.words, args.w, args.repeat, rng)
    pack = bench_packing(impls, args.pack_n, args.w, args.repeat)

    rows = [("distance scan", dist), ("greedy packing", pack)]
    names = list(impls)
    header = f"{'kernel':<16}" + "".join(f"{nm:>12}" for nm in names)
    if len(names) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, res in rows:
        line = f"{label:<16}" + "".join(f"{res[nm]*1e3:>10.1f}ms" for nm in names)
        if len(names) == 2:
            a, b = (res[names[0]], res[names[1]])
            slow, fast = max(a, b), min(a, b)
            line += f"{slow / fast:>9.1f}x"
        print(line)


if __name__ == "__main__":
    main()
