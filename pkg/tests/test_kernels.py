import os
import random
import subprocess
import sys

import numpy as np
import pytest

from terncwc import _kernels
from terncwc.core import TernaryCode, l1_distance, pack_code
from terncwc.packing import _adjacency_bits, residual_graph

from conftest import random_code

HAVE_BOTH = set(_kernels.IMPLS) >= {"numpy", "numba"}
both = pytest.mark.skipif(not HAVE_BOTH, reason="numba backend not active")


def brute_max_shared(code: TernaryCode) -> int:
    best = 0
    for i in range(len(code)):
        for j in range(i + 1, len(code)):
            u, v = code.words[i], code.words[j]
            du, dv = dict(u.labels), dict(v.labels)
            best = max(best, sum(min(du[p], dv[p]) for p in du if p in dv))
    return best


class TestMaxShared:
    def test_against_bruteforce(self, rng):
        for _ in range(25):
            n = rng.randrange(6, 14)
            w = rng.randrange(3, 7)
            code = random_code(rng, n, w, rng.randrange(2, 20))
            pos, val = pack_code(code)
            got = _kernels.max_shared_full(pos, val)
            assert got == brute_max_shared(code)

    def test_relates_to_distance(self, rng):
        # 2w - 2*max_shared equals the exact minimum distance
        code = random_code(rng, 10, 5, 12)
        pos, val = pack_code(code)
        best = _kernels.max_shared_full(pos, val)
        direct = min(
            l1_distance(code.words[i], code.words[j])
            for i in range(12)
            for j in range(i + 1, 12)
        )
        assert 2 * 5 - 2 * best == direct

    @both
    def test_backends_agree_full(self, rng):
        for _ in range(20):
            code = random_code(rng, rng.randrange(8, 20), rng.randrange(3, 7), 30)
            pos, val = pack_code(code)
            a = _kernels.IMPLS["numpy"]["max_shared_full"](pos, val)
            b = _kernels.IMPLS["numba"]["max_shared_full"](pos, val)
            assert a == b

    @both
    def test_backends_agree_pairs(self, rng):
        code = random_code(rng, 16, 5, 40)
        pos, val = pack_code(code)
        m = len(code)
        ii = np.array([rng.randrange(m) for _ in range(500)], dtype=np.int64)
        jj = np.array([(i + 1 + rng.randrange(m - 1)) % m for i in ii], dtype=np.int64)
        a = _kernels.IMPLS["numpy"]["max_shared_pairs"](pos, val, ii, jj)
        b = _kernels.IMPLS["numba"]["max_shared_pairs"](pos, val, ii, jj)
        assert a == b

    def test_pairs_subset_of_full(self, rng):
        code = random_code(rng, 12, 4, 25)
        pos, val = pack_code(code)
        m = len(code)
        ii, jj = [], []
        for i in range(m):
            for j in range(m):
                if i != j:
                    ii.append(i)
                    jj.append(j)
        full = _kernels.max_shared_full(pos, val)
        allp = _kernels.max_shared_pairs(
            pos, val, np.array(ii, dtype=np.int64), np.array(jj, dtype=np.int64)
        )
        assert full == allp


def random_graph(rng, n, keep=0.6):
    removed = set()
    for u in range(n):
        for v in range(u + 1, n):
            if rng.random() > keep:
                removed.add((u, v))
    deg = np.full(n, n - 1, dtype=np.int64)
    for u, v in removed:
        deg[u] -= 1
        deg[v] -= 1
    from terncwc.packing import ResidualGraph

    return ResidualGraph(n, removed, deg)


class TestGreedyPack:
    @both
    def test_backends_agree(self, rng):
        for _ in range(15):
            n = rng.randrange(10, 40)
            g = random_graph(rng, n, keep=rng.uniform(0.4, 0.9))
            w = rng.randrange(3, 6)
            outs = []
            for impl in ("numpy", "numba"):
                adj = _adjacency_bits(g)
                deg = g.degree.copy()
                outs.append(_kernels.IMPLS[impl]["greedy_pack"](adj, deg, n, w))
            assert outs[0] == outs[1]

    def test_cliques_disjoint_and_real(self, rng):
        for _ in range(10):
            n = rng.randrange(10, 30)
            g = random_graph(rng, n, keep=0.7)
            w = 4
            adj = _adjacency_bits(g)
            cliques = _kernels.greedy_pack(adj, g.degree.copy(), n, w)
            used = set()
            for cl in cliques:
                assert len(cl) == w
                for i, u in enumerate(cl):
                    for v in cl[i + 1 :]:
                        e = (min(u, v), max(u, v))
                        assert e not in used
                        assert g.has_edge(u, v)
                        used.add(e)

    def test_deterministic(self, rng):
        g = random_graph(rng, 24, keep=0.8)
        runs = []
        for _ in range(3):
            adj = _adjacency_bits(g)
            runs.append(_kernels.greedy_pack(adj, g.degree.copy(), 24, 4))
        assert runs[0] == runs[1] == runs[2]

    def test_complete_graph(self):
        g = residual_graph(5)
        adj = _adjacency_bits(g)
        cliques = _kernels.greedy_pack(adj, g.degree.copy(), 5, 5)
        assert cliques == [(0, 1, 2, 3, 4)]


class TestBackendSelection:
    def test_env_forces_numpy(self):
        out = subprocess.run(
            [sys.executable, "-c", "from terncwc import _kernels; print(_kernels.BACKEND)"],
            env={**os.environ, "TERNCWC_BACKEND": "numpy"},
            capture_output=True,
            text=True,
        )
        assert out.stdout.strip() == "numpy"

    def test_env_numpy_drops_numba_impl(self):
        out = subprocess.run(
            [
                sys.executable,
                "-c",
                "from terncwc import _kernels; print(sorted(_kernels.IMPLS))",
            ],
            env={**os.environ, "TERNCWC_BACKEND": "numpy"},
            capture_output=True,
            text=True,
        )
        assert out.stdout.strip() == "['numpy']"

    def test_bad_value_rejected(self):
        out = subprocess.run(
            [sys.executable, "-c", "import terncwc"],
            env={**os.environ, "TERNCWC_BACKEND": "cuda"},
            capture_output=True,
            text=True,
        )
        assert out.returncode != 0
        assert "TERNCWC_BACKEND" in out.stderr
