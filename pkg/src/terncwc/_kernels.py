"""Numeric kernels: numba fast path, pure-numpy fallback.

The backend is fixed once at import from TERNCWC_BACKEND:

  auto   use numba when importable, numpy otherwise (default)
  numba  require numba, fail loudly if missing
  numpy  force the fallback

Both implementations of every kernel are kept importable (see IMPLS) so tests
and the benchmark can compare them directly; they must produce identical
output bit for bit, not merely equivalent output.
"""

from __future__ import annotations

import os

import numpy as np

# Padding for position rows. Real positions stay far below this, so padded
# rows remain sorted and padded slots compare equal across rows with value 0.
PAD_POS = 2**31


def _pick_backend() -> str:
    choice = os.environ.get("TERNCWC_BACKEND", "auto").lower()
    if choice not in ("auto", "numba", "numpy"):
        raise ValueError(f"TERNCWC_BACKEND must be auto, numba, or numpy; got {choice!r}")
    if choice == "numpy":
        return "numpy"
    try:
        import numba  # noqa: F401
    except ImportError:
        if choice == "numba":
            raise RuntimeError("TERNCWC_BACKEND=numba but numba is not importable")
        return "numpy"
    return "numba"


BACKEND = _pick_backend()


# ---------------------------------------------------------------- numpy path


def _np_max_shared_full(pos: np.ndarray, val: np.ndarray) -> int:
    m = pos.shape[0]
    best = 0
    for i in range(m - 1):
        eq = pos[i + 1 :, :, None] == pos[i, None, None, :]
        mins = np.minimum(val[i + 1 :, :, None], val[i, None, None, :])
        s = np.where(eq, mins, 0).sum(axis=(1, 2))
        if s.size:
            best = max(best, int(s.max()))
    return best


def _np_max_shared_pairs(pos, val, ii, jj) -> int:
    best = 0
    block = 1 << 16
    for s in range(0, len(ii), block):
        a, b = ii[s : s + block], jj[s : s + block]
        eq = pos[a][:, :, None] == pos[b][:, None, :]
        mins = np.minimum(val[a][:, :, None], val[b][:, None, :])
        got = np.where(eq, mins, 0).sum(axis=(1, 2))
        if got.size:
            best = max(best, int(got.max()))
    return best


def _np_greedy_pack(adj: np.ndarray, deg: np.ndarray, n: int, w: int) -> list[tuple[int, ...]]:
    # adj: (n, W) uint64 bitset rows, mutated in place; deg mutated in place.
    huge = np.int64(2**62)
    seedable = np.ones(n, dtype=bool)
    cliques: list[tuple[int, ...]] = []
    masked = np.empty(n, dtype=np.int64)
    while True:
        np.copyto(masked, deg)
        masked[~seedable] = huge
        masked[deg <= 0] = huge
        seed = int(np.argmin(masked))
        if masked[seed] >= huge:
            break
        clique = [seed]
        cand = adj[seed].copy()
        while len(clique) < w:
            nz = np.flatnonzero(cand)
            if not nz.size:
                break
            word = int(nz[0])
            x = int(cand[word])
            v = word * 64 + ((x & -x).bit_length() - 1)
            clique.append(v)
            cand &= adj[v]
        if len(clique) == w:
            for ai, u in enumerate(clique):
                for v in clique[ai + 1 :]:
                    adj[u, v >> 6] &= np.uint64(~(1 << (v & 63)) & 0xFFFFFFFFFFFFFFFF)
                    adj[v, u >> 6] &= np.uint64(~(1 << (u & 63)) & 0xFFFFFFFFFFFFFFFF)
                    deg[u] -= 1
                    deg[v] -= 1
            cliques.append(tuple(clique))
        else:
            seedable[seed] = False
    return cliques


_IMPL_NUMPY = {
    "max_shared_full": _np_max_shared_full,
    "max_shared_pairs": _np_max_shared_pairs,
    "greedy_pack": _np_greedy_pack,
}


# ---------------------------------------------------------------- numba path

_IMPL_NUMBA = None

if BACKEND == "numba":
    import numba

    @numba.njit(cache=False)
    def _nb_max_shared_full(pos, val):
        m, width = pos.shape
        best = 0
        for i in range(m - 1):
            for j in range(i + 1, m):
                a = 0
                b = 0
                s = 0
                while a < width and b < width:
                    pa = pos[i, a]
                    pb = pos[j, b]
                    if pa >= PAD_POS or pb >= PAD_POS:
                        break
                    if pa == pb:
                        va = val[i, a]
                        vb = val[j, b]
                        s += va if va < vb else vb
                        a += 1
                        b += 1
                    elif pa < pb:
                        a += 1
                    else:
                        b += 1
                if s > best:
                    best = s
        return best

    @numba.njit(cache=False)
    def _nb_max_shared_pairs(pos, val, ii, jj):
        width = pos.shape[1]
        best = 0
        for k in range(ii.shape[0]):
            i = ii[k]
            j = jj[k]
            a = 0
            b = 0
            s = 0
            while a < width and b < width:
                pa = pos[i, a]
                pb = pos[j, b]
                if pa >= PAD_POS or pb >= PAD_POS:
                    break
                if pa == pb:
                    va = val[i, a]
                    vb = val[j, b]
                    s += va if va < vb else vb
                    a += 1
                    b += 1
                elif pa < pb:
                    a += 1
                else:
                    b += 1
            if s > best:
                best = s
        return best

    @numba.njit(cache=False)
    def _nb_greedy_pack(adj, deg, n, w, out):
        one = np.uint64(1)
        zero = np.uint64(0)
        seedable = np.ones(n, dtype=np.uint8)
        count = 0
        while True:
            seed = -1
            bestdeg = np.int64(1) << 62
            for v in range(n):
                if seedable[v] == 1 and deg[v] > 0 and deg[v] < bestdeg:
                    bestdeg = deg[v]
                    seed = v
            if seed < 0:
                break
            clique = np.empty(w, dtype=np.int64)
            clique[0] = seed
            size = 1
            cand = adj[seed].copy()
            words = cand.shape[0]
            while size < w:
                v = -1
                for wi in range(words):
                    x = cand[wi]
                    if x != zero:
                        bit = 0
                        while (x >> np.uint64(bit)) & one == zero:
                            bit += 1
                        v = wi * 64 + bit
                        break
                if v < 0:
                    break
                clique[size] = v
                size += 1
                for wi in range(words):
                    cand[wi] = cand[wi] & adj[v, wi]
            if size == w:
                for ai in range(w):
                    u = clique[ai]
                    for bi in range(ai + 1, w):
                        v = clique[bi]
                        adj[u, v >> 6] = adj[u, v >> 6] & ~(one << np.uint64(v & 63))
                        adj[v, u >> 6] = adj[v, u >> 6] & ~(one << np.uint64(u & 63))
                        deg[u] -= 1
                        deg[v] -= 1
                for ai in range(w):
                    out[count, ai] = clique[ai]
                count += 1
            else:
                seedable[seed] = 0
        return count

    def _numba_greedy_pack(adj, deg, n, w):
        max_cliques = int(deg.sum()) // (w * (w - 1)) + 1
        out = np.empty((max_cliques, w), dtype=np.int64)
        count = _nb_greedy_pack(adj, deg, n, w, out)
        return [tuple(int(x) for x in out[i]) for i in range(count)]

    _IMPL_NUMBA = {
        "max_shared_full": lambda pos, val: int(_nb_max_shared_full(pos, val)),
        "max_shared_pairs": lambda pos, val, ii, jj: int(_nb_max_shared_pairs(pos, val, ii, jj)),
        "greedy_pack": _numba_greedy_pack,
    }


IMPLS = {"numpy": _IMPL_NUMPY}
if _IMPL_NUMBA is not None:
    IMPLS["numba"] = _IMPL_NUMBA

_ACTIVE = IMPLS[BACKEND if BACKEND in IMPLS else "numpy"]


def max_shared_full(pos: np.ndarray, val: np.ndarray) -> int:
    """Largest sum over shared positions of min(symbol, symbol), over all pairs."""
    return _ACTIVE["max_shared_full"](pos, val)


def max_shared_pairs(pos, val, ii, jj) -> int:
    return _ACTIVE["max_shared_pairs"](pos, val, ii, jj)


def greedy_pack(adj: np.ndarray, deg: np.ndarray, n: int, w: int) -> list[tuple[int, ...]]:
    """Deterministic greedy w-clique packing on a bitset adjacency.

    Seeds at the lowest-index vertex of minimal positive degree, extends
    first-fit by lowest index, commits only full w-cliques, and permanently
    retires seeds that fail to extend. Mutates adj and deg in place.
    """
    return _ACTIVE["greedy_pack"](adj, deg, n, w)
