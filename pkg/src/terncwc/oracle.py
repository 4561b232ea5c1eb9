"""Exhaustive small-case searches used to cross-check the constructions.

Everything here is deliberately independent of the builders: candidates are
enumerated from scratch, compatibility is decided by the raw distance, and
the searches are plain branch-and-bound. Guards keep the instances small
enough to finish; they refuse rather than degrade.
"""

from __future__ import annotations

import csv
import os
import random
from itertools import combinations
from math import comb
from pathlib import Path

from .core import Codeword, TernaryCode, l1_distance
from .packing import ResidualGraph
from .planner import upper_bound

__all__ = [
    "OracleGuardError",
    "count_weight_words",
    "enumerate_weight_words",
    "max_code_bruteforce",
    "balanced_search_bruteforce",
    "packing_max_bruteforce",
    "append_result",
]

GUARD_ENV = "TERNCWC_ORACLE_GUARD"
DEFAULT_GUARD = 10**5
MAX_N = 12


class OracleGuardError(ValueError):
    pass


def count_weight_words(n: int, w: int) -> int:
    return sum(comb(n, b) * comb(n - b, w - 2 * b) for b in range(w // 2 + 1))


def _guard(n: int, w: int) -> None:
    limit = int(os.environ.get(GUARD_ENV, DEFAULT_GUARD))
    total = count_weight_words(n, w)
    if n > MAX_N or total > limit:
        raise OracleGuardError(
            f"size guard exceeded: n = {n} (max {MAX_N}), "
            f"{total} candidate words (max {limit})"
        )


def enumerate_weight_words(n: int, w: int) -> list[Codeword]:
    """All weight-w words of length n, lexicographic by digit string."""
    _guard(n, w)
    out = []
    for b in range(w // 2 + 1):
        a = w - 2 * b
        if a + b > n:
            continue
        for support in combinations(range(n), a + b):
            for two_pos in combinations(support, b):
                twos = set(two_pos)
                out.append(
                    Codeword.from_parts(
                        n, ones=[p for p in support if p not in twos], twos=twos
                    )
                )
    out.sort(key=lambda u: u.digits())
    return out


def max_code_bruteforce(n: int, d: int, w: int, order_seed: int = 0) -> tuple[int, TernaryCode]:
    """Exact maximum code size by branch-and-bound over the compatibility
    graph, plus one witness code of that size.

    Vertices are visited in degree order; `order_seed` only reshuffles ties,
    and the reported size must not depend on it.
    """
    words = enumerate_weight_words(n, w)
    count = len(words)
    if count == 0:
        return 0, TernaryCode(n, ())

    adj = [0] * count
    for i in range(count):
        for j in range(i + 1, count):
            if l1_distance(words[i], words[j]) >= d:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
    degree = [x.bit_count() for x in adj]

    order = list(range(count))
    random.Random(order_seed).shuffle(order)
    order.sort(key=lambda v: -degree[v])
    relabel = {old: new for new, old in enumerate(order)}
    radj = [0] * count
    for old in range(count):
        mask = adj[old]
        new_mask = 0
        while mask:
            o = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            new_mask |= 1 << relabel[o]
        radj[relabel[old]] = new_mask

    best = 0
    witness: list[int] = []

    def expand(cur: list[int], cand: int) -> None:
        nonlocal best, witness
        if len(cur) > best:
            best = len(cur)
            witness = cur.copy()
        if not cand:
            return
        # greedy coloring of cand: one vertex per color class can enter a
        # clique, so len(cur) + color is a sound prune
        seq: list[int] = []
        bound: list[int] = []
        color = 0
        m = cand
        while m:
            color += 1
            avail = m
            while avail:
                v = (avail & -avail).bit_length() - 1
                avail &= avail - 1
                avail &= ~radj[v]
                m &= ~(1 << v)
                seq.append(v)
                bound.append(color)
        for i in range(len(seq) - 1, -1, -1):
            if len(cur) + bound[i] <= best:
                return
            v = seq[i]
            cur.append(v)
            expand(cur, cand & radj[v])
            cur.pop()
            cand &= ~(1 << v)

    expand([], (1 << count) - 1)
    chosen = tuple(words[order[v]] for v in witness)
    return best, TernaryCode(n, chosen)


def balanced_search_bruteforce(n: int, w: int) -> bool:
    """Does any valid code of the maximum size upper_bound(n, w) decompose
    K_n into its support cliques? Exhaustive, n <= 10 only."""
    if n > 10:
        raise OracleGuardError(f"balanced search only for n <= 10, got n = {n}")
    if w < 3:
        raise ValueError("weight must be at least 3")
    target = upper_bound(n, w)
    if target < 1:
        return False
    words = enumerate_weight_words(n, w)

    edge_index = {}
    for idx, e in enumerate(combinations(range(n), 2)):
        edge_index[e] = idx
    full = (1 << len(edge_index)) - 1

    pair_mask = []
    two_mask = []
    for u in words:
        m = 0
        for e in combinations(u.support, 2):
            m |= 1 << edge_index[e]
        pair_mask.append(m)
        t = 0
        for p in u.twos:
            t |= 1 << p
        two_mask.append(t)

    by_edge: list[list[int]] = [[] for _ in edge_index]
    for wi, m in enumerate(pair_mask):
        mm = m
        while mm:
            e = (mm & -mm).bit_length() - 1
            mm &= mm - 1
            by_edge[e].append(wi)

    def dfs(covered: int, twos: int, count: int) -> bool:
        if covered == full:
            return count == target
        if count >= target:
            return False
        e = ((~covered) & full)
        e = (e & -e).bit_length() - 1
        for wi in by_edge[e]:
            if pair_mask[wi] & covered:
                continue
            if two_mask[wi] & twos:
                continue
            if dfs(covered | pair_mask[wi], twos | two_mask[wi], count + 1):
                return True
        return False

    # every weight-w word with w >= 3 spans at least two positions, so a
    # decomposition can never hide words that cover no edge
    return dfs(0, 0, 0)


def packing_max_bruteforce(graph: ResidualGraph, w: int) -> int:
    """Exact maximum number of edge-disjoint w-cliques, cover-or-discard
    branching on the lowest live edge. n <= 10 only."""
    n = graph.n
    if n > 10:
        raise OracleGuardError(f"packing search only for n <= 10, got n = {n}")
    edges = [e for e in combinations(range(n), 2) if e not in graph.removed]
    edge_index = {e: i for i, e in enumerate(edges)}
    start = (1 << len(edges)) - 1

    cliques = []
    for c in combinations(range(n), w):
        pairs = list(combinations(c, 2))
        if all(e in edge_index for e in pairs):
            m = 0
            for e in pairs:
                m |= 1 << edge_index[e]
            cliques.append(m)
    by_edge: list[list[int]] = [[] for _ in edges]
    for mask in cliques:
        mm = mask
        while mm:
            e = (mm & -mm).bit_length() - 1
            mm &= mm - 1
            by_edge[e].append(mask)

    e_kw = comb(w, 2)
    best = 0

    def dfs(live: int, count: int) -> None:
        nonlocal best
        if count > best:
            best = count
        if not live or count + live.bit_count() // e_kw <= best:
            return
        e = (live & -live).bit_length() - 1
        for mask in by_edge[e]:
            if mask & live == mask:
                dfs(live & ~mask, count + 1)
        dfs(live & ~(1 << e), count)

    dfs(start, 0)
    return best


def append_result(path, n: int, d: int, w: int, a3: int, runtime_s: float) -> None:
    """One row of the running results table; header written on first use."""
    path = Path(path)
    fresh = not path.exists() or path.stat().st_size == 0
    with open(path, "a", newline="") as fh:
        writer = csv.writer(fh)
        if fresh:
            writer.writerow(["n", "d", "w", "A3", "runtime_s"])
        writer.writerow([n, d, w, a3, f"{runtime_s:.3f}"])
