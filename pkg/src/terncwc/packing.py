"""Residual graphs, pair ledgers, clique packing, and code completion.

The support of every sub-code word claims a clique of vertex pairs; what is
left of K_n after those claims is the residual graph. Filling it with
edge-disjoint w-cliques, each contributing one all-ones word, is how a
sub-code grows into a full code. The ledger is the single bookkeeping point:
no pair may ever be claimed twice, and no vertex may carry the symbol 2
twice.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .core import Codeword, TernaryCode, verify_code

__all__ = [
    "OverlapError",
    "EdgeLedger",
    "ResidualGraph",
    "residual_graph",
    "DivisibilityReport",
    "check_divisibility",
    "greedy_kw_packing",
    "complete_code",
    "leave_report_text",
]


class OverlapError(ValueError):
    pass


class EdgeLedger:
    """Covered-pair and 2-label ownership map.

    Pairs are stored with u < v; owners are arbitrary hashable ids. Adding a
    pair or 2-label twice raises OverlapError with both owners named.
    """

    def __init__(self, n: int):
        self.n = n
        self.covered: dict[tuple[int, int], object] = {}
        self.two_used: dict[int, object] = {}

    @staticmethod
    def _key(u: int, v: int) -> tuple[int, int]:
        return (u, v) if u < v else (v, u)

    def covers(self, u: int, v: int) -> bool:
        return self._key(u, v) in self.covered

    def add_pair(self, u: int, v: int, owner) -> None:
        if u == v:
            raise OverlapError(f"degenerate pair ({u}, {v})")
        key = self._key(u, v)
        prev = self.covered.get(key)
        if prev is not None:
            raise OverlapError(f"pair {key} already covered by {prev}, refused for {owner}")
        self.covered[key] = owner

    def remove_pair(self, u: int, v: int) -> None:
        key = self._key(u, v)
        if key not in self.covered:
            raise OverlapError(f"pair {key} not covered, cannot remove")
        del self.covered[key]

    def add_word(self, owner, support: Sequence[int], twos: Iterable[int] = ()) -> None:
        for i, u in enumerate(support):
            for v in support[i + 1 :]:
                self.add_pair(u, v, owner)
        for t in twos:
            prev = self.two_used.get(t)
            if prev is not None:
                raise OverlapError(
                    f"vertex {t} already 2-labeled by {prev}, refused for {owner}"
                )
            self.two_used[t] = owner


@dataclass
class ResidualGraph:
    """K_n minus the claimed pairs. Degrees are kept alongside and must obey
    the handshake identity at all times."""

    n: int
    removed: set[tuple[int, int]]
    degree: np.ndarray

    def edge_count(self) -> int:
        return comb(self.n, 2) - len(self.removed)

    def has_edge(self, u: int, v: int) -> bool:
        if u == v:
            return False
        key = (u, v) if u < v else (v, u)
        return key not in self.removed

    def check_handshake(self) -> None:
        total = int(self.degree.sum())
        expect = self.n * (self.n - 1) - 2 * len(self.removed)
        assert total == expect, f"handshake violated: {total} != {expect}"


def residual_graph(
    n: int,
    words: TernaryCode | Iterable[Sequence[int]] = (),
    extra_edges: Iterable[tuple[int, int]] = (),
) -> ResidualGraph:
    """Remove every word's support clique, then the explicit extra edges.

    Any pair claimed twice, by two words or by a word and an extra edge,
    raises OverlapError.
    """
    ledger = EdgeLedger(n)
    if isinstance(words, TernaryCode):
        supports: Iterable[Sequence[int]] = (u.support for u in words)
    else:
        supports = words
    for wid, supp in enumerate(supports):
        if isinstance(supp, Codeword):
            supp = supp.support
        ledger.add_word(wid, list(supp))
    for u, v in extra_edges:
        ledger.add_pair(u, v, "extra-edge")
    degree = np.full(n, n - 1, dtype=np.int64)
    for u, v in ledger.covered:
        degree[u] -= 1
        degree[v] -= 1
    graph = ResidualGraph(n, set(ledger.covered), degree)
    graph.check_handshake()
    return graph


@dataclass(frozen=True)
class DivisibilityReport:
    n: int
    w: int
    degrees_divisible: bool
    bad_vertices: tuple[int, ...]
    min_degree: int
    min_degree_ok: bool
    edges: int
    edges_divisible: bool
    quotient: int

    @property
    def ok(self) -> bool:
        return self.degrees_divisible and self.min_degree_ok and self.edges_divisible

    def as_text(self) -> str:
        lines = [
            f"degrees divisible by {self.w - 1}: {'yes' if self.degrees_divisible else 'no'}",
            f"min degree: {self.min_degree} (needs >= {self.n - 1 - 2 * self.w * self.w}): "
            f"{'ok' if self.min_degree_ok else 'too small'}",
            f"edges: {self.edges}, divisible by {comb(self.w, 2)}: "
            f"{'yes' if self.edges_divisible else 'no'}, quotient {self.quotient}",
        ]
        if self.bad_vertices:
            lines.append(f"offending vertices: {list(self.bad_vertices[:20])}")
        return "\n".join(lines)


def check_divisibility(graph: ResidualGraph, w: int) -> DivisibilityReport:
    graph.check_handshake()
    bad = tuple(int(v) for v in np.flatnonzero(graph.degree % (w - 1) != 0))
    edges = graph.edge_count()
    e_kw = comb(w, 2)
    min_deg = int(graph.degree.min()) if graph.n else 0
    return DivisibilityReport(
        n=graph.n,
        w=w,
        degrees_divisible=not bad,
        bad_vertices=bad,
        min_degree=min_deg,
        min_degree_ok=min_deg >= graph.n - 1 - 2 * w * w,
        edges=edges,
        edges_divisible=edges % e_kw == 0,
        quotient=edges // e_kw,
    )


def _adjacency_bits(graph: ResidualGraph) -> np.ndarray:
    n = graph.n
    width = (n + 63) // 64
    adj = np.full((n, width), np.uint64(0xFFFFFFFFFFFFFFFF), dtype=np.uint64)
    tail = n - (width - 1) * 64
    if tail < 64:
        adj[:, width - 1] = np.uint64((1 << tail) - 1)
    for v in range(n):
        adj[v, v >> 6] &= np.uint64(~(1 << (v & 63)) & 0xFFFFFFFFFFFFFFFF)
    for u, v in graph.removed:
        adj[u, v >> 6] &= np.uint64(~(1 << (v & 63)) & 0xFFFFFFFFFFFFFFFF)
        adj[v, u >> 6] &= np.uint64(~(1 << (u & 63)) & 0xFFFFFFFFFFFFFFFF)
    return adj


def greedy_kw_packing(graph: ResidualGraph, w: int, mode: str = "greedy") -> list[tuple[int, ...]]:
    """Edge-disjoint w-cliques inside the residual graph.

    greedy: deterministic kernel-backed first-fit (see _kernels.greedy_pack);
    identical output on every backend. exact: branch-and-bound maximum
    packing, only for n <= 14.
    """
    if mode == "greedy":
        adj = _adjacency_bits(graph)
        deg = graph.degree.astype(np.int64).copy()
        cliques = _kernels.greedy_pack(adj, deg, graph.n, w)
        return [tuple(sorted(c)) for c in cliques]
    if mode != "exact":
        raise ValueError(f"unknown mode {mode!r}")
    if graph.n > 14:
        raise ValueError(f"exact mode only for n <= 14, got {graph.n}")
    candidates = [
        c
        for c in combinations(range(graph.n), w)
        if all(graph.has_edge(u, v) for u, v in combinations(c, 2))
    ]
    pair_index = {}
    for i, (u, v) in enumerate(combinations(range(graph.n), 2)):
        pair_index[(u, v)] = i
    masks = []
    for c in candidates:
        m = 0
        for u, v in combinations(c, 2):
            m |= 1 << pair_index[(u, v)]
        masks.append(m)
    e_kw = comb(w, 2)
    free_total = graph.edge_count()
    best: list[int] = []

    def dfs(idx: int, used: int, chosen: list[int], free: int) -> None:
        nonlocal best
        if len(chosen) > len(best):
            best = chosen.copy()
        if len(chosen) + min(len(candidates) - idx, free // e_kw) <= len(best):
            return
        for i in range(idx, len(candidates)):
            if masks[i] & used:
                continue
            chosen.append(i)
            dfs(i + 1, used | masks[i], chosen, free - e_kw)
            chosen.pop()

    dfs(0, 0, [], free_total)
    return [tuple(candidates[i]) for i in best]


def complete_code(code: TernaryCode, cliques: Iterable[Sequence[int]]) -> TernaryCode:
    """Append one all-ones word per clique. The cliques must be edge-disjoint
    from the sub-code and from each other; the result must verify clean."""
    ledger = EdgeLedger(code.n)
    for wid, u in enumerate(code.words):
        ledger.add_word(("word", wid), u.support, u.twos)
    words = list(code.words)
    for ci, clique in enumerate(cliques):
        ledger.add_word(("clique", ci), list(clique))
        words.append(Codeword.from_parts(code.n, ones=clique))
    full = TernaryCode(code.n, tuple(words))
    report = verify_code(full)
    if not report.valid:
        raise OverlapError("completed code failed verification")
    return full


def leave_report_text(rows: Iterable[dict]) -> str:
    """Plain text leave table. Each row: n, w, branch, x_target, x_achieved,
    leave_edges."""
    cols = ["n", "w", "branch", "x_target", "x_achieved", "leave_edges"]
    data = [[str(r[c]) for c in cols] for r in rows]
    widths = [max(len(c), *(len(d[i]) for d in data)) if data else len(c) for i, c in enumerate(cols)]
    out = ["  ".join(c.ljust(widths[i]) for i, c in enumerate(cols))]
    for d in data:
        out.append("  ".join(d[i].ljust(widths[i]) for i in range(len(cols))))
    return "\n".join(out)
