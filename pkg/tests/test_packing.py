from itertools import combinations
from math import comb

import pytest

from terncwc.builder import build_subcode
from terncwc.core import Codeword, TernaryCode, verify_code
from terncwc.golomb import GolombRuler, translates
from terncwc.oracle import packing_max_bruteforce
from terncwc.packing import (
    EdgeLedger,
    OverlapError,
    check_divisibility,
    complete_code,
    greedy_kw_packing,
    leave_report_text,
    residual_graph,
)
from terncwc.planner import plan


class TestEdgeLedger:
    def test_basic(self):
        led = EdgeLedger(6)
        led.add_word("w0", [0, 1, 2])
        assert led.covers(0, 1) and led.covers(2, 0)
        assert not led.covers(0, 3)

    def test_overlap_names_owner(self):
        led = EdgeLedger(6)
        led.add_word("w0", [0, 1, 2])
        with pytest.raises(OverlapError, match="already covered by w0.*refused for w1"):
            led.add_word("w1", [1, 2, 3])

    def test_two_label_budget(self):
        led = EdgeLedger(6)
        led.add_word("w0", [0, 1, 2], twos=[0])
        with pytest.raises(OverlapError, match="already 2-labeled"):
            led.add_word("w1", [0, 3, 4], twos=[0])

    def test_remove_then_readd(self):
        led = EdgeLedger(6)
        led.add_pair(1, 2, "a")
        led.remove_pair(2, 1)
        led.add_pair(1, 2, "b")
        with pytest.raises(OverlapError, match="not covered"):
            led.remove_pair(3, 4)

    def test_degenerate_pair(self):
        led = EdgeLedger(6)
        with pytest.raises(OverlapError, match="degenerate"):
            led.add_pair(2, 2, "a")


class TestResidualGraph:
    def test_empty_is_complete(self):
        g = residual_graph(7)
        assert g.edge_count() == comb(7, 2)
        assert all(int(d) == 6 for d in g.degree)
        assert g.has_edge(0, 6) and not g.has_edge(3, 3)

    def test_word_removal(self):
        g = residual_graph(8, [[0, 1, 2]])
        assert g.edge_count() == comb(8, 2) - 3
        assert not g.has_edge(0, 1)
        assert int(g.degree[0]) == 5 and int(g.degree[7]) == 7

    def test_accepts_codewords_and_code(self):
        u = Codeword.from_string("21100000")
        for words in ([u], TernaryCode(8, (u,))):
            g = residual_graph(8, words)
            assert not g.has_edge(0, 1) and not g.has_edge(1, 2)
            assert g.has_edge(2, 3)

    def test_extra_edges(self):
        g = residual_graph(6, [], extra_edges=[(0, 1)])
        assert not g.has_edge(0, 1)
        with pytest.raises(OverlapError):
            residual_graph(6, [[0, 1, 2]], extra_edges=[(0, 1)])

    def test_ruler_translate_degrees(self):
        # 29 translates of a 4-mark ruler remove 6 edges at each vertex
        r = GolombRuler(29, (0, 1, 3, 7), frozenset())
        g = residual_graph(29, TernaryCode(29, tuple(translates(r))))
        assert all(int(d) == 28 - 12 for d in g.degree)
        assert g.edge_count() == comb(29, 2) - 29 * 6


class TestDivisibility:
    def test_subcode_quotient_is_x(self):
        res = build_subcode(125, 5)
        g = residual_graph(125, res.code.words)
        rep = check_divisibility(g, 5)
        assert rep.ok
        assert rep.quotient == res.plan.x == 700
        assert rep.min_degree == 112
        text = rep.as_text()
        assert "quotient 700" in text

    def test_flags_bad_degrees(self):
        g = residual_graph(6, [[0, 1, 2]])
        rep = check_divisibility(g, 5)
        assert not rep.degrees_divisible
        assert rep.bad_vertices

    def test_leftover_edges_enter(self):
        res = build_subcode(5029, 5)
        g_with = residual_graph(5029, res.code.words, extra_edges=res.leftover)
        rep = check_divisibility(g_with, 5)
        assert rep.ok and rep.quotient == res.plan.x


class TestGreedyPacking:
    def test_k5_single_clique(self):
        g = residual_graph(5)
        cliques = greedy_kw_packing(g, 5)
        assert cliques == [(0, 1, 2, 3, 4)]

    def test_k6_w5_leaves_five_edges(self):
        # one K_5 inside K_6 spends 10 of the 15 edges; no second one fits
        g = residual_graph(6)
        cliques = greedy_kw_packing(g, 5)
        assert len(cliques) == 1
        used = {frozenset(e) for cl in cliques for e in combinations(cl, 2)}
        assert len(used) == 10

    def test_k6_w4_single_clique(self):
        # any two K_4s in K_6 share at least two vertices, hence an edge
        g = residual_graph(6)
        assert len(greedy_kw_packing(g, 4)) == 1

    def test_cliques_respect_graph(self):
        res = build_subcode(125, 5)
        g = residual_graph(125, res.code.words)
        cliques = greedy_kw_packing(g, 5)
        used = set()
        for cl in cliques:
            for u, v in combinations(cl, 2):
                e = (min(u, v), max(u, v))
                assert g.has_edge(u, v)
                assert e not in used
                used.add(e)
        # deterministic reruns
        assert cliques == greedy_kw_packing(g, 5)

    def test_exact_small(self):
        g = residual_graph(6)
        exact = greedy_kw_packing(g, 4, mode="exact")
        assert len(exact) == 1
        # K_7 with w=3 decomposes perfectly (a Steiner triple system)
        assert len(greedy_kw_packing(residual_graph(7), 3, mode="exact")) == 7
        with pytest.raises(ValueError, match="exact"):
            greedy_kw_packing(residual_graph(20), 4, mode="exact")

    def test_exact_matches_oracle(self):
        for n, w, removed in [
            (6, 3, []),
            (7, 3, [[0, 1, 2]]),
            (8, 4, [[0, 1, 2, 3]]),
            (9, 4, [[0, 1, 2], [3, 4, 5]]),
        ]:
            g = residual_graph(n, removed)
            exact = greedy_kw_packing(g, w, mode="exact")
            assert len(exact) == packing_max_bruteforce(g, w)

    def test_greedy_never_beats_exact(self):
        for n, w in [(7, 3), (8, 3), (9, 4)]:
            g = residual_graph(n, [[0, 1, 2]])
            greedy = greedy_kw_packing(g, w)
            exact = greedy_kw_packing(g, w, mode="exact")
            assert len(greedy) <= len(exact)


class TestCompleteCode:
    def test_appends_verified_words(self):
        res = build_subcode(125, 5)
        g = residual_graph(125, res.code.words)
        cliques = greedy_kw_packing(g, 5)
        full = complete_code(res.code, cliques)
        assert len(full) == len(res.code) + len(cliques)
        rep = verify_code(full)
        assert rep.valid
        added = full.words[len(res.code) :]
        assert all(len(u.twos) == 0 and len(u.ones) == 5 for u in added)

    def test_rejects_overlapping_clique(self):
        res = build_subcode(125, 5)
        word0 = res.code.words[0].support
        clique = tuple(word0[:2]) + (124, 123, 122)
        with pytest.raises(OverlapError):
            complete_code(res.code, [clique])


class TestLeaveReport:
    def test_table_alignment(self):
        rows = [
            dict(n=125, w=5, branch="T1_DIV", x_target=700, x_achieved=698, leave_edges=20),
            dict(n=360, w=5, branch="T0_DIV", x_target=6246, x_achieved=6246, leave_edges=0),
        ]
        text = leave_report_text(rows)
        lines = text.splitlines()
        assert lines[0].split() == ["n", "w", "branch", "x_target", "x_achieved", "leave_edges"]
        assert len(lines) == 3
        assert "T1_DIV" in lines[1]
