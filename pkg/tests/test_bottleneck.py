"""Two-pair bottleneck predicate, solvability search, and the exhaustive scan."""

from __future__ import annotations

import random

import pytest

from gsroute.bottleneck import (
    TwoPairInstance,
    has_bottleneck,
    pairs_connected,
    scan_all,
    solvable,
    verify_witness,
)
from gsroute.errors import GraphDomainError, SizeBoundError
from gsroute.fixtures import BUTTERFLY_SWAPS, butterfly_graph, derive_butterfly_fixture, relabel
from gsroute.graph import LabeledGraph, cycle_graph
from gsroute.orbit import replay_operations

from .conftest import random_graph

EXPECTED_HITS = (
    frozenset({(1, 4), (1, 5), (2, 4), (2, 6), (3, 4), (3, 5), (3, 6)}),
    frozenset({(1, 3), (1, 5), (2, 3), (2, 6), (3, 4), (4, 5), (4, 6)}),
    frozenset({(1, 2), (1, 4), (2, 3), (3, 4), (3, 6), (4, 5), (5, 6)}),
    frozenset({(1, 2), (1, 3), (2, 4), (3, 4), (3, 5), (4, 6), (5, 6)}),
)


class TestHasBottleneck:
    def test_disjoint_edges_have_no_bottleneck(self):
        g = LabeledGraph([1, 2, 5, 6, 9], [(1, 6), (2, 5)])
        assert not has_bottleneck(TwoPairInstance(g, (1, 6), (2, 5)))

    def test_butterfly_has_bottleneck(self, butterfly):
        assert has_bottleneck(TwoPairInstance(butterfly, (1, 6), (2, 5)))

    def test_six_cycle_pairs_served_by_disjoint_arcs(self):
        g = cycle_graph([1, 2, 3, 4, 5, 6])
        assert not has_bottleneck(TwoPairInstance(g, (1, 3), (4, 6)))

    def test_six_cycle_interleaved_pairs_contend(self):
        g = cycle_graph([1, 2, 3, 4, 5, 6])
        assert has_bottleneck(TwoPairInstance(g, (1, 4), (2, 5)))

    def test_terminals_must_be_distinct(self, butterfly):
        with pytest.raises(GraphDomainError):
            TwoPairInstance(butterfly, (1, 6), (2, 6))


class TestSolvable:
    def test_butterfly_is_solvable_with_replayable_witness(self, butterfly):
        inst = TwoPairInstance(butterfly, (1, 6), (2, 5))
        result = solvable(inst)
        assert result.solvable
        final = replay_operations(butterfly, result.witness)
        assert final.edges() == {(1, 6), (2, 5)}

    def test_empty_graph_is_not_solvable(self):
        inst = TwoPairInstance(LabeledGraph(range(1, 7)), (1, 6), (2, 5))
        assert not solvable(inst).solvable

    def test_budget_cannot_exceed_measurable_set(self, butterfly):
        inst = TwoPairInstance(butterfly, (1, 6), (2, 5))
        with pytest.raises(GraphDomainError):
            solvable(inst, max_measurements=3)

    def test_connectivity_prune_agrees_with_search(self):
        rng = random.Random(41)
        for _ in range(1000):
            g = random_graph(rng, 6, p=rng.choice((0.2, 0.4, 0.6)))
            inst = TwoPairInstance(g, (1, 6), (2, 5))
            if not pairs_connected(inst):
                assert not solvable(inst).solvable

    def test_monotone_in_complementation_budget(self, butterfly):
        rng = random.Random(55)
        graphs = [butterfly_graph()] + [random_graph(rng, 6, 0.4) for _ in range(30)]
        for g in graphs:
            inst = TwoPairInstance(g, (1, 6), (2, 5))
            results = [solvable(inst, lc_cap=cap).solvable for cap in (0, 1, 2, 3, 4)]
            for earlier, later in zip(results, results[1:]):
                assert later or not earlier  # True never flips back to False
            if solvable(inst).solvable:
                assert solvable(inst, lc_cap=12).solvable


class TestScan:
    def test_five_vertex_scan_finds_nothing(self):
        assert scan_all(5) == []

    def test_six_vertex_scan_finds_the_four_graphs(self):
        reports = scan_all(6)
        assert len(reports) == 4
        assert tuple(r.instance.graph.edges() for r in reports) == EXPECTED_HITS
        for r in reports:
            assert r.has_bottleneck and r.solvable
            assert verify_witness(r)

    def test_hits_closed_under_label_swaps(self):
        hits = {r.instance.graph for r in scan_all(6)}
        for g in hits:
            for perm in BUTTERFLY_SWAPS:
                assert relabel(g, perm) in hits

    def test_parallel_scan_matches_sequential(self):
        seq = [(r.instance.graph, r.instance.pair1) for r in scan_all(5, threads=1)]
        par = [(r.instance.graph, r.instance.pair1) for r in scan_all(5, threads=2)]
        assert seq == par
        seq6 = [r.instance.graph for r in scan_all(6, threads=1)]
        par6 = [r.instance.graph for r in scan_all(6, threads=2)]
        assert seq6 == par6

    def test_unsupported_size_rejected(self):
        with pytest.raises(SizeBoundError):
            scan_all(7)


class TestButterflyFixture:
    def test_derivation_matches_frozen_fixture(self, butterfly):
        derived, unique = derive_butterfly_fixture()
        assert derived == butterfly
        assert unique

    def test_fixture_is_a_scan_hit(self, butterfly):
        assert butterfly.edges() in EXPECTED_HITS
