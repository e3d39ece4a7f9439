"""Orbit enumeration, equivalence, and vertex-minor oracles."""

from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given

from gsroute.errors import GraphDomainError, SizeBoundError
from gsroute.graph import (
    LabeledGraph,
    complete_graph,
    local_complement,
    path_graph,
    star_graph,
)
from gsroute.orbit import (
    find_repeater_line,
    lc_equivalent,
    lc_orbit,
    replay_operations,
    vertex_minor,
)

from .conftest import graphs, random_graph


class TestOrbit:
    def test_single_edge_orbit_is_singleton(self):
        assert len(lc_orbit(LabeledGraph([1, 2], [(1, 2)]))) == 1

    def test_triangle_orbit(self):
        record = lc_orbit(complete_graph([1, 2, 3]))
        edge_sets = {g.edges() for g in record.graphs()}
        assert edge_sets == {
            frozenset({(1, 2), (1, 3), (2, 3)}),
            frozenset({(1, 2), (1, 3)}),
            frozenset({(1, 2), (2, 3)}),
            frozenset({(1, 3), (2, 3)}),
        }

    def test_butterfly_orbit_contains_pre_measurement_graph(self, butterfly):
        record = lc_orbit(butterfly)
        cur = butterfly
        for a in (1, 3, 4):
            cur = local_complement(cur, a)
        assert cur in record

    @given(graphs(max_vertices=5))
    def test_closed_under_complementation(self, g):
        record = lc_orbit(g)
        for member in record.graphs():
            for a in member.vertices:
                assert local_complement(member, a) in record

    @given(graphs(max_vertices=6))
    def test_witnesses_replay(self, g):
        record = lc_orbit(g)
        for member in record.graphs():
            cur = g
            for a in record.witness_for(member):
                cur = local_complement(cur, a)
            assert cur == member

    def test_size_bound(self):
        with pytest.raises(SizeBoundError):
            lc_orbit(LabeledGraph(range(11)), max_vertices=10)


class TestEquivalence:
    def test_reflexive_with_empty_witness(self, grid9):
        ok, witness = lc_equivalent(grid9, grid9, max_vertices=9)
        assert ok and witness == ()

    def test_star_and_path_are_distinct_classes(self):
        ok, _ = lc_equivalent(star_graph(1, [2, 3, 4]), path_graph([1, 2, 3, 4]))
        assert not ok

    def test_complemented_graph_is_equivalent(self):
        g = path_graph([1, 2, 3, 4])
        ok, witness = lc_equivalent(g, local_complement(g, 2))
        assert ok
        assert replay_operations(g, tuple(("lc", a) for a in witness)) == local_complement(g, 2)

    def test_vertex_sets_must_match(self):
        with pytest.raises(GraphDomainError):
            lc_equivalent(path_graph([1, 2, 3]), path_graph([1, 2, 4]))

    def test_symmetric_and_transitive_on_samples(self):
        rng = random.Random(12)
        for _ in range(8):
            g = random_graph(rng, 5)
            h = g
            for _ in range(3):
                h = local_complement(h, rng.choice(h.vertices))
            k = local_complement(h, rng.choice(h.vertices))
            assert lc_equivalent(g, h)[0]
            assert lc_equivalent(h, g)[0]
            assert lc_equivalent(g, k)[0]  # transitivity via h


class TestVertexMinor:
    def test_graph_is_its_own_minor(self, grid9):
        result = vertex_minor(grid9, grid9)
        assert result.found and result.operations == ()

    def test_star_not_reachable_without_deletions(self):
        result = vertex_minor(path_graph([1, 2, 3, 4]), star_graph(1, [2, 3, 4]))
        assert not result.found

    def test_target_must_be_subset(self):
        with pytest.raises(GraphDomainError):
            vertex_minor(path_graph([1, 2, 3]), path_graph([1, 2, 9]))

    def test_agrees_with_naive_search_on_small_graphs(self):
        rng = random.Random(31)
        checked = 0
        for trial in range(130):
            n = 6 if trial % 13 == 0 else rng.randint(2, 5)
            g = random_graph(rng, n, 0.5)
            keep = sorted(rng.sample(g.vertices, rng.randint(1, n)))
            pairs = list(itertools.combinations(keep, 2))
            target = LabeledGraph(keep, [p for p in pairs if rng.random() < 0.5])
            expected = _naive_vertex_minor(g, target)
            result = vertex_minor(g, target)
            assert result.found == expected
            if result.found:
                assert replay_operations(g, result.operations) == target
            checked += 1
        assert checked == 130


def _naive_vertex_minor(g, h):
    """Unpruned breadth-first reference: no memo structure beyond a seen set."""
    hset = set(h.vertices)
    seen = {g.adjacency_key()}
    frontier = [g]
    while frontier:
        nxt = []
        for cur in frontier:
            if cur == h:
                return True
            for a in cur.vertices:
                t = local_complement(cur, a)
                if t.adjacency_key() not in seen:
                    seen.add(t.adjacency_key())
                    nxt.append(t)
            for v in cur.vertices:
                if v in hset:
                    continue
                t = cur.without_vertices([v])
                if t.adjacency_key() not in seen:
                    seen.add(t.adjacency_key())
                    nxt.append(t)
        frontier = nxt
    return False


class TestGridExtraction:
    def test_pair_edge_is_vertex_minor_of_grid(self, grid9):
        target = LabeledGraph([1, 9], [(1, 9)])
        result = vertex_minor(grid9, target)
        assert result.found
        assert replay_operations(grid9, result.operations) == target


class TestFindRepeaterLine:
    def test_five_line_is_its_own_witness(self):
        line = find_repeater_line(path_graph([1, 2, 3, 4, 5]), (1, 2, 4, 5))
        assert line is not None and line.vertices == (1, 2, 3, 4, 5)

    def test_star_has_no_witness(self):
        assert find_repeater_line(star_graph(1, [2, 3, 4]), (1, 2, 3, 4)) is None

    def test_cluster_witness_is_minimal(self, cluster12):
        line = find_repeater_line(cluster12, (1, 2, 4, 5))
        assert line is not None and line.vertices == (1, 2, 11, 4, 5)

    def test_size_bound(self):
        with pytest.raises(SizeBoundError):
            find_repeater_line(LabeledGraph(range(13)), (0, 1, 2, 3), max_vertices=12)
