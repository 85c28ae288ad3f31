"""Tests for the graph and vertex-set algebra."""

import networkx as nx
import numpy as np
import pytest

from gslab.corpus_configs import build_graph, random_graphs
from gslab.graph import (
    Graph,
    PairRelation,
    VertexSet,
    closed_neighbors,
    degree,
    handshake_parity_holds,
    internal_edge_count,
    is_regular,
    neighbors,
    odd_degree_vertices,
    predicates,
    remove_vertex,
    sym_diff,
    sym_diff_all,
)


class TestVertexSet:
    """Bitmask subsets of a fixed universe."""

    def test_of_and_members(self):
        s = VertexSet.of(5, [3, 1])
        assert s.members() == [1, 3]
        assert 3 in s and 2 not in s
        assert len(s) == 2

    def test_out_of_range_member(self):
        with pytest.raises(ValueError, match="out of range"):
            VertexSet.of(3, [3])

    def test_bits_outside_universe(self):
        with pytest.raises(ValueError, match="outside"):
            VertexSet(2, 0b100)

    def test_self_difference_is_empty(self):
        s = VertexSet.of(4, [2])
        assert not sym_diff(s, s)

    def test_sym_diff_example(self):
        assert sym_diff(VertexSet.of(4, [1, 2]), VertexSet.of(4, [2, 3])) == VertexSet.of(4, [1, 3])

    def test_operator_matches_function(self):
        a, b = VertexSet.of(6, [0, 4, 5]), VertexSet.of(6, [4, 1])
        assert a ^ b == sym_diff(a, b)
        assert (a | b).members() == [0, 1, 4, 5]
        assert (a & b).members() == [4]
        assert (a - b).members() == [0, 5]

    def test_mismatched_universes(self):
        with pytest.raises(ValueError, match="Mismatched universes"):
            sym_diff(VertexSet(3), VertexSet(4))

    def test_sym_diff_all_empty_iterable(self):
        assert sym_diff_all(3, []) == VertexSet(3)

    def test_with_and_without_vertex(self):
        s = VertexSet(4).with_vertex(2).with_vertex(0)
        assert s.without_vertex(2).members() == [0]


class TestGraphConstruction:
    """Graph.from_edges and its validation."""

    def test_edges_sorted(self):
        g = Graph.from_edges(4, [(3, 0), (2, 1)])
        assert g.edges() == [(0, 3), (1, 2)]
        assert g.edge_count == 2

    def test_self_loop_rejected(self):
        with pytest.raises(ValueError, match="Self-loop"):
            Graph.from_edges(3, [(1, 1)])

    def test_repeated_edge_rejected(self):
        with pytest.raises(ValueError, match="Repeated edge"):
            Graph.from_edges(3, [(0, 1), (1, 0)])

    def test_out_of_range_edge(self):
        with pytest.raises(ValueError, match="out of range"):
            Graph.from_edges(3, [(0, 3)])

    def test_asymmetric_rows_rejected(self):
        rows = (VertexSet.of(2, [1]), VertexSet(2))
        with pytest.raises(ValueError, match="Asymmetric"):
            Graph(2, rows)

    def test_from_networkx_relabels_sorted(self):
        g = Graph.from_networkx(nx.grid_2d_graph(2, 2))
        # nodes sorted: (0,0) (0,1) (1,0) (1,1)
        assert g.edges() == [(0, 1), (0, 2), (1, 3), (2, 3)]

    def test_edge_flip(self, path3):
        assert path3.with_edge_flipped(0, 2).edge_count == 3
        assert path3.with_edge_flipped(1, 0).edges() == [(1, 2)]


class TestNeighbourhoods:
    """neighbors, closed_neighbors, degree and handshake checks."""

    def test_path_centre(self, path3):
        assert neighbors(path3, 1).members() == [0, 2]

    def test_edgeless(self, edgeless3):
        assert not neighbors(edgeless3, 1)

    def test_cycle(self, c4):
        assert neighbors(c4, 0).members() == [1, 3]
        assert closed_neighbors(c4, 0).members() == [0, 1, 3]

    def test_vertex_out_of_range(self, path3):
        with pytest.raises(ValueError, match="out of range"):
            neighbors(path3, 3)

    def test_c4_neighbourhoods_cancel(self, c4):
        assert not sym_diff_all(4, (neighbors(c4, v) for v in range(4)))

    def test_degrees(self, path3):
        assert [degree(path3, v) for v in range(3)] == [1, 2, 1]
        assert odd_degree_vertices(path3) == [0, 2]
        assert handshake_parity_holds(path3)

    def test_regularity(self, c4, path3):
        assert is_regular(c4)
        assert not is_regular(path3)
        assert is_regular(build_graph('torus3x3'))


class TestPredicates:
    """Pair relations that make two-point correlators nonzero."""

    def test_path_ends_are_twins(self, path3):
        assert predicates(path3, 0, 2) == {PairRelation.TWINS}

    def test_triangle_adjacent_twins(self, k3):
        for nu, mu in [(0, 1), (0, 2), (1, 2)]:
            assert predicates(k3, nu, mu) == {PairRelation.ADJACENT_TWINS}

    def test_leaf(self, path3):
        assert predicates(path3, 0, 1) == {PairRelation.LEAF_FIRST}
        assert predicates(path3, 1, 0) == {PairRelation.LEAF_SECOND}

    def test_single_edge_holds_several(self, k2):
        assert predicates(k2, 0, 1) == {
            PairRelation.ADJACENT_TWINS, PairRelation.LEAF_FIRST, PairRelation.LEAF_SECOND,
        }

    def test_c4_adjacent_pair_has_none(self, c4):
        assert predicates(c4, 0, 1) == frozenset()

    def test_same_vertex_rejected(self, c4):
        with pytest.raises(ValueError, match="distinct"):
            predicates(c4, 2, 2)


class TestRemoveVertex:
    """Vertex isolation keeps the universe."""

    def test_path_centre(self, path3):
        g = remove_vertex(path3, 1)
        assert g.n == 3 and g.edge_count == 0

    def test_triangle(self, k3):
        assert remove_vertex(k3, 0).edges() == [(1, 2)]

    def test_star_centre(self):
        assert remove_vertex(build_graph('K1,4'), 0).edge_count == 0

    def test_other_rows_untouched(self, c4):
        g = remove_vertex(c4, 0)
        assert neighbors(g, 2) == neighbors(c4, 2)


class TestInternalEdgeCount:

    def test_examples(self, k3, c4, k2):
        assert internal_edge_count(k3, VertexSet.full(3)) == 3
        assert internal_edge_count(c4, VertexSet.of(4, [0, 2])) == 0
        assert internal_edge_count(k2, VertexSet.full(2)) == 1

    def test_universe_mismatch(self, k3):
        with pytest.raises(ValueError):
            internal_edge_count(k3, VertexSet.full(4))


def random_subset(rng, n):
    return VertexSet.of(n, [int(v) for v in np.flatnonzero(rng.random(n) < 0.5)])


class TestRandomGraphInvariants:
    """Adjacency and set-algebra laws on seeded G(n, p) graphs up to 64 vertices."""

    @pytest.fixture(scope='class')
    def graphs(self):
        return random_graphs(30, max_n=64, seed=23, min_n=2)

    def test_adjacency_symmetric(self, graphs):
        for name, g in graphs:
            for v in range(g.n):
                assert v not in g.adj[v], name
                assert all(v in g.adj[u] for u in g.adj[v]), name

    def test_handshake(self, graphs):
        for name, g in graphs:
            assert sum(degree(g, v) for v in range(g.n)) == 2 * g.edge_count, name
            assert handshake_parity_holds(g), name

    def test_sym_diff_associative(self, graphs):
        rng = np.random.default_rng(5)
        for _, g in graphs:
            a, b, c = (random_subset(rng, g.n) for _ in range(3))
            assert (a ^ b) ^ c == a ^ (b ^ c)

    def test_neighbourhoods_cancel_iff_all_degrees_even(self, graphs):
        named = [(name, build_graph(name)) for name in ('C4', 'C6', 'K3', 'K4', 'P4', 'torus3x3')]
        for name, g in graphs + named:
            combined = sym_diff_all(g.n, (neighbors(g, v) for v in range(g.n)))
            assert combined.members() == odd_degree_vertices(g), name
            assert (not combined) == all(degree(g, v) % 2 == 0 for v in range(g.n)), name
