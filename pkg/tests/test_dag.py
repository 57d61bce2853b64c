import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forestpart.dag import (
    CyclicGraphError,
    Dag,
    UndirectedGraph,
    format_dag,
    format_undirected,
    parse_dag,
    parse_undirected,
    to_dot,
)


def diamond():
    return Dag(4, [(0, 1), (0, 2), (1, 3), (2, 3)])


@st.composite
def dags(draw, max_n=8):
    n = draw(st.integers(1, max_n))
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    chosen = draw(st.sets(st.sampled_from(pairs)) if pairs else st.just(set()))
    return Dag(n, chosen)


class TestConstruction:
    def test_rejects_cycle(self):
        with pytest.raises(CyclicGraphError):
            Dag(3, [(0, 1), (1, 2), (2, 0)])

    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Dag(2, [(0, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(ValueError):
            Dag(2, [(0, 5)])

    def test_parallel_arcs_collapse(self):
        g = Dag(2, [(0, 1), (0, 1)])
        assert len(g.arcs) == 1

    def test_adjacency_consistent(self):
        g = diamond()
        assert g.out_adj[0] == (1, 2)
        assert g.in_adj[3] == (1, 2)
        assert {(u, v) for u in range(4) for v in g.out_adj[u]} == g.arcs


class TestRootsLeaves:
    def test_single_arc(self):
        g = Dag(2, [(0, 1)])
        assert g.roots() == {0}
        assert g.leaves() == {1}

    def test_diamond(self):
        assert diamond().roots() == {0}
        assert diamond().leaves() == {3}


class TestClassify:
    def test_diamond(self):
        # u and v are subdivision vertices and the sink has indegree 2, so
        # the diamond is semi-binary but neither binary nor a network
        rep = diamond().classify()
        assert rep.is_semi_binary
        assert not rep.is_binary
        assert rep.has_subdivision_vertex
        assert rep.subdivision_vertices == frozenset({1, 2})
        assert rep.reticulations == frozenset()
        assert not rep.is_network
        assert any("indegree" in v for v in rep.network_violations)

    def test_chain_has_subdivision_vertex(self):
        rep = Dag(3, [(0, 1), (1, 2)]).classify()
        assert rep.has_subdivision_vertex
        assert rep.subdivision_vertices == frozenset({1})

    def test_single_vertex_is_network(self):
        rep = Dag(1, []).classify()
        assert rep.is_network
        assert rep.is_phylogenetic_network

    def test_binary_network(self):
        # one reticulation (vertex 4) with its own pendant leaf
        g = Dag(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 4), (2, 5), (4, 6)])
        rep = g.classify()
        assert rep.is_binary
        assert rep.is_network
        assert rep.is_phylogenetic_network
        assert rep.reticulations == frozenset({4})

    @given(dags())
    @settings(max_examples=150, deadline=None)
    def test_binary_implies_semi_binary(self, g):
        rep = g.classify()
        if rep.is_binary:
            assert rep.is_semi_binary

    @given(dags())
    @settings(max_examples=150, deadline=None)
    def test_roots_leaves_disjoint_when_connected(self, g):
        if g.vertex_count >= 2 and g.is_connected():
            assert not (g.roots() & g.leaves())


class TestInducedPath:
    def test_chain(self):
        g = Dag(3, [(0, 1), (1, 2)])
        assert g.is_induced_path([0, 1, 2])

    def test_chord_disqualifies(self):
        g = Dag(3, [(0, 1), (1, 2), (0, 2)])
        assert g.is_path([0, 1, 2])
        assert not g.is_induced_path([0, 1, 2])

    def test_diamond_side(self):
        g = diamond()
        seq = [0, 1, 3]
        # enumeration oracle: no arc among the sequence other than the two used
        used = {(0, 1), (1, 3)}
        extra = [
            (u, v)
            for u in seq
            for v in seq
            if u != v and (u, v) in g.arcs and (u, v) not in used
        ]
        assert extra == []
        assert g.is_induced_path(seq)

    def test_duplicates_rejected(self):
        g = Dag(2, [(0, 1)])
        assert not g.is_induced_path([0, 1, 0])
        assert not g.is_induced_path([])
        assert g.is_induced_path([1])

    @given(dags())
    @settings(max_examples=100, deadline=None)
    def test_prefix_property(self, g):
        # every prefix of an induced path is again an induced path
        for v in range(g.vertex_count):
            path = [v]
            while g.out_adj[path[-1]]:
                path.append(g.out_adj[path[-1]][0])
            if g.is_induced_path(path):
                for cut in range(1, len(path)):
                    assert g.is_induced_path(path[:cut])


class TestEdgeListFormat:
    def test_round_trip_with_labels_and_isolated(self):
        g = Dag(5, [(0, 1), (1, 2)], labels={0: "root one", 4: "spare"})
        text = format_dag(g)
        assert parse_dag(text) == g
        assert format_dag(parse_dag(text)) == text  # bit-exact

    def test_round_trip_empty(self):
        g = Dag(0, [])
        assert parse_dag(format_dag(g)) == g

    def test_rejects_undirected_header(self):
        with pytest.raises(ValueError):
            parse_dag("undirected\n0 1\n")

    def test_undirected_round_trip(self):
        g = UndirectedGraph(4, [(0, 1), (2, 1)], labels={3: "lone"})
        text = format_undirected(g)
        assert text.startswith("undirected\n")
        assert parse_undirected(text) == g
        assert format_undirected(parse_undirected(text)) == text

    def test_undirected_requires_header(self):
        with pytest.raises(ValueError):
            parse_undirected("0 1\n")

    def test_dot_export(self):
        dot = to_dot(diamond())
        assert dot.startswith("digraph")
        assert "0 -> 1;" in dot
        und = to_dot(UndirectedGraph(2, [(0, 1)]))
        assert und.startswith("graph")
        assert "0 -- 1;" in und


class TestUndirectedGraph:
    def test_leaves_and_degrees(self):
        g = UndirectedGraph(4, [(0, 1), (1, 2), (1, 3)])
        assert g.leaves() == {0, 2, 3}
        assert g.degree(1) == 3

    def test_is_tree(self):
        assert UndirectedGraph(3, [(0, 1), (1, 2)]).is_tree()
        assert not UndirectedGraph(3, [(0, 1), (1, 2), (0, 2)]).is_tree()

    def test_induced_path_conventions(self):
        g = UndirectedGraph(4, [(0, 1), (1, 2), (2, 3), (0, 3)])
        assert g.is_induced_path([0])
        assert g.is_induced_path([0, 1])
        assert g.is_induced_path([0, 1, 2])
        assert not g.is_induced_path([0, 1, 2, 3])  # closing edge is a chord
