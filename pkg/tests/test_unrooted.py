import random

import pytest

from forestpart.dag import UndirectedGraph
from forestpart.errors import BudgetExceededError
from forestpart.unrooted import (
    UnrootedNetwork,
    attach_leaves,
    certify_unrooted_leaf_ipp,
    four_leaf_forest_based,
    is_forest_based_unrooted_exact,
    turing_driver,
    two_path_leaf_ipp,
)

from .oracles import (
    random_four_leaf_network,
    random_min_degree3_graph,
    undirected_two_split_brute,
    unrooted_tree_based_brute,
)


def six_vertex_example():
    """Hand-built network that is tree-based but not forest-based.

    Vertices x, y, p, q, u, v are 0..5; both spanning trees with the right
    leaf set are Hamiltonian x-y paths carrying chords.
    """
    return UndirectedGraph(
        6,
        [(0, 2), (2, 5), (2, 4), (4, 5), (4, 3), (5, 3), (3, 1)],
        labels={0: "x", 1: "y", 2: "p", 3: "q", 4: "u", 5: "v"},
    )


class TestUnrootedNetwork:
    def test_validation(self):
        with pytest.raises(ValueError):
            UnrootedNetwork(UndirectedGraph(3, [(0, 1), (1, 2)]))  # degree-2 vertex
        with pytest.raises(ValueError):
            UnrootedNetwork(UndirectedGraph(4, [(0, 1), (2, 3)]))  # disconnected
        net = UnrootedNetwork(six_vertex_example())
        assert net.leaf_set == {0, 1}


class TestCertifyUnrootedLeafIpp:
    def test_tree_partition(self):
        # 5-leaf tree: two hubs, leaves 2,3,4 on hub 0 and 5,6 on hub 1
        g = UndirectedGraph(7, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6)])
        net = UnrootedNetwork(g)
        assert certify_unrooted_leaf_ipp(net, [[2, 0, 3], [5, 1, 6], [4]])

    def test_internal_path_end_rejected(self):
        g = UndirectedGraph(7, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6)])
        net = UnrootedNetwork(g)
        assert not certify_unrooted_leaf_ipp(net, [[2, 0], [3], [5, 1, 6], [4]])

    def test_non_leaf_singleton_rejected(self):
        g = UndirectedGraph(7, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 5), (1, 6)])
        net = UnrootedNetwork(g)
        assert not certify_unrooted_leaf_ipp(net, [[2, 0, 3], [5], [1], [6], [4]])

    def test_chord_rejected(self):
        # triangle with pendants: path through two triangle corners plus the
        # closing edge is not induced
        g = UndirectedGraph(6, [(0, 1), (1, 2), (0, 2), (0, 3), (1, 4), (2, 5)])
        net = UnrootedNetwork(g)
        assert not certify_unrooted_leaf_ipp(net, [[3, 0, 1, 4], [5, 2]])

    def test_coverage_required(self):
        net = UnrootedNetwork(six_vertex_example())
        assert not certify_unrooted_leaf_ipp(net, [[0, 2], [1, 3]])


class TestForestBasedExact:
    def test_six_vertex_example(self):
        net = UnrootedNetwork(six_vertex_example())
        fb, witness = is_forest_based_unrooted_exact(net)
        assert not fb and witness is None
        assert unrooted_tree_based_brute(net.graph)

    def test_trees_are_forest_based(self):
        g = UndirectedGraph(7, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5), (1, 6)])
        fb, witness = is_forest_based_unrooted_exact(UnrootedNetwork(g))
        assert fb
        # witness blocks induce trees and non-forest edges cross blocks
        comp = {}
        for i, block in enumerate(witness):
            for v in block:
                comp[v] = i
        assert sorted(comp) == list(range(7))

    def test_witness_leafsets(self):
        rng = random.Random(15)
        for _ in range(30):
            net = random_four_leaf_network(rng)
            fb, witness = is_forest_based_unrooted_exact(net)
            if not fb:
                continue
            g = net.graph
            comp = {}
            for i, block in enumerate(witness):
                for v in block:
                    comp[v] = i
            forest_leaves = set()
            for block in witness:
                bs = set(block)
                for v in block:
                    if sum(1 for w in g.adj[v] if w in bs) <= 1:
                        forest_leaves.add(v)
            assert forest_leaves == net.leaf_set

    def test_budget(self):
        net = UnrootedNetwork(six_vertex_example())
        with pytest.raises(BudgetExceededError):
            is_forest_based_unrooted_exact(net, budget=3)


class TestFourLeaf:
    def test_tree_precondition(self):
        g = UndirectedGraph(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
        with pytest.raises(ValueError):
            four_leaf_forest_based(UnrootedNetwork(g))

    def test_h_shape_two_path_split(self):
        # two degree-3 hubs joined by an edge, two leaves each: the two
        # leaf-hub-leaf paths are induced, the hub edge crosses them
        g = UndirectedGraph(6, [(0, 1), (0, 2), (0, 3), (1, 4), (1, 5)])
        net = UnrootedNetwork(g)
        split = two_path_leaf_ipp(net)
        assert split is not None
        p1, p2 = split
        assert certify_unrooted_leaf_ipp(net, [p1, p2])

    def test_k4_core_splits(self):
        # K4 core with pendants on all corners: the two paths each cross one
        # core edge and the remaining core edges run between the paths
        core = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
        pendants = [(0, 4), (1, 5), (2, 6), (3, 7)]
        net = UnrootedNetwork(UndirectedGraph(8, core + pendants))
        assert four_leaf_forest_based(net)
        assert is_forest_based_unrooted_exact(net)[0]

    def test_blocked_instance(self):
        # K5 core: an induced path visits at most two core vertices, so two
        # leaf-ended paths cannot cover the fifth corner
        core = [(i, j) for i in range(5) for j in range(i + 1, 5)]
        pendants = [(0, 5), (1, 6), (2, 7), (3, 8)]
        net = UnrootedNetwork(UndirectedGraph(9, core + pendants))
        assert not four_leaf_forest_based(net)
        assert not is_forest_based_unrooted_exact(net)[0]

    def test_agrees_with_exact(self):
        rng = random.Random(21)
        positives = 0
        for _ in range(60):
            net = random_four_leaf_network(rng)
            lemma = four_leaf_forest_based(net)
            exact = is_forest_based_unrooted_exact(net)[0]
            assert lemma == exact
            positives += lemma
        assert positives > 0


class TestTuringDriver:
    def test_k4(self):
        k4 = UndirectedGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        assert turing_driver(k4)
        assert undirected_two_split_brute(k4)

    def test_min_degree_precondition(self):
        with pytest.raises(ValueError):
            turing_driver(UndirectedGraph(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))

    def test_attach_leaves_shape(self):
        k4 = UndirectedGraph(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
        net = attach_leaves(k4, (0, 1, 2, 3))
        assert net.leaf_set == {4, 5, 6, 7}
        assert not net.is_tree()

    def test_agrees_with_direct_search(self):
        rng = random.Random(33)
        for _ in range(25):
            g = random_min_degree3_graph(rng, max_n=8)
            assert turing_driver(g) == undirected_two_split_brute(g)
