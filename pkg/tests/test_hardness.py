import json
import random

import pytest

from forestpart.dag import Dag
from forestpart.hardness import (
    LANE_LEN,
    RAIL_MAIN,
    RAIL_SIDE,
    GadgetMap,
    NaeFormula,
    NotNaeError,
    assignment_to_partition,
    build,
    extend_partition_networkized,
    format_cnf,
    lift_partition_single_root,
    networkize,
    parse_cnf,
    single_root,
    switcher_route,
    witness_weak_pp,
)
from forestpart.ipp import leaf_ipp_exact
from forestpart.partition import Kind, certify, is_weakly_forest_based

from .oracles import nae_satisfiable, random_formula

SAMPLE = NaeFormula.of(4, [(0, 1, 3), (0, 2, 3)])


class TestNaeFormula:
    def test_rejects_repeated_variable(self):
        with pytest.raises(ValueError):
            NaeFormula.of(3, [(0, 0, 1)])

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            NaeFormula.of(3, [])

    def test_violating_clause(self):
        assert SAMPLE.violating_clause([True, True, True, True]) == 0
        assert SAMPLE.violating_clause([True, False, False, True]) is None

    def test_occurrences(self):
        assert SAMPLE.occurrences(0) == [0, 1]
        assert SAMPLE.occurrences(2) == [1]


class TestCnfFormat:
    def test_round_trip(self):
        text = format_cnf(SAMPLE)
        assert text == "p cnf 4 2\n1 2 4 0\n1 3 4 0\n"
        assert parse_cnf(text) == SAMPLE

    def test_comments_ignored(self):
        assert parse_cnf("c hi\np cnf 3 1\n1 2 3 0\n") == NaeFormula.of(3, [(0, 1, 2)])

    def test_negative_literal_rejected(self):
        with pytest.raises(ValueError):
            parse_cnf("p cnf 3 1\n1 -2 3 0\n")

    def test_clause_count_mismatch(self):
        with pytest.raises(ValueError):
            parse_cnf("p cnf 3 2\n1 2 3 0\n")

    def test_missing_terminator(self):
        with pytest.raises(ValueError):
            parse_cnf("p cnf 3 1\n1 2 3\n")


class TestBuild:
    def test_sample_counts(self):
        dag, gm = build(SAMPLE)
        assert dag.vertex_count == 52
        assert len(dag.arcs) == 75
        assert len(dag.roots()) == 3
        assert len(dag.leaves()) == 3

    def test_single_clause_counts(self):
        dag, _ = build(NaeFormula.of(3, [(0, 1, 2)]))
        assert dag.vertex_count == 30
        rep = dag.classify()
        assert rep.is_binary
        assert len(dag.roots()) == 3 and len(dag.leaves()) == 3

    def test_roots_are_rail_entries_and_third_lane(self):
        dag, gm = build(SAMPLE)
        expected = {gm.var_in[0][RAIL_MAIN], gm.var_in[0][RAIL_SIDE], gm.lane[0][2][0]}
        assert dag.roots() == expected
        assert dag.leaves() == set(gm.exit_vertices(len(SAMPLE.clauses) - 1))

    def test_occurrence_vertex_feeds_matching_exit(self):
        # variable 2 appears only in clause 1, as its second literal
        dag, gm = build(SAMPLE)
        occ = gm.occ_vertex(2, 1)
        assert (occ, gm.lane[1][1][LANE_LEN - 1]) in dag.arcs

    def test_skipped_variable_uses_join_connector(self):
        # variable 1 of this formula occurs in no clause
        phi = NaeFormula.of(4, [(0, 2, 3)])
        dag, gm = build(phi)
        assert gm.var_occ[1] == []
        assert (gm.var_join[1][RAIL_MAIN], gm.var_in[2][RAIL_MAIN]) in dag.arcs
        assert dag.classify().is_binary
        assert leaf_ipp_exact(dag) is not None

    def test_size_and_degree_invariants(self):
        rng = random.Random(3)
        for _ in range(30):
            phi = random_formula(rng, max_n=7, max_m=7)
            n, m = phi.variable_count, len(phi.clauses)
            dag, _ = build(phi)
            assert dag.vertex_count == 4 * n + 18 * m
            assert len(dag.arcs) == 6 * n + 27 * m - 3
            assert dag.classify().is_binary
            assert all(
                dag.in_degree(v) + dag.out_degree(v) <= 3 for v in range(dag.vertex_count)
            )

    def test_weakly_forest_based(self):
        dag, _ = build(SAMPLE)
        assert is_weakly_forest_based(dag)[0]


class TestSwitcherRoute:
    def test_identity_is_straight(self):
        visits = switcher_route((1, 2, 3), (1, 2, 3))
        assert visits[1] == [(0, p) for p in range(5)]
        assert visits[2] == [(1, p) for p in range(5)]
        assert visits[3] == [(2, p) for p in range(5)]

    def test_cited_rotation(self):
        # first entering path exits second, second exits third, third exits first
        visits = switcher_route(("b", "a", "c"), ("c", "b", "a"))
        assert visits["b"][0] == (0, 0) and visits["b"][-1] == (1, 4)
        assert visits["a"][0] == (1, 0) and visits["a"][-1] == (2, 4)
        assert visits["c"][0] == (2, 0) and visits["c"][-1] == (0, 4)

    def test_all_permutations_locally_induced(self):
        from itertools import permutations

        dag, gm = build(NaeFormula.of(3, [(0, 1, 2)]))
        lane_vertex = {
            (k, pos): gm.lane[0][k][pos] for k in range(3) for pos in range(LANE_LEN)
        }
        gadget = set(lane_vertex.values())
        for perm in permutations((0, 1, 2)):
            visits = switcher_route((0, 1, 2), perm)
            assert sum(len(v) for v in visits.values()) == 15
            for seq in visits.values():
                vs = [lane_vertex[x] for x in seq]
                for a, b in zip(vs, vs[1:]):
                    assert (a, b) in dag.arcs
                used = set(zip(vs, vs[1:]))
                for a in vs:
                    for b in dag.out_adj[a]:
                        if b in gadget and b in vs and (a, b) not in used:
                            raise AssertionError(f"chord {(a, b)} in permutation {perm}")

    def test_rejects_bad_labels(self):
        with pytest.raises(ValueError):
            switcher_route((1, 1, 2), (1, 2, 1))


class TestAssignmentToPartition:
    def test_sample_routing(self):
        dag, gm = build(SAMPLE)
        pp = assignment_to_partition(dag, gm, [True, False, False, True])
        assert pp.kind is Kind.LEAF_IPP
        first = pp.paths[0]
        assert first[0] == gm.var_in[0][RAIL_MAIN]
        # the first path exits clause 0 over its false second variable and
        # clause 1 over its false second variable
        assert gm.lane[0][1][LANE_LEN - 1] in first
        assert gm.lane[1][1][LANE_LEN - 1] in first

    def test_all_true_rejected(self):
        dag, gm = build(SAMPLE)
        with pytest.raises(NotNaeError) as info:
            assignment_to_partition(dag, gm, [True] * 4)
        assert info.value.clause_index == 0

    def test_random_assignments_certify(self):
        rng = random.Random(8)
        done = 0
        while done < 20:
            phi = random_formula(rng, max_n=6, max_m=5)
            dag, gm = build(phi)
            assignment = [rng.random() < 0.5 for _ in range(phi.variable_count)]
            if phi.violating_clause(assignment) is not None:
                continue
            pp = assignment_to_partition(dag, gm, assignment)
            assert pp.kind is Kind.LEAF_IPP
            # occurrence vertices sit on the first path exactly for true variables
            members = {v: i for i, p in enumerate(pp.paths) for v in p}
            for i in range(phi.variable_count):
                for j, occ in gm.var_occ[i]:
                    assert (members[occ] == 0) == assignment[i]
                    exit_v = gm.lane[j][phi.clauses[j].index(i)][LANE_LEN - 1]
                    assert members[occ] != members[exit_v]
            done += 1

    def test_complemented_assignment_also_works(self):
        dag, gm = build(SAMPLE)
        a = [True, False, False, True]
        pp = assignment_to_partition(dag, gm, [not x for x in a])
        assert pp.kind is Kind.LEAF_IPP


class TestWeakWitness:
    def test_three_leaf_paths(self):
        dag, gm = build(SAMPLE)
        pp = witness_weak_pp(dag, gm)
        assert pp.kind is Kind.LEAF_PP
        assert len(pp.paths) == 3
        assert sum(len(p) for p in pp.paths) == 52

    def test_single_clause_not_induced(self):
        dag, gm = build(NaeFormula.of(3, [(0, 1, 2)]))
        pp = witness_weak_pp(dag, gm)
        assert pp.kind is Kind.LEAF_PP
        cert = certify(dag, pp.paths)
        assert not cert.induced and "chord" in cert.reason


class TestTransforms:
    def test_networkize_adds_pendants(self):
        dag, gm = build(SAMPLE)
        net, gm2 = networkize(dag, gm)
        assert net.vertex_count == 55
        rep = net.classify()
        assert rep.is_network and rep.is_binary
        assert len(gm2.extension_leaves) == 3
        roles = gm2.roles()
        assert sum(1 for r in roles.values() if r["role"] == "pendant_leaf") == 3

    def test_networkize_leaves_indegree_one_alone(self):
        g = Dag(2, [(0, 1)])
        g2, _ = networkize(g, None)
        assert g2 == g

    def test_single_root(self):
        dag, _ = build(SAMPLE)
        net, _ = networkize(dag, None)
        single = single_root(net)
        assert single.vertex_count == net.vertex_count + 2
        rep = single.classify()
        assert rep.is_phylogenetic_network and rep.is_binary
        assert len(single.roots()) == 1

    def test_single_root_requires_three_roots(self):
        with pytest.raises(ValueError):
            single_root(Dag(2, [(0, 1)]))

    def test_witness_lifts(self):
        dag, gm = build(SAMPLE)
        pp = assignment_to_partition(dag, gm, [True, False, False, True])
        net, _ = networkize(dag, gm)
        lifted = extend_partition_networkized(pp, dag, net)
        assert lifted.kind is Kind.LEAF_IPP
        single = single_root(net)
        lifted2 = lift_partition_single_root(lifted, net, single)
        assert lifted2.kind is Kind.LEAF_IPP
        a = sorted(net.roots())[0]
        target = next(p for p in lifted2.paths if a in p)
        assert target[:3] == (net.vertex_count, net.vertex_count + 1, a)

    def test_weak_witness_extends_through_networkize(self):
        dag, gm = build(SAMPLE)
        pp = witness_weak_pp(dag, gm)
        net, _ = networkize(dag, gm)
        lifted = extend_partition_networkized(pp, dag, net)
        assert lifted.kind is Kind.LEAF_PP

    def test_feasibility_preserved_small(self):
        rng = random.Random(77)
        for _ in range(8):
            phi = random_formula(rng, max_n=5, max_m=4)
            dag, gm = build(phi)
            base = leaf_ipp_exact(dag) is not None
            net, _ = networkize(dag, gm)
            assert (leaf_ipp_exact(net) is not None) == base
            single = single_root(net)
            assert (leaf_ipp_exact(single) is not None) == base


class TestGadgetMapExport:
    def test_jsonl_covers_every_vertex(self):
        dag, gm = build(SAMPLE)
        lines = gm.to_jsonl().strip().split("\n")
        assert len(lines) == 52
        records = [json.loads(line) for line in lines]
        assert [r["vertex"] for r in records] == list(range(52))
        roles = {r["role"] for r in records}
        assert roles == {"var_in", "var_join", "var_occ", "lane", "lane_exit"}
