"""Generator of hard leaf-IPP instances from monotone not-all-equal formulas.

A monotone NAE-3-SAT formula (every clause three distinct positive literals)
is compiled into a connected binary DAG with three roots and three leaves
that admits a leaf induced path partition exactly when the formula has an
assignment leaving every clause with at least one true and one false
variable. Two further transforms turn the raw instance into a proper
network (pendant leaves under indegree-2 sinks) and into a single-rooted
network (a fresh root over the three old ones); both preserve feasibility.

Construction outline. Each variable gets a gadget of two parallel rails
with crossover arcs at the entry, so of the two paths traversing the rail
region exactly one picks up the variable's chain of per-clause occurrence
vertices; occurrence vertices of true variables end up on the first path.
Each clause gets a gadget of three five-vertex lanes tied by three pairwise
lane switchers, letting the incoming paths exit on any lane; a lane exit is
also fed by the occurrence vertex of one clause variable, so a path may
leave through an exit only if it avoided that occurrence vertex. A third
path sweeps the remaining lane vertices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

from .dag import Dag
from .partition import Kind, PathPartition, certified_partition, certify


class NotNaeError(ValueError):
    """The assignment leaves some clause with all-equal values."""

    def __init__(self, clause_index):
        super().__init__(f"clause {clause_index} has all-equal values under the assignment")
        self.clause_index = clause_index


@dataclass(frozen=True)
class NaeFormula:
    """Monotone 3-clause formula: every clause three distinct variable indices."""

    variable_count: int
    clauses: tuple[tuple[int, int, int], ...]

    @staticmethod
    def of(variable_count, clauses):
        clauses = tuple(tuple(c) for c in clauses)
        if variable_count < 1 or not clauses:
            raise ValueError("formula needs at least one variable and one clause")
        for idx, c in enumerate(clauses):
            if len(c) != 3 or len(set(c)) != 3:
                raise ValueError(f"clause {idx} must contain three distinct variables")
            if any(not 0 <= v < variable_count for v in c):
                raise ValueError(f"clause {idx} out of range")
        return NaeFormula(variable_count, clauses)

    def occurrences(self, var):
        """Clause indices containing ``var``, in clause order."""
        return [j for j, c in enumerate(self.clauses) if var in c]

    def violating_clause(self, assignment):
        """First clause with all-equal values, or None when NAE-satisfied."""
        for j, c in enumerate(self.clauses):
            vals = {assignment[v] for v in c}
            if len(vals) == 1:
                return j
        return None


# DIMACS-style input: "p cnf <vars> <clauses>" then three positive literals
# per line, 0-terminated. Negative literals are rejected (monotone contract).


def parse_cnf(text: str) -> NaeFormula:
    variable_count = None
    declared = None
    clauses = []
    for ln, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            fields = line.split()
            if len(fields) != 4 or fields[1] != "cnf":
                raise ValueError(f"line {ln}: malformed problem line")
            variable_count, declared = int(fields[2]), int(fields[3])
            continue
        lits = [int(f) for f in line.split()]
        if not lits or lits[-1] != 0:
            raise ValueError(f"line {ln}: clause must be 0-terminated")
        lits = lits[:-1]
        if any(l < 0 for l in lits):
            raise ValueError(f"line {ln}: negative literal in monotone formula")
        clauses.append(tuple(l - 1 for l in lits))
    if variable_count is None:
        raise ValueError("missing 'p cnf' line")
    if declared != len(clauses):
        raise ValueError(f"declared {declared} clauses, found {len(clauses)}")
    return NaeFormula.of(variable_count, clauses)


def format_cnf(formula: NaeFormula) -> str:
    lines = [f"p cnf {formula.variable_count} {len(formula.clauses)}"]
    for c in formula.clauses:
        lines.append(" ".join(str(v + 1) for v in c) + " 0")
    return "\n".join(lines) + "\n"


# --- gadget map -------------------------------------------------------------

RAIL_MAIN = 0  # rail carrying the occurrence chain
RAIL_SIDE = 1  # two-vertex bypass rail
LANE_LEN = 5  # vertices per clause lane; position 4 is the exit


class GadgetMap:
    """Vertex-id bookkeeping for a generated instance.

    Variable gadget of variable ``i``: rail entries ``var_in[i][rail]``,
    rail joins ``var_join[i][rail]`` (the indegree-2 crossover targets), and
    the occurrence chain ``var_occ[i]`` as (clause, vertex) pairs. Clause
    gadget of clause ``j``: ``lane[j][lane][pos]`` with ``pos`` 0..4 along
    each lane; ``lane[j][k][4]`` is the exit fed by the occurrence vertex of
    the clause's k-th variable.
    """

    def __init__(self, variable_count, clause_count):
        self.variable_count = variable_count
        self.clause_count = clause_count
        self.var_in = [[None, None] for _ in range(variable_count)]
        self.var_join = [[None, None] for _ in range(variable_count)]
        self.var_occ = [[] for _ in range(variable_count)]
        self.lane = [[[None] * LANE_LEN for _ in range(3)] for _ in range(clause_count)]
        self.extension_leaves = []  # (new_leaf, old_leaf) pairs added by networkize
        self.added_roots = []  # [root, root_child] added by single_root

    def occ_vertex(self, var, clause):
        for j, v in self.var_occ[var]:
            if j == clause:
                return v
        raise KeyError(f"variable {var} does not occur in clause {clause}")

    def exit_vertices(self, clause):
        return tuple(self.lane[clause][k][LANE_LEN - 1] for k in range(3))

    def roles(self):
        """Vertex id -> role dict, for the JSON-lines dump."""
        roles = {}
        for i in range(self.variable_count):
            for rail in (RAIL_MAIN, RAIL_SIDE):
                roles[self.var_in[i][rail]] = {"role": "var_in", "var": i, "rail": rail}
                roles[self.var_join[i][rail]] = {"role": "var_join", "var": i, "rail": rail}
            for j, v in self.var_occ[i]:
                roles[v] = {"role": "var_occ", "var": i, "clause": j}
        for j in range(self.clause_count):
            for k in range(3):
                for pos in range(LANE_LEN):
                    v = self.lane[j][k][pos]
                    if pos == LANE_LEN - 1:
                        roles[v] = {"role": "lane_exit", "clause": j, "lane": k}
                    else:
                        roles[v] = {"role": "lane", "clause": j, "lane": k, "pos": pos}
        for new_leaf, old_leaf in self.extension_leaves:
            roles[new_leaf] = {"role": "pendant_leaf", "below": old_leaf}
        if self.added_roots:
            root, child = self.added_roots
            roles[root] = {"role": "root"}
            roles[child] = {"role": "root_child"}
        return roles

    def to_jsonl(self) -> str:
        lines = []
        for v, role in sorted(self.roles().items()):
            lines.append(json.dumps({"vertex": v, **role}, sort_keys=True))
        return "\n".join(lines) + "\n"

    def copy(self):
        other = GadgetMap(self.variable_count, self.clause_count)
        other.var_in = [list(r) for r in self.var_in]
        other.var_join = [list(r) for r in self.var_join]
        other.var_occ = [list(r) for r in self.var_occ]
        other.lane = [[list(l) for l in lanes] for lanes in self.lane]
        other.extension_leaves = list(self.extension_leaves)
        other.added_roots = list(self.added_roots)
        return other


def build(formula: NaeFormula) -> tuple[Dag, GadgetMap]:
    """Compile a formula into a connected binary DAG with 3 roots and 3 leaves.

    The instance has exactly ``4n + 18m`` vertices for ``n`` variables and
    ``m`` clauses. Variables occurring in no clause degrade to a bare
    two-vertex rail whose outgoing connector leaves from the rail join.
    """
    n, m = formula.variable_count, len(formula.clauses)
    gm = GadgetMap(n, m)
    labels = {}
    arcs = []
    next_id = 0

    def new_vertex(label):
        nonlocal next_id
        v = next_id
        next_id += 1
        labels[v] = label
        return v

    # variable gadgets, in variable order
    for i in range(n):
        a_in = new_vertex(f"v{i}.in0")
        a_join = new_vertex(f"v{i}.join0")
        b_in = new_vertex(f"v{i}.in1")
        b_join = new_vertex(f"v{i}.join1")
        gm.var_in[i] = [a_in, b_in]
        gm.var_join[i] = [a_join, b_join]
        arcs += [(a_in, a_join), (b_in, b_join), (a_in, b_join), (b_in, a_join)]
        prev = a_join
        for j in formula.occurrences(i):
            occ = new_vertex(f"v{i}.c{j}")
            gm.var_occ[i].append((j, occ))
            arcs.append((prev, occ))
            prev = occ

    def main_rail_end(i):
        return gm.var_occ[i][-1][1] if gm.var_occ[i] else gm.var_join[i][RAIL_MAIN]

    for i in range(n - 1):
        arcs.append((main_rail_end(i), gm.var_in[i + 1][RAIL_MAIN]))
        arcs.append((gm.var_join[i][RAIL_SIDE], gm.var_in[i + 1][RAIL_SIDE]))

    # clause gadgets, in clause order; lanes laid out one after the other
    for j in range(m):
        for k in range(3):
            for pos in range(LANE_LEN):
                name = f"c{j}.l{k}.exit" if pos == LANE_LEN - 1 else f"c{j}.l{k}.{pos}"
                gm.lane[j][k][pos] = new_vertex(name)
            for pos in range(LANE_LEN - 1):
                arcs.append((gm.lane[j][k][pos], gm.lane[j][k][pos + 1]))
        lane = gm.lane[j]
        # pairwise switchers: lanes (0,1) at positions 0->1, lanes (0,2) at
        # 2->3, lanes (1,2) at 2->3; each is a crossing pair of arcs
        arcs += [(lane[0][0], lane[1][1]), (lane[1][0], lane[0][1])]
        arcs += [(lane[0][2], lane[2][1]), (lane[2][0], lane[0][3])]
        arcs += [(lane[1][2], lane[2][3]), (lane[2][2], lane[1][3])]

    for j in range(m - 1):
        for k in range(3):
            arcs.append((gm.lane[j][k][LANE_LEN - 1], gm.lane[j + 1][k][0]))

    # bridge the variable region into the first clause gadget (lanes 0 and 1);
    # lane 2 of the first clause starts at a root
    arcs.append((main_rail_end(n - 1), gm.lane[0][0][0]))
    arcs.append((gm.var_join[n - 1][RAIL_SIDE], gm.lane[0][1][0]))

    # occurrence vertex of each clause variable feeds the matching lane exit
    for j, clause in enumerate(formula.clauses):
        for k, var in enumerate(clause):
            arcs.append((gm.occ_vertex(var, j), gm.lane[j][k][LANE_LEN - 1]))

    dag = Dag(next_id, arcs, labels)
    assert dag.vertex_count == 4 * n + 18 * m
    return dag, gm


def _simulate_gates(gates, entering):
    """Run the three lane switchers over entering row occupants.

    Returns (visits, final_rows): per-occupant ordered (lane, pos) visits
    inside one clause gadget, and the occupant exiting on each lane.
    """
    rows = list(entering)
    visits = {label: [] for label in rows}
    for k in range(3):
        visits[rows[k]].append((k, 0))
    swap_a, swap_b, swap_c = gates
    if swap_a:
        rows[0], rows[1] = rows[1], rows[0]
    visits[rows[0]] += [(0, 1), (0, 2)]
    visits[rows[1]] += [(1, 1), (1, 2)]
    if swap_b:
        rows[0], rows[2] = rows[2], rows[0]
    visits[rows[0]] += [(0, 3), (0, 4)]
    visits[rows[2]] += [(2, 1), (2, 2)]
    if swap_c:
        rows[1], rows[2] = rows[2], rows[1]
    visits[rows[1]] += [(1, 3), (1, 4)]
    visits[rows[2]] += [(2, 3), (2, 4)]
    return visits, rows


def _gate_table():
    table = {}
    for gates in product((0, 1), repeat=3):
        _, rows = _simulate_gates(gates, (0, 1, 2))
        perm = [None] * 3
        for exit_row, entry_row in enumerate(rows):
            perm[entry_row] = exit_row
        table.setdefault(tuple(perm), gates)
    return table


_GATES_FOR_PERM = _gate_table()


def switcher_route(entering, desired):
    """Route three paths through one clause gadget.

    ``entering``: the path labels occupying lanes 0, 1, 2 on entry.
    ``desired``: the labels that must exit on lanes 0, 1, 2.
    Returns label -> ordered (lane, pos) visits covering all 15 gadget
    vertices. Every permutation of three labels is realizable; ties between
    switch settings go to the lexicographically smallest one.
    """
    if sorted(entering) != sorted(desired) or len(set(entering)) != 3:
        raise ValueError("entering and desired must be permutations of the same three labels")
    perm = tuple(desired.index(label) for label in entering)
    gates = _GATES_FOR_PERM[perm]
    visits, rows = _simulate_gates(gates, tuple(entering))
    assert tuple(rows) == tuple(desired)
    return visits


def assignment_to_partition(dag: Dag, gm: GadgetMap, assignment) -> PathPartition:
    """Construct the leaf induced path partition encoding an NAE assignment.

    Raises :class:`NotNaeError` when some clause is all-equal under the
    assignment. The first path starts at the main-rail root and collects the
    occurrence vertices of exactly the true variables; the second starts at
    the side-rail root and collects the false ones; the third sweeps the
    clause gadgets.
    """
    n, m = gm.variable_count, gm.clause_count
    if len(assignment) != n:
        raise ValueError("assignment length mismatch")
    clauses = [_clause_of(gm, dag, j) for j in range(m)]
    for j, clause in enumerate(clauses):
        if len({assignment[v] for v in clause}) == 1:
            raise NotNaeError(j)

    paths = {1: [gm.var_in[0][RAIL_MAIN]], 2: [gm.var_in[0][RAIL_SIDE]], 3: [gm.lane[0][2][0]]}
    for label, value_true in ((1, True), (2, False)):
        path = paths[label]
        for i in range(n):
            if assignment[i] == value_true:
                path.append(gm.var_join[i][RAIL_MAIN])
                path.extend(v for _, v in gm.var_occ[i])
                nxt = gm.var_in[i + 1][RAIL_MAIN] if i + 1 < n else gm.lane[0][0][0]
            else:
                path.append(gm.var_join[i][RAIL_SIDE])
                nxt = gm.var_in[i + 1][RAIL_SIDE] if i + 1 < n else gm.lane[0][1][0]
            path.append(nxt)

    # clause gadgets: route so path 1 exits over a false variable of the
    # clause and path 2 over a true one; path 3 takes the leftover lane
    for j, clause in enumerate(clauses):
        entering = tuple(
            label for k in range(3) for label in (1, 2, 3) if paths[label][-1] == gm.lane[j][k][0]
        )
        exit_of = {}
        exit_of[1] = next(k for k, v in enumerate(clause) if not assignment[v])
        exit_of[2] = next(k for k, v in enumerate(clause) if assignment[v])
        exit_of[3] = next(k for k in range(3) if k not in (exit_of[1], exit_of[2]))
        desired = tuple(label for k in range(3) for label in (1, 2, 3) if exit_of[label] == k)
        visits = switcher_route(entering, desired)
        for label in (1, 2, 3):
            # entry vertices are already the current path heads
            paths[label].extend(gm.lane[j][k][pos] for k, pos in visits[label][1:])
        if j + 1 < m:
            for label in (1, 2, 3):
                paths[label].append(gm.lane[j + 1][exit_of[label]][0])

    pp = certified_partition(dag, [paths[1], paths[2], paths[3]])
    assert pp.kind == Kind.LEAF_IPP
    return pp


def _clause_of(gm: GadgetMap, dag: Dag, j):
    """Recover clause j's variable triple from the literal arcs."""
    triple = []
    for k in range(3):
        exit_v = gm.lane[j][k][LANE_LEN - 1]
        feeders = [u for u in dag.in_adj[exit_v] if u != gm.lane[j][k][LANE_LEN - 2]]
        assert len(feeders) == 1
        var = next(
            i for i in range(gm.variable_count) if any(v == feeders[0] for _, v in gm.var_occ[i])
        )
        triple.append(var)
    return tuple(triple)


def witness_weak_pp(dag: Dag, gm: GadgetMap) -> PathPartition:
    """Three-path leaf path partition certifying weak forest-basedness.

    One path concatenates the main rails of all variable gadgets and the
    top lanes of all clause gadgets; one the side rails and middle lanes;
    one the bottom lanes. The paths are generally not induced (an
    occurrence vertex and its lane exit share the first path).
    """
    n, m = gm.variable_count, gm.clause_count
    top, side, bottom = [], [], []
    for i in range(n):
        top.append(gm.var_in[i][RAIL_MAIN])
        top.append(gm.var_join[i][RAIL_MAIN])
        top.extend(v for _, v in gm.var_occ[i])
        side.append(gm.var_in[i][RAIL_SIDE])
        side.append(gm.var_join[i][RAIL_SIDE])
    for j in range(m):
        for path, k in ((top, 0), (side, 1), (bottom, 2)):
            path.extend(gm.lane[j][k])
    pp = certified_partition(dag, [top, side, bottom])
    assert pp.kind in (Kind.LEAF_PP, Kind.LEAF_IPP)
    return pp


def networkize(dag: Dag, gm: GadgetMap | None = None) -> tuple[Dag, GadgetMap | None]:
    """Hang a pendant leaf under every leaf of indegree >= 2.

    The old leaf becomes an outdegree-1 reticulation, so the result
    satisfies the network conditions while leaf-IPP feasibility transfers
    both ways (extend a path ending at the old leaf by the pendant, or cut
    the pendant off).
    """
    pendants = [v for v in sorted(dag.leaves()) if dag.in_degree(v) >= 2]
    arcs = set(dag.arcs)
    labels = dict(dag.labels)
    gm2 = gm.copy() if gm is not None else None
    next_id = dag.vertex_count
    for v in pendants:
        arcs.add((v, next_id))
        labels[next_id] = f"{labels.get(v, v)}.pendant"
        if gm2 is not None:
            gm2.extension_leaves.append((next_id, v))
        next_id += 1
    return Dag(next_id, arcs, labels), gm2


def single_root(dag: Dag) -> Dag:
    """Join exactly three roots under one fresh root.

    Adds vertices ``r`` (the new root) and ``r2`` with arcs r->r2, r->c,
    r2->a, r2->b where a < b < c are the old roots. Requires exactly three
    roots; preserves leaf-IPP feasibility (prepend r, r2 to the path
    starting at a, or strip them).
    """
    roots = sorted(dag.roots())
    if len(roots) != 3:
        raise ValueError(f"need exactly 3 roots, found {len(roots)}")
    a, b, c = roots
    r, r2 = dag.vertex_count, dag.vertex_count + 1
    arcs = set(dag.arcs) | {(r, r2), (r, c), (r2, a), (r2, b)}
    labels = dict(dag.labels)
    labels[r] = "root"
    labels[r2] = "root.child"
    return Dag(dag.vertex_count + 2, arcs, labels)


def extend_partition_networkized(pp: PathPartition, dag_before: Dag, dag_after: Dag) -> PathPartition:
    """Lift a partition of the raw instance through :func:`networkize`."""
    paths = [list(p) for p in pp.paths]
    for v in range(dag_before.vertex_count, dag_after.vertex_count):
        (parent,) = dag_after.in_adj[v]
        for path in paths:
            if path[-1] == parent:
                path.append(v)
                break
        else:
            raise ValueError(f"no path ends at {parent}; cannot extend with pendant {v}")
    return certified_partition(dag_after, paths)


def lift_partition_single_root(pp: PathPartition, dag_before: Dag, dag_after: Dag) -> PathPartition:
    """Lift a partition through :func:`single_root` by prepending the new root pair."""
    a = sorted(dag_before.roots())[0]
    r, r2 = dag_before.vertex_count, dag_before.vertex_count + 1
    paths = [list(p) for p in pp.paths]
    for path in paths:
        if path[0] == a:
            path[:0] = [r, r2]
            break
    else:
        raise ValueError(f"no path starts at root {a}")
    return certified_partition(dag_after, paths)
