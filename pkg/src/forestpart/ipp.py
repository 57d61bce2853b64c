"""Exact solvers for partitions into induced paths.

Three entry points:

* :func:`restricted_2ipp` — two induced paths with prescribed start and end
  vertices, by reduction to 2-SAT over one Boolean per vertex (true = first
  path). Linear time; correct on DAGs whose in- and outdegrees are at most
  2 (semi-binary networks in particular).
* :func:`two_ipp` — two induced paths with free endpoints, by guessing the
  endpoints around the forced roots/leaves, plus a sweep for the degenerate
  single-vertex second path that endpoint guessing cannot express.
* :func:`leaf_ipp_exact` — complete backtracking for leaf induced path
  partitions of arbitrary DAGs; exponential, budget-bounded. Branches over
  path-successor choices in topological order with chord pruning and an
  exact bound on the number of path starts.
"""

from __future__ import annotations

import heapq
import sys
from dataclasses import dataclass

from .dag import Dag
from .errors import DEFAULT_BUDGET, BudgetExceededError, NotSemiBinaryError
from .hardness import RAIL_MAIN, RAIL_SIDE, GadgetMap
from .partition import Kind, PathPartition, certified_partition, certify
from .twosat import Equal, NotEqual, TwoSatInstance, solve


@dataclass(frozen=True)
class EndpointSpec:
    """Two path starts and two path ends; all four pairwise distinct."""

    s1: int
    s2: int
    t1: int
    t2: int

    def __post_init__(self):
        if len({self.s1, self.s2, self.t1, self.t2}) != 4:
            raise ValueError("endpoint vertices must be pairwise distinct")


def _require_degree_two(g: Dag):
    for v in range(g.vertex_count):
        if g.in_degree(v) > 2 or g.out_degree(v) > 2:
            raise NotSemiBinaryError(
                f"vertex {v} has indegree {g.in_degree(v)} / outdegree {g.out_degree(v)};"
                " the 2-SAT encoding needs both at most 2"
            )


def restricted_2ipp(g: Dag, ep: EndpointSpec) -> PathPartition | None:
    """Partition into two induced paths from {s1, s2} to {t1, t2}, or None.

    Constraint families over x_v ("v is on the first path"): the two starts
    disagree, the two ends disagree; neighbors of a start/end on the wrong
    side disagree with it; a vertex with a single out-neighbor drags it
    along; two out-neighbors (or two in-neighbors) of a vertex disagree.
    Instances where some root is not a start or some leaf not an end are
    infeasible outright.
    """
    _require_degree_two(g)
    for v in (ep.s1, ep.s2, ep.t1, ep.t2):
        if not 0 <= v < g.vertex_count:
            raise ValueError(f"endpoint {v} out of range")
    starts = {ep.s1, ep.s2}
    ends = {ep.t1, ep.t2}
    if any(r not in starts for r in g.roots()):
        return None
    if any(l not in ends for l in g.leaves()):
        return None

    cons = [NotEqual(ep.s1, ep.s2), NotEqual(ep.t1, ep.t2)]
    for s in starts:
        for w in g.in_adj[s]:
            cons.append(NotEqual(w, s))
    for t in ends:
        for w in g.out_adj[t]:
            cons.append(NotEqual(w, t))
    for v in range(g.vertex_count):
        if v not in ends:
            outs = g.out_adj[v]
            if len(outs) == 1:
                cons.append(Equal(v, outs[0]))
            elif len(outs) == 2:
                cons.append(NotEqual(outs[0], outs[1]))
        if v not in starts:
            ins = g.in_adj[v]
            if len(ins) == 2:
                cons.append(NotEqual(ins[0], ins[1]))

    assignment = solve(TwoSatInstance(g.vertex_count, cons))
    if assignment is None:
        return None
    if not assignment[ep.s1]:
        assignment = [not b for b in assignment]

    paths = []
    for start, side in ((ep.s1, True), (ep.s2, False)):
        path = [start]
        while True:
            nxt = [w for w in g.out_adj[path[-1]] if assignment[w] == side]
            if not nxt:
                break
            assert len(nxt) == 1
            path.append(nxt[0])
        paths.append(path)
    assert sum(len(p) for p in paths) == g.vertex_count
    pp = certified_partition(g, paths)
    assert pp.kind in (Kind.IPP, Kind.LEAF_IPP)
    assert {paths[0][-1], paths[1][-1]} == ends
    return pp


def _complement_is_induced_path(g: Dag, v):
    """Path covering all vertices but ``v``, or None.

    The subgraph induced by V - {v} must itself be exactly a simple directed
    path: then that path is induced in g and, together with the singleton
    [v], forms a 2-IPP.
    """
    n = g.vertex_count
    if n < 2:
        return None
    start = None
    arc_count = 0
    for u in range(n):
        if u == v:
            continue
        outs = sum(1 for w in g.out_adj[u] if w != v)
        ins = sum(1 for w in g.in_adj[u] if w != v)
        if outs > 1 or ins > 1:
            return None
        arc_count += outs
        if ins == 0:
            if start is not None:
                return None
            start = u
    if start is None or arc_count != n - 2:
        return None
    path = [start]
    while True:
        nxt = [w for w in g.out_adj[path[-1]] if w != v]
        if not nxt:
            break
        path.append(nxt[0])
    return path if len(path) == n - 1 else None


def two_ipp(g: Dag, threads: int | None = None) -> PathPartition | None:
    """Partition into two induced paths with free endpoints, or None.

    Endpoint guessing per the forced cases: every root must start a path and
    every leaf must end one, so with two roots and two leaves all four
    endpoints are known; a missing second root (or leaf) is guessed by
    scanning every vertex. Single-vertex second paths are found first by
    checking, for every v, whether the graph minus v is exactly an induced
    path. Deterministic: the singleton sweep runs in ascending v, then
    endpoint candidates in ascending (s2, t2) order.
    """
    _require_degree_two(g)
    roots = sorted(g.roots())
    leaves = sorted(g.leaves())
    if len(roots) > 2 or len(leaves) > 2 or g.vertex_count < 2:
        return None

    for v in range(g.vertex_count):
        rest = _complement_is_induced_path(g, v)
        if rest is not None:
            paths = sorted([rest, [v]], key=lambda p: p[0])
            pp = certified_partition(g, paths)
            assert pp.kind in (Kind.IPP, Kind.LEAF_IPP)
            return pp

    s1, t1 = roots[0], leaves[0]
    s2_candidates = [roots[1]] if len(roots) == 2 else list(range(g.vertex_count))
    t2_candidates = [leaves[1]] if len(leaves) == 2 else list(range(g.vertex_count))

    pairs = [
        (s2, t2)
        for s2 in s2_candidates
        for t2 in t2_candidates
        if len({s1, s2, t1, t2}) == 4
    ]
    if threads and threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(
                pool.map(lambda p: restricted_2ipp(g, EndpointSpec(s1, p[0], t1, p[1])), pairs)
            )
        for res in results:  # pairs are ordered, so the first hit is canonical
            if res is not None:
                return res
        return None
    for s2, t2 in pairs:
        res = restricted_2ipp(g, EndpointSpec(s1, s2, t1, t2))
        if res is not None:
            return res
    return None


def leaf_ipp_exact(
    g: Dag, budget: int = DEFAULT_BUDGET, stats: dict | None = None
) -> PathPartition | None:
    """Complete search for a leaf induced path partition; None if none exists.

    Searches over path-successor choices in topological order: every
    non-leaf vertex must continue its path into exactly one unclaimed
    out-neighbor, every leaf terminates its path, so complete successor
    functions correspond one-to-one to partitions into paths ending at
    leaves. The induced condition is enforced the moment a vertex learns
    its path: any further arc between it and an established member of the
    same path is a chord and kills the branch.

    Since each of the ``n - k`` non-leaves claims a distinct successor
    (``k`` the number of leaves), exactly ``k`` vertices end up with no
    predecessor; a branch that accumulates more than ``k`` path starts is
    therefore dead, which in particular buries branches that strand a
    vertex whose only in-neighbor went elsewhere.

    Raises :class:`BudgetExceededError` after ``budget`` search nodes;
    ``stats['nodes_expanded']`` reports the node count either way.
    """
    n = g.vertex_count
    if stats is None:
        stats = {}
    stats["nodes_expanded"] = 0
    if n == 0:
        return PathPartition.of([], Kind.LEAF_IPP)
    k = len(g.leaves())
    out_adj, in_adj = g.out_adj, g.in_adj
    is_leaf = [not out_adj[v] for v in range(n)]

    # deterministic topological order: lowest ready vertex first
    indeg = [g.in_degree(v) for v in range(n)]
    ready = [v for v in range(n) if indeg[v] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        v = heapq.heappop(ready)
        order.append(v)
        for w in out_adj[v]:
            indeg[w] -= 1
            if indeg[w] == 0:
                heapq.heappush(ready, w)

    pred = [-1] * n
    path_of = [-1] * n
    state = {"starts": 0, "nodes": 0}

    def joins_without_chord(x, p, px):
        # x joins path p with predecessor px; reject if any other arc ties
        # x to a vertex already known to lie on p
        for u in in_adj[x]:
            if u != px and path_of[u] == p:
                return False
        for y in out_adj[x]:
            if path_of[y] == p and pred[y] != x:
                return False
        return True

    def place(t):
        state["nodes"] += 1
        if state["nodes"] > budget:
            stats["nodes_expanded"] = state["nodes"]
            raise BudgetExceededError(state["nodes"])
        if t == n:
            return True
        v = order[t]
        started = False
        if path_of[v] == -1:
            if state["starts"] == k:
                return False
            path_of[v] = v  # fresh path, named after its start
            state["starts"] += 1
            started = True
        if is_leaf[v]:
            if place(t + 1):
                return True
        else:
            p = path_of[v]
            for w in out_adj[v]:
                if pred[w] != -1 or not joins_without_chord(w, p, v):
                    continue
                pred[w] = v
                path_of[w] = p
                if place(t + 1):
                    return True
                pred[w] = -1
                path_of[w] = -1
        if started:
            state["starts"] -= 1
            path_of[v] = -1
        return False

    depth_needed = n + 64
    if sys.getrecursionlimit() < depth_needed:
        sys.setrecursionlimit(depth_needed)
    found = place(0)
    stats["nodes_expanded"] = state["nodes"]
    if not found:
        return None
    succ = {}
    for w in range(n):
        if pred[w] != -1:
            succ[pred[w]] = w
    paths = []
    for v in range(n):
        if pred[v] == -1:
            path = [v]
            while path[-1] in succ:
                path.append(succ[path[-1]])
            paths.append(path)
    paths.sort(key=lambda p: p[0])
    pp = certified_partition(g, paths)
    assert pp.kind == Kind.LEAF_IPP
    return pp


def translate_partition_to_assignment(g: Dag, gm: GadgetMap, pp: PathPartition) -> list[bool]:
    """Read an NAE assignment off a leaf IPP of a generated hard instance.

    A variable is true exactly when its occurrence chain lies on the path
    that starts at the main-rail root; variables without occurrences follow
    their main-rail join vertex. The partition must certify as a leaf
    induced path partition of ``g``.
    """
    cert = certify(g, pp.paths)
    if cert.kind != Kind.LEAF_IPP:
        raise ValueError(f"partition does not certify as LeafIPP: {cert.reason}")
    membership = {}
    for idx, path in enumerate(pp.paths):
        for v in path:
            membership[v] = idx
    first = membership[gm.var_in[0][RAIL_MAIN]]
    second = membership[gm.var_in[0][RAIL_SIDE]]
    if first == second:
        raise ValueError("rail roots unexpectedly share a path")
    assignment = []
    for i in range(gm.variable_count):
        if gm.var_occ[i]:
            sides = {membership[v] for _, v in gm.var_occ[i]}
            if len(sides) != 1 or not sides <= {first, second}:
                raise ValueError(f"occurrence chain of variable {i} is split across paths")
            assignment.append(sides == {first})
        else:
            assignment.append(membership[gm.var_join[i][RAIL_MAIN]] == first)
    return assignment
