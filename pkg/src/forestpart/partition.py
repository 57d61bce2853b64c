"""Path partitions of DAGs: certification, the matching-based minimum path
partition, the weak forest-based test, and the forest <-> partition bridge.

The minimum number of vertex-disjoint paths covering a DAG equals the number
of left-side vertices left unmatched by a maximum matching of the split
bipartite graph (left/right copies of V joined along arcs); matched partners
act as path successors. A DAG is weakly forest-based exactly when that
minimum equals its leaf count.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from enum import Enum

from .dag import Dag


class Kind(Enum):
    """Certification levels for a path partition, weakest to strongest."""

    PP = "PP"
    IPP = "IPP"
    LEAF_PP = "LeafPP"
    LEAF_IPP = "LeafIPP"

    @property
    def label(self):
        return self.value


@dataclass(frozen=True)
class PathPartition:
    """Ordered vertex-disjoint directed paths, with the kind they certified as.

    ``kind`` is ``None`` for partitions that have not been certified against
    a host DAG (or failed to).
    """

    paths: tuple[tuple[int, ...], ...]
    kind: Kind | None = None

    @staticmethod
    def of(paths, kind=None):
        return PathPartition(tuple(tuple(p) for p in paths), kind)

    def serialize(self) -> str:
        header = self.kind.label if self.kind is not None else "uncertified"
        lines = [header]
        for path in self.paths:
            lines.append(",".join(str(v) for v in path))
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class Certification:
    """Outcome of certifying a candidate partition.

    ``kind`` is the strongest level reached, or ``None`` when the candidate
    is not a path partition at all; ``reason`` names the first violated
    condition (overlap / missing vertex / non-path / chord / non-leaf end)
    whenever the strongest level is below LeafIPP.
    """

    kind: Kind | None
    reason: str | None
    induced: bool
    leaf_ends: bool


def certify(g: Dag, paths) -> Certification:
    """Certify ``paths`` against ``g``, returning the strongest kind reached."""
    seen = set()
    for path in paths:
        if len(path) == 0:
            return Certification(None, "non-path: empty path", False, False)
        for v in path:
            if not 0 <= v < g.vertex_count:
                return Certification(None, f"non-path: vertex {v} out of range", False, False)
            if v in seen:
                return Certification(None, f"overlap: vertex {v} appears twice", False, False)
            seen.add(v)
    if len(seen) != g.vertex_count:
        missing = min(v for v in range(g.vertex_count) if v not in seen)
        return Certification(None, f"missing vertex: {missing} not covered", False, False)
    for path in paths:
        if not g.is_path(path):
            return Certification(None, f"non-path: {list(path)}", False, False)

    reason = None
    induced = True
    for path in paths:
        if not g.is_induced_path(path):
            induced = False
            if reason is None:
                reason = f"chord: path {list(path)} is not induced"
            break
    leaves = g.leaves()
    leaf_ends = True
    for path in paths:
        if path[-1] not in leaves:
            leaf_ends = False
            if reason is None:
                reason = f"non-leaf end: path ends at {path[-1]}"
            break
    if induced and leaf_ends:
        kind = Kind.LEAF_IPP
    elif induced:
        kind = Kind.IPP
    elif leaf_ends:
        kind = Kind.LEAF_PP
    else:
        kind = Kind.PP
    return Certification(kind, reason, induced, leaf_ends)


def certified_partition(g: Dag, paths) -> PathPartition:
    """Build a PathPartition carrying its certified kind; raise if not even a PP."""
    cert = certify(g, paths)
    if cert.kind is None:
        raise ValueError(f"not a path partition: {cert.reason}")
    return PathPartition.of(paths, cert.kind)


# --- bipartite matching ---------------------------------------------------


@dataclass(frozen=True)
class BipartiteGraph:
    """Left/right vertex sets with adjacency from left to right."""

    left_count: int
    right_count: int
    adj: tuple[tuple[int, ...], ...]

    @property
    def edge_count(self):
        return sum(len(a) for a in self.adj)


def bipartite_graph_of(g: Dag) -> BipartiteGraph:
    """Split graph of a DAG: both sides copy V, one edge per arc."""
    return BipartiteGraph(g.vertex_count, g.vertex_count, g.out_adj)


def max_matching(b: BipartiteGraph) -> tuple[list[int], list[int]]:
    """Maximum-cardinality matching via Hopcroft-Karp.

    Returns (match_left, match_right) with -1 marking unmatched vertices.
    Left vertices are processed in ascending id order with sorted adjacency,
    so the result is deterministic.
    """
    match_l = [-1] * b.left_count
    match_r = [-1] * b.right_count
    dist = [-1] * b.left_count
    adj = b.adj

    def bfs():
        queue = deque()
        for u in range(b.left_count):
            if match_l[u] == -1:
                dist[u] = 0
                queue.append(u)
            else:
                dist[u] = -1
        reachable_free = False
        while queue:
            u = queue.popleft()
            for v in adj[u]:
                w = match_r[v]
                if w == -1:
                    reachable_free = True
                elif dist[w] == -1:
                    dist[w] = dist[u] + 1
                    queue.append(w)
        return reachable_free

    def dfs(root):
        # iterative layered DFS; flips the augmenting path on success
        f_u = [root]
        f_i = [0]
        f_v = [-1]
        while f_u:
            u = f_u[-1]
            i = f_i[-1]
            nbrs = adj[u]
            pushed = False
            while i < len(nbrs):
                v = nbrs[i]
                i += 1
                w = match_r[v]
                if w == -1:
                    f_i[-1] = i
                    f_v[-1] = v
                    for k in range(len(f_u)):
                        match_l[f_u[k]] = f_v[k]
                        match_r[f_v[k]] = f_u[k]
                    return True
                if dist[w] == dist[u] + 1:
                    f_i[-1] = i
                    f_v[-1] = v
                    f_u.append(w)
                    f_i.append(0)
                    f_v.append(-1)
                    pushed = True
                    break
            if not pushed:
                dist[u] = -1
                f_u.pop()
                f_i.pop()
                f_v.pop()
        return False

    while bfs():
        for u in range(b.left_count):
            if match_l[u] == -1:
                dfs(u)
    return match_l, match_r


def min_path_partition(g: Dag) -> tuple[int, PathPartition]:
    """Minimum number of vertex-disjoint directed paths covering V, with witness.

    Path successors are read off the matching (a matched left copy continues
    to its partner); right-side unmatched vertices start the paths.
    """
    n = g.vertex_count
    if n == 0:
        return 0, PathPartition.of([], Kind.LEAF_IPP)
    match_l, match_r = max_matching(bipartite_graph_of(g))
    paths = []
    for start in range(n):
        if match_r[start] != -1:
            continue
        path = [start]
        while match_l[path[-1]] != -1:
            path.append(match_l[path[-1]])
        paths.append(path)
    d = sum(1 for u in range(n) if match_l[u] == -1)
    assert d == len(paths)
    return d, certified_partition(g, paths)


def is_weakly_forest_based(g: Dag) -> tuple[bool, PathPartition | None]:
    """Decide whether some spanning forest of ``g`` has leaf set exactly L(g).

    Equivalent to the minimum path partition having exactly one path per
    leaf; the witness partition then certifies as a leaf path partition.
    """
    d, pp = min_path_partition(g)
    if d != len(g.leaves()):
        return False, None
    assert pp.kind in (Kind.LEAF_PP, Kind.LEAF_IPP)
    return True, pp


# --- subdivision forests --------------------------------------------------


class InvalidForestError(ValueError):
    """The arc subset is not a subdivision forest of the host DAG."""


@dataclass(frozen=True)
class SpanningForest:
    """Arc subset of a host DAG forming a forest, with component labels.

    Construction checks the forest shape (per-vertex indegree <= 1 and no
    cycles); whether it is a *subdivision* forest of a host (arcs contained
    in the host, forest leaves matching host leaves) is checked by
    :func:`forest_to_leaf_partition`.
    """

    vertex_count: int
    arcs: frozenset[tuple[int, int]]
    component: tuple[int, ...]

    @staticmethod
    def of(vertex_count, arcs):
        arcs = frozenset((int(u), int(v)) for u, v in arcs)
        indeg = {}
        for u, v in arcs:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InvalidForestError(f"arc ({u}, {v}) out of range")
            indeg[v] = indeg.get(v, 0) + 1
            if indeg[v] > 1:
                raise InvalidForestError(f"vertex {v} has two forest in-arcs")
        Dag(vertex_count, arcs)  # rejects cycles
        parent = list(range(vertex_count))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in arcs:
            parent[find(u)] = find(v)
        canon = {}
        component = []
        for v in range(vertex_count):
            r = find(v)
            component.append(canon.setdefault(r, len(canon)))
        return SpanningForest(vertex_count, arcs, tuple(component))


def forest_to_leaf_partition(g: Dag, forest: SpanningForest, require_induced=False) -> PathPartition:
    """Split a subdivision forest of ``g`` into a leaf path partition.

    Walking down from each forest root, the first vertex with two or more
    kept children keeps only its lowest-id child arc; the cut children seed
    new components. Splitting a tree only ever separates subtrees, so the
    forest leaf set is preserved and every resulting path ends at a leaf of
    ``g``. When every tree of the forest is induced in ``g`` the resulting
    paths are induced as well.

    With ``require_induced`` the forest is rejected unless each of its trees
    is an induced subgraph of ``g``.
    """
    if forest.vertex_count != g.vertex_count:
        raise InvalidForestError("forest and host disagree on vertex count")
    extra = forest.arcs - g.arcs
    if extra:
        raise InvalidForestError(f"forest arc {sorted(extra)[0]} not in host")
    f_out = [[] for _ in range(g.vertex_count)]
    f_in_deg = [0] * g.vertex_count
    for u, v in sorted(forest.arcs):
        f_out[u].append(v)
        f_in_deg[v] += 1
    forest_leaves = {v for v in range(g.vertex_count) if not f_out[v]}
    host_leaves = g.leaves()
    if forest_leaves != host_leaves:
        bad = sorted(forest_leaves.symmetric_difference(host_leaves))[0]
        raise InvalidForestError(
            f"forest leaf set differs from host leaves at vertex {bad}"
            f" (component {forest.component[bad]})"
        )
    if require_induced:
        for u, v in sorted(g.arcs):
            if forest.component[u] == forest.component[v] and (u, v) not in forest.arcs:
                raise InvalidForestError(
                    f"component {forest.component[u]} is not induced:"
                    f" host arc ({u}, {v}) missing from forest"
                )

    paths = []
    pending = sorted(v for v in range(g.vertex_count) if f_in_deg[v] == 0)
    pending.reverse()
    while pending:
        cur = pending.pop()
        path = [cur]
        while f_out[cur]:
            children = f_out[cur]
            cur = children[0]
            pending.extend(reversed(children[1:]))
            path.append(cur)
        paths.append(path)
    paths.sort(key=lambda p: p[0])
    pp = certified_partition(g, paths)
    assert pp.kind in (Kind.LEAF_PP, Kind.LEAF_IPP)
    if require_induced:
        assert pp.kind == Kind.LEAF_IPP
    return pp
