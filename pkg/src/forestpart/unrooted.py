"""Forest-based recognition for unrooted networks.

An unrooted phylogenetic network is a simple connected undirected graph
with no degree-2 vertex and a nonempty set of leaves (degree-1 vertices).
It is forest-based when some spanning forest has leaf set exactly the
network's leaves and every non-forest edge runs between different forest
components, i.e. each tree of the forest is an induced subgraph.

Deciding this is NP-complete, so the deciders here are exact exponential
searches with budgets. The forest search enumerates vertex blocks that
induce trees whose internal vertices keep degree >= 2 inside the block,
then covers the vertex set with such blocks. For four-leaf non-tree
networks, being forest-based is equivalent to splitting into two induced
paths whose ends are the leaves, which a dedicated path search decides;
that equivalence powers a Turing-style driver answering whether a leafless
minimum-degree-3 graph splits into two induced paths by attaching four
pendant leaves in every possible way.
"""

from __future__ import annotations

from itertools import combinations

from .dag import UndirectedGraph
from .errors import DEFAULT_BUDGET, BudgetExceededError


class UnrootedNetwork:
    """Validated unrooted phylogenetic network over an UndirectedGraph."""

    __slots__ = ("graph", "leaf_set")

    def __init__(self, graph: UndirectedGraph):
        if not graph.is_connected():
            raise ValueError("unrooted network must be connected")
        for v in range(graph.vertex_count):
            if graph.degree(v) == 2:
                raise ValueError(f"vertex {v} has degree 2")
        leaf_set = graph.leaves()
        if not leaf_set:
            raise ValueError("unrooted network needs at least one leaf")
        self.graph = graph
        self.leaf_set = frozenset(leaf_set)

    @property
    def vertex_count(self):
        return self.graph.vertex_count

    def is_tree(self):
        return self.graph.is_tree()


def certify_unrooted_leaf_ipp(net: UnrootedNetwork, paths) -> bool:
    """Check a partition into induced paths against the leaf conditions.

    Zero-length paths must be leaves; every longer path must meet the leaf
    set in exactly its two end vertices.
    """
    g = net.graph
    seen = set()
    for path in paths:
        if not path:
            return False
        for v in path:
            if v in seen or not 0 <= v < g.vertex_count:
                return False
            seen.add(v)
        if not g.is_induced_path(path):
            return False
        if len(path) == 1:
            if path[0] not in net.leaf_set:
                return False
        else:
            hits = set(path) & net.leaf_set
            if hits != {path[0], path[-1]}:
                return False
    return len(seen) == g.vertex_count


def is_forest_based_unrooted_exact(
    net: UnrootedNetwork, budget: int = DEFAULT_BUDGET, stats: dict | None = None
) -> tuple[bool, tuple[tuple[int, ...], ...] | None]:
    """Exhaustive search for an induced spanning forest with leaf set L(N).

    Valid blocks are vertex subsets inducing a tree in which every
    non-leaf-of-N vertex keeps degree >= 2 (so forest leaves are exactly
    the network's leaves); the graph is forest-based when the vertex set
    partitions into valid blocks. Returns the block partition as witness.
    Counts enumerated subsets and cover steps against ``budget``.
    """
    if stats is None:
        stats = {}
    g = net.graph
    n = g.vertex_count
    work = 0
    adj_mask = [0] * n
    for u, v in g.edges:
        adj_mask[u] |= 1 << v
        adj_mask[v] |= 1 << u
    leaf_mask = 0
    for v in net.leaf_set:
        leaf_mask |= 1 << v

    blocks_by_low = [[] for _ in range(n)]
    for mask in range(1, 1 << n):
        work += 1
        if work > budget:
            stats["nodes_expanded"] = work
            raise BudgetExceededError(work)
        size = 0
        edge_twice = 0
        ok = True
        m = mask
        while m:
            v = (m & -m).bit_length() - 1
            m &= m - 1
            size += 1
            deg = bin(adj_mask[v] & mask).count("1")
            edge_twice += deg
            if deg < 2 and not (1 << v) & leaf_mask:
                ok = False
                break
            if deg > 1 and (1 << v) & leaf_mask:
                ok = False  # impossible: leaves have one neighbor overall
                break
        if not ok or edge_twice != 2 * (size - 1):
            continue
        # connectivity of the induced subgraph
        start = (mask & -mask).bit_length() - 1
        seen = 1 << start
        frontier = [start]
        while frontier:
            v = frontier.pop()
            fresh = adj_mask[v] & mask & ~seen
            while fresh:
                w = (fresh & -fresh).bit_length() - 1
                fresh &= fresh - 1
                seen |= 1 << w
                frontier.append(w)
        if seen != mask:
            continue
        blocks_by_low[start].append(mask)

    memo = {}

    def cover(mask):
        nonlocal work
        work += 1
        if work > budget:
            stats["nodes_expanded"] = work
            raise BudgetExceededError(work)
        if mask == 0:
            return ()
        if mask in memo:
            return memo[mask]
        low = (mask & -mask).bit_length() - 1
        result = None
        for block in blocks_by_low[low]:
            if block & ~mask:
                continue
            rest = cover(mask & ~block)
            if rest is not None:
                result = (block,) + rest
                break
        memo[mask] = result
        return result

    chosen = cover((1 << n) - 1)
    stats["nodes_expanded"] = work
    if chosen is None:
        return False, None
    components = tuple(
        tuple(v for v in range(n) if block >> v & 1) for block in chosen
    )
    return True, components


def _induced_paths_between(g: UndirectedGraph, a, b):
    """All induced paths from a to b, as vertex lists (DFS with chord pruning)."""
    path = [a]
    members = {a}

    def extend():
        last = path[-1]
        if last == b:
            yield list(path)
            return
        for w in g.adj[last]:
            if w in members:
                continue
            # joining w must touch the path only at `last`
            if any(u in members and u != last for u in g.adj[w]):
                continue
            path.append(w)
            members.add(w)
            yield from extend()
            members.discard(w)
            path.pop()

    yield from extend()


def _is_induced_path_set(g: UndirectedGraph, vertices):
    """True iff the subgraph induced by ``vertices`` is a simple path."""
    vs = set(vertices)
    if not vs:
        return False
    if len(vs) == 1:
        return True
    degs = []
    edge_count = 0
    for v in vs:
        d = sum(1 for w in g.adj[v] if w in vs)
        if d > 2:
            return False
        degs.append(d)
        edge_count += d
    edge_count //= 2
    if edge_count != len(vs) - 1 or sum(1 for d in degs if d == 1) != 2:
        return False
    start = next(iter(vs))
    seen = {start}
    frontier = [start]
    while frontier:
        v = frontier.pop()
        for w in g.adj[v]:
            if w in vs and w not in seen:
                seen.add(w)
                frontier.append(w)
    return seen == vs


def two_path_leaf_ipp(net: UnrootedNetwork) -> tuple[list[int], list[int]] | None:
    """Partition into two induced paths whose four ends are the leaves.

    Tries the three pairings of the four leaves; for each, enumerates
    induced paths joining the first pair and checks that the complement
    induces a path (its ends are then forced to be the other pair).
    """
    leaves = sorted(net.leaf_set)
    if len(leaves) != 4:
        raise ValueError("two-path split requires exactly 4 leaves")
    g = net.graph
    everything = set(range(g.vertex_count))
    a = leaves[0]
    for b_idx in (1, 2, 3):
        b = leaves[b_idx]
        others = {x for x in leaves if x not in (a, b)}
        for p1 in _induced_paths_between(g, a, b):
            rest = everything - set(p1)
            if len(rest) < 2 or not _is_induced_path_set(g, rest):
                continue
            ends = {v for v in rest if sum(1 for w in g.adj[v] if w in rest) == 1}
            if ends != others:
                continue
            start = min(ends)
            p2 = [start]
            prev = -1
            while len(p2) < len(rest):
                nxt = next(w for w in g.adj[p2[-1]] if w in rest and w != prev)
                prev = p2[-1]
                p2.append(nxt)
            return p1, p2
    return None


def four_leaf_forest_based(net: UnrootedNetwork) -> bool:
    """Forest-based test for four-leaf non-tree networks via two-path split."""
    if len(net.leaf_set) != 4:
        raise ValueError("requires exactly 4 leaves")
    if net.is_tree():
        raise ValueError("requires a non-tree network")
    return two_path_leaf_ipp(net) is not None


def attach_leaves(g: UndirectedGraph, subset) -> UnrootedNetwork:
    """New network with one pendant leaf under each vertex of ``subset``."""
    subset = sorted(subset)
    edges = set(g.edges)
    n = g.vertex_count
    for i, v in enumerate(subset):
        edges.add((v, n + i))
    return UnrootedNetwork(UndirectedGraph(n + len(subset), edges))


def turing_driver(
    g: UndirectedGraph, oracle=None, budget: int = DEFAULT_BUDGET, threads: int | None = None
) -> bool:
    """Decide a two-induced-path split of a min-degree-3 graph via an oracle.

    For every 4-subset Q of vertices, pendant leaves are attached at Q and
    the forest-based oracle is consulted; the graph splits into two induced
    paths exactly when some such network is forest-based. With the exact
    search as oracle this is a correct, exponential decider; plugging in a
    polynomial oracle would make it a polynomial Turing reduction. Subsets
    may be evaluated on a thread pool; the OR-aggregation keeps the answer
    deterministic either way.
    """
    if not g.is_connected():
        raise ValueError("input graph must be connected")
    if any(g.degree(v) < 3 for v in range(g.vertex_count)):
        raise ValueError("input graph must have minimum degree 3")
    if oracle is None:
        oracle = lambda net: is_forest_based_unrooted_exact(net, budget)[0]
    subsets = combinations(range(g.vertex_count), 4)
    if threads and threads > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=threads) as pool:
            return any(pool.map(lambda q: oracle(attach_leaves(g, q)), subsets))
    for subset in subsets:
        if oracle(attach_leaves(g, subset)):
            return True
    return False
