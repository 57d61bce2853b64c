"""Directed and undirected graph models, structural classification, and text formats.

Every algorithm in this package consumes the :class:`Dag` defined here.
Vertices are dense integer ids ``0..n-1``; display names live in an optional
label sidecar so algorithms can index plain arrays.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass


class CyclicGraphError(ValueError):
    """Arc data contains a directed cycle."""


@dataclass(frozen=True)
class StructureReport:
    """Structural classification of a DAG.

    ``classify`` never rejects an input; callers that need a precondition
    (binary, network, ...) read the relevant flag and report
    ``network_violations`` to explain a failed class.
    """

    is_connected: bool
    is_binary: bool
    is_semi_binary: bool
    is_network: bool
    is_phylogenetic_network: bool
    has_subdivision_vertex: bool
    reticulations: frozenset[int]
    subdivision_vertices: frozenset[int]
    network_violations: tuple[str, ...]


class Dag:
    """Immutable directed acyclic graph over vertex ids ``0..n-1``.

    Arcs form a set (no self-loops, no parallel arcs) and construction
    rejects cyclic input outright. Instances are safe to share across
    threads; all operations are pure.
    """

    __slots__ = ("vertex_count", "arcs", "out_adj", "in_adj", "labels")

    def __init__(self, vertex_count, arcs, labels=None):
        arcs = frozenset((int(u), int(v)) for u, v in arcs)
        for u, v in arcs:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"arc ({u}, {v}) out of range for {vertex_count} vertices")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
        out_adj = [[] for _ in range(vertex_count)]
        in_adj = [[] for _ in range(vertex_count)]
        for u, v in sorted(arcs):
            out_adj[u].append(v)
            in_adj[v].append(u)
        self.vertex_count = vertex_count
        self.arcs = arcs
        self.out_adj = tuple(tuple(a) for a in out_adj)
        self.in_adj = tuple(tuple(sorted(a)) for a in in_adj)
        self.labels = dict(labels) if labels else {}
        self._check_acyclic()

    def _check_acyclic(self):
        indeg = [len(a) for a in self.in_adj]
        queue = deque(v for v in range(self.vertex_count) if indeg[v] == 0)
        seen = 0
        while queue:
            u = queue.popleft()
            seen += 1
            for w in self.out_adj[u]:
                indeg[w] -= 1
                if indeg[w] == 0:
                    queue.append(w)
        if seen != self.vertex_count:
            raise CyclicGraphError("arc set contains a directed cycle")

    def __eq__(self, other):
        return (
            isinstance(other, Dag)
            and self.vertex_count == other.vertex_count
            and self.arcs == other.arcs
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.vertex_count, self.arcs))

    def __repr__(self):
        return f"Dag(vertices={self.vertex_count}, arcs={len(self.arcs)})"

    def in_degree(self, v):
        return len(self.in_adj[v])

    def out_degree(self, v):
        return len(self.out_adj[v])

    def roots(self):
        """Vertices of indegree 0."""
        return {v for v in range(self.vertex_count) if not self.in_adj[v]}

    def leaves(self):
        """Vertices of outdegree 0 (the sinks)."""
        return {v for v in range(self.vertex_count) if not self.out_adj[v]}

    def is_connected(self):
        """Connectivity of the underlying undirected graph."""
        if self.vertex_count == 0:
            return False
        seen = bytearray(self.vertex_count)
        seen[0] = 1
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for w in self.out_adj[u] + self.in_adj[u]:
                if not seen[w]:
                    seen[w] = 1
                    count += 1
                    queue.append(w)
        return count == self.vertex_count

    def is_path(self, seq):
        """True iff ``seq`` is a directed path (distinct vertices, consecutive arcs)."""
        if len(seq) == 0 or len(set(seq)) != len(seq):
            return False
        if any(not 0 <= v < self.vertex_count for v in seq):
            return False
        return all((seq[i], seq[i + 1]) in self.arcs for i in range(len(seq) - 1))

    def is_induced_path(self, seq):
        """True iff ``seq`` is a directed path with no further arc among its vertices.

        Any arc between non-consecutive positions of the sequence (in either
        direction) disqualifies it. Duplicate vertices disqualify it as well.
        """
        if not self.is_path(seq):
            return False
        members = set(seq)
        used = {(seq[i], seq[i + 1]) for i in range(len(seq) - 1)}
        for u in seq:
            for w in self.out_adj[u]:
                if w in members and (u, w) not in used:
                    return False
        return True

    def classify(self) -> StructureReport:
        """Compute the structural flags for this DAG.

        A vertex is internal when it is not a leaf; a reticulation is an
        internal vertex of indegree >= 2; a subdivision vertex has indegree 1
        and outdegree 1. Semi-binary requires every root to have outdegree 2,
        internal total degrees in {2, 3}, and leaf indegrees in {1, 2};
        binary additionally forbids subdivision vertices. A DAG with >= 2
        vertices is a network when it is connected, roots have outdegree
        >= 2, leaves indegree 1, reticulations outdegree 1, and there is no
        subdivision vertex; a single vertex is a network by convention.
        """
        n = self.vertex_count
        leaves = self.leaves()
        roots = self.roots()
        reticulations = frozenset(
            v for v in range(n) if v not in leaves and self.in_degree(v) >= 2
        )
        subdivision = frozenset(
            v for v in range(n) if self.in_degree(v) == 1 and self.out_degree(v) == 1
        )
        connected = self.is_connected()

        semi_binary = n > 0
        for r in roots:
            if self.out_degree(r) != 2:
                semi_binary = False
        for v in range(n):
            if v in leaves:
                if self.in_degree(v) not in (1, 2):
                    semi_binary = False
            elif not 2 <= self.in_degree(v) + self.out_degree(v) <= 3:
                semi_binary = False
        binary = semi_binary and not subdivision

        violations = []
        if n == 0:
            violations.append("empty graph")
        elif n >= 2:
            if not connected:
                violations.append("not connected")
            for r in sorted(roots):
                if self.out_degree(r) < 2:
                    violations.append(f"root {r} has outdegree {self.out_degree(r)} < 2")
            for v in sorted(leaves):
                if self.in_degree(v) != 1:
                    violations.append(f"leaf {v} has indegree {self.in_degree(v)} != 1")
            for v in sorted(reticulations):
                if self.out_degree(v) != 1:
                    violations.append(f"reticulation {v} has outdegree {self.out_degree(v)} != 1")
            if subdivision:
                violations.append(f"subdivision vertices {sorted(subdivision)}")
        is_network = n == 1 or (n >= 2 and not violations)
        return StructureReport(
            is_connected=connected,
            is_binary=binary,
            is_semi_binary=semi_binary,
            is_network=is_network,
            is_phylogenetic_network=is_network and len(roots) == 1,
            has_subdivision_vertex=bool(subdivision),
            reticulations=reticulations,
            subdivision_vertices=subdivision,
            network_violations=tuple(violations),
        )


class UndirectedGraph:
    """Immutable simple undirected graph over vertex ids ``0..n-1``."""

    __slots__ = ("vertex_count", "edges", "adj", "labels")

    def __init__(self, vertex_count, edges, labels=None):
        norm = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise ValueError(f"edge ({u}, {v}) out of range")
            norm.add((min(u, v), max(u, v)))
        adj = [[] for _ in range(vertex_count)]
        for u, v in sorted(norm):
            adj[u].append(v)
            adj[v].append(u)
        self.vertex_count = vertex_count
        self.edges = frozenset(norm)
        self.adj = tuple(tuple(sorted(a)) for a in adj)
        self.labels = dict(labels) if labels else {}

    def __eq__(self, other):
        return (
            isinstance(other, UndirectedGraph)
            and self.vertex_count == other.vertex_count
            and self.edges == other.edges
            and self.labels == other.labels
        )

    def __hash__(self):
        return hash((self.vertex_count, self.edges))

    def __repr__(self):
        return f"UndirectedGraph(vertices={self.vertex_count}, edges={len(self.edges)})"

    def degree(self, v):
        return len(self.adj[v])

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in self.edges

    def leaves(self):
        """Vertices of degree exactly 1."""
        return {v for v in range(self.vertex_count) if self.degree(v) == 1}

    def is_connected(self):
        if self.vertex_count == 0:
            return False
        seen = bytearray(self.vertex_count)
        seen[0] = 1
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for w in self.adj[u]:
                if not seen[w]:
                    seen[w] = 1
                    count += 1
                    queue.append(w)
        return count == self.vertex_count

    def is_tree(self):
        return self.is_connected() and len(self.edges) == self.vertex_count - 1

    def is_induced_path(self, seq):
        """Undirected induced path check; length-0 and length-1 paths qualify."""
        if len(seq) == 0 or len(set(seq)) != len(seq):
            return False
        for i in range(len(seq) - 1):
            if not self.has_edge(seq[i], seq[i + 1]):
                return False
        members = set(seq)
        consecutive = {(min(a, b), max(a, b)) for a, b in zip(seq, seq[1:])}
        for u in seq:
            for w in self.adj[u]:
                if w in members and (min(u, w), max(u, w)) not in consecutive:
                    return False
        return True


# --- edge-list text format ----------------------------------------------
#
# Directed files: one "u v" line per arc, "u" alone declares an isolated
# vertex, "# <id> <name>" attaches a label. Undirected files carry a
# leading "undirected" header line. The writer emits labels, isolated
# vertices, then arcs, all ascending, so format/parse round-trips
# bit-exactly.


def format_dag(g: Dag) -> str:
    lines = []
    for v in sorted(g.labels):
        lines.append(f"# {v} {g.labels[v]}")
    mentioned = {v for arc in g.arcs for v in arc}
    for v in range(g.vertex_count):
        if v not in mentioned:
            lines.append(f"{v}")
    for u, v in sorted(g.arcs):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n" if lines else ""


def parse_dag(text: str) -> Dag:
    arcs, isolated, labels = _parse_edge_lines(text, expect_header=None)
    top = max(
        [u for arc in arcs for u in arc] + list(isolated) + list(labels), default=-1
    )
    return Dag(top + 1, arcs, labels)


def format_undirected(g: UndirectedGraph) -> str:
    lines = ["undirected"]
    for v in sorted(g.labels):
        lines.append(f"# {v} {g.labels[v]}")
    mentioned = {v for e in g.edges for v in e}
    for v in range(g.vertex_count):
        if v not in mentioned:
            lines.append(f"{v}")
    for u, v in sorted(g.edges):
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def parse_undirected(text: str) -> UndirectedGraph:
    edges, isolated, labels = _parse_edge_lines(text, expect_header="undirected")
    top = max(
        [u for e in edges for u in e] + list(isolated) + list(labels), default=-1
    )
    return UndirectedGraph(top + 1, edges, labels)


def _parse_edge_lines(text, expect_header):
    pairs = []
    isolated = set()
    labels = {}
    lines = text.splitlines()
    start = 0
    header = lines[0].strip() if lines else ""
    if expect_header is not None:
        if header != expect_header:
            raise ValueError(f"expected '{expect_header}' header line")
        start = 1
    elif header == "undirected":
        raise ValueError("file declares an undirected graph")
    for ln, raw in enumerate(lines[start:], start + 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            fields = line[1:].split(maxsplit=1)
            if len(fields) == 2 and fields[0].isdigit():
                labels[int(fields[0])] = fields[1]
            continue
        fields = line.split()
        if len(fields) == 1:
            isolated.add(int(fields[0]))
        elif len(fields) == 2:
            pairs.append((int(fields[0]), int(fields[1])))
        else:
            raise ValueError(f"line {ln}: expected 'u v', got {line!r}")
    return pairs, isolated, labels


def to_dot(g: Dag | UndirectedGraph, name="g") -> str:
    """DOT rendering for external visualization tools."""
    directed = isinstance(g, Dag)
    kind, sep = ("digraph", "->") if directed else ("graph", "--")
    lines = [f"{kind} {name} {{"]
    for v in range(g.vertex_count):
        label = g.labels.get(v)
        if label is not None:
            lines.append(f'  {v} [label="{label}"];')
        else:
            lines.append(f"  {v};")
    pairs = g.arcs if directed else g.edges
    for u, v in sorted(pairs):
        lines.append(f"  {u} {sep} {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
