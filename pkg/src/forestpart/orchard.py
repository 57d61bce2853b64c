"""Cherry picking on DAGs: detection, reduction search, and the constructive
leaf induced path partition for reducible DAGs.

A cherry is an ordered pair of leaves (x, y) whose parents either coincide
(standard) or are joined by an arc into y's reticulation parent
(reticulated). Picking removes y (standard) or the parent arc
(reticulated) and suppresses any resulting subdivision vertices. A DAG is
reducible when some pick sequence turns every connected component into a
single arc; replaying such a sequence backwards converts the trivial
partition of the reduced DAG into a leaf induced path partition of the
original, so every reducible DAG is forest-based.

All vertex ids in cherries, sequences and partitions refer to the ids of
the DAG the operation started from; intermediate graphs never renumber.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .dag import Dag
from .errors import DEFAULT_BUDGET, BudgetExceededError
from .partition import Kind, PathPartition, certified_partition


class CherryKind(Enum):
    STANDARD = "S"
    RETICULATED = "R"


@dataclass(frozen=True)
class Cherry:
    x: int
    y: int
    kind: CherryKind
    x_parent: int
    y_parent: int


@dataclass(frozen=True)
class ReversalRecord:
    """Exact delta of one cherry pick, sufficient to undo it.

    ``suppressed`` lists (vertex, in_neighbor, out_neighbor) triples for the
    0, 1 or 2 subdivision vertices removed by the pick. ``survivors`` and
    ``removed_labels`` are filled by the single-step :func:`pick_cherry`
    (whose result is a fresh compacted Dag) and are None/() inside
    sequences, which keep the original ids throughout.
    """

    cherry: Cherry
    removed_vertices: tuple[int, ...]
    removed_arcs: tuple[tuple[int, int], ...]
    added_arcs: tuple[tuple[int, int], ...]
    suppressed: tuple[tuple[int, int, int], ...]
    survivors: tuple[int, ...] | None = None
    removed_labels: tuple[tuple[int, str], ...] = ()


@dataclass(frozen=True)
class CherrySequence:
    """Ordered cherry picks, with per-step reversal records."""

    steps: tuple[tuple[Cherry, ReversalRecord], ...]

    def __len__(self):
        return len(self.steps)

    def serialize(self) -> str:
        lines = [f"{c.kind.value} {c.x} {c.y}" for c, _ in self.steps]
        return "\n".join(lines) + "\n" if lines else ""


class _Workspace:
    """Mutable adjacency view over the surviving original vertex ids."""

    def __init__(self, g: Dag):
        self.out = {v: set(g.out_adj[v]) for v in range(g.vertex_count)}
        self.inn = {v: set(g.in_adj[v]) for v in range(g.vertex_count)}

    def validate_preconditions(self):
        for v in self.out:
            if not self.out[v] and len(self.inn[v]) != 1:
                raise ValueError(f"leaf {v} must have indegree 1, found {len(self.inn[v])}")
            if len(self.inn[v]) == 1 and len(self.out[v]) == 1:
                raise ValueError(f"subdivision vertex {v} not allowed")

    def leaves(self):
        return sorted(v for v in self.out if not self.out[v])

    def is_cherry(self, c: Cherry):
        if c.x not in self.out or c.y not in self.out or c.x == c.y:
            return False
        if self.out[c.x] or self.out[c.y]:
            return False
        if self.inn[c.x] != {c.x_parent} or self.inn[c.y] != {c.y_parent}:
            return False
        if c.kind is CherryKind.STANDARD:
            return c.x_parent == c.y_parent
        return len(self.inn[c.y_parent]) >= 2 and c.y_parent in self.out[c.x_parent]

    def cherries(self):
        found = []
        leaf_parent = {}
        for v in self.leaves():
            (leaf_parent[v],) = self.inn[v]
        for x, px in leaf_parent.items():
            for y, py in leaf_parent.items():
                if x == y:
                    continue
                if px == py:
                    found.append(Cherry(x, y, CherryKind.STANDARD, px, py))
                elif len(self.inn[py]) >= 2 and py in self.out[px]:
                    found.append(Cherry(x, y, CherryKind.RETICULATED, px, py))
        found.sort(key=lambda c: (c.kind is CherryKind.RETICULATED, c.x, c.y))
        return found

    def _remove_arc(self, u, v, log):
        self.out[u].discard(v)
        self.inn[v].discard(u)
        log.append((u, v))

    def _suppress_if_subdivision(self, v, removed_arcs, added_arcs, removed_vertices, suppressed):
        if len(self.inn[v]) != 1 or len(self.out[v]) != 1:
            return
        (z,) = self.inn[v]
        (c,) = self.out[v]
        self._remove_arc(z, v, removed_arcs)
        self._remove_arc(v, c, removed_arcs)
        del self.out[v], self.inn[v]
        removed_vertices.append(v)
        assert c not in self.out[z], "suppression would create a parallel arc"
        self.out[z].add(c)
        self.inn[c].add(z)
        added_arcs.append((z, c))
        suppressed.append((v, z, c))

    def pick(self, c: Cherry) -> ReversalRecord:
        if not self.is_cherry(c):
            raise ValueError(f"not a cherry of the current graph: {c}")
        removed_arcs, added_arcs, removed_vertices, suppressed = [], [], [], []
        if c.kind is CherryKind.STANDARD:
            self._remove_arc(c.x_parent, c.y, removed_arcs)
            del self.out[c.y], self.inn[c.y]
            removed_vertices.append(c.y)
            self._suppress_if_subdivision(
                c.x_parent, removed_arcs, added_arcs, removed_vertices, suppressed
            )
        else:
            self._remove_arc(c.x_parent, c.y_parent, removed_arcs)
            self._suppress_if_subdivision(
                c.x_parent, removed_arcs, added_arcs, removed_vertices, suppressed
            )
            self._suppress_if_subdivision(
                c.y_parent, removed_arcs, added_arcs, removed_vertices, suppressed
            )
        return ReversalRecord(
            cherry=c,
            removed_vertices=tuple(removed_vertices),
            removed_arcs=tuple(removed_arcs),
            added_arcs=tuple(added_arcs),
            suppressed=tuple(suppressed),
        )

    def undo(self, rec: ReversalRecord):
        for v in rec.removed_vertices:
            self.out[v] = set()
            self.inn[v] = set()
        for u, v in rec.added_arcs:
            self.out[u].discard(v)
            self.inn[v].discard(u)
        for u, v in rec.removed_arcs:
            self.out[u].add(v)
            self.inn[v].add(u)

    def is_reduced(self):
        return all(len(self.out[v]) + len(self.inn[v]) == 1 for v in self.out)

    def arc_set(self):
        return frozenset((u, v) for u in self.out for v in self.out[u])

    def to_dag(self, labels=None):
        survivors = sorted(self.out)
        new_id = {v: i for i, v in enumerate(survivors)}
        arcs = [(new_id[u], new_id[v]) for u in self.out for v in self.out[u]]
        kept_labels = (
            {new_id[v]: labels[v] for v in survivors if v in labels} if labels else None
        )
        return Dag(len(survivors), arcs, kept_labels), tuple(survivors)


def find_cherries(g: Dag) -> list[Cherry]:
    """All ordered cherry pairs of ``g``, standard cherries first.

    Requires the orchard preconditions: every leaf has indegree 1 and there
    is no subdivision vertex.
    """
    ws = _Workspace(g)
    ws.validate_preconditions()
    return ws.cherries()


def pick_cherry(g: Dag, c: Cherry) -> tuple[Dag, ReversalRecord]:
    """Apply one cherry pick, returning the compacted result and its record.

    The record keeps original ids (``survivors`` maps the new ids back), so
    :func:`unpick_cherry` restores ``g`` exactly.
    """
    ws = _Workspace(g)
    ws.validate_preconditions()
    rec = ws.pick(c)
    dag, survivors = ws.to_dag(g.labels)
    rec = ReversalRecord(
        cherry=rec.cherry,
        removed_vertices=rec.removed_vertices,
        removed_arcs=rec.removed_arcs,
        added_arcs=rec.added_arcs,
        suppressed=rec.suppressed,
        survivors=survivors,
        removed_labels=tuple(
            (v, g.labels[v]) for v in rec.removed_vertices if v in g.labels
        ),
    )
    return dag, rec


def unpick_cherry(g: Dag, rec: ReversalRecord) -> Dag:
    """Invert :func:`pick_cherry`, restoring the original DAG bit for bit."""
    if rec.survivors is None:
        raise ValueError("record does not carry a survivor map")
    back = dict(enumerate(rec.survivors))
    arcs = {(back[u], back[v]) for u, v in g.arcs}
    arcs -= set(rec.added_arcs)
    arcs |= set(rec.removed_arcs)
    labels = {back[v]: lab for v, lab in g.labels.items()}
    labels.update(rec.removed_labels)
    return Dag(len(rec.survivors) + len(rec.removed_vertices), arcs, labels)


def reduce(g: Dag, budget: int = DEFAULT_BUDGET, stats: dict | None = None) -> CherrySequence | None:
    """Search for a cherry sequence reducing ``g``; None when none exists.

    Greedy-first (standard cherries before reticulated, lowest leaf pair
    first) with full backtracking over pick order and memoization of failed
    states, since pick order is not known to be irrelevant on multi-rooted
    DAGs. Raises :class:`BudgetExceededError` past ``budget`` search nodes.
    """
    if stats is None:
        stats = {}
    ws = _Workspace(g)
    ws.validate_preconditions()
    failed = set()
    state = {"nodes": 0}
    steps = []

    def search():
        state["nodes"] += 1
        if state["nodes"] > budget:
            stats["nodes_expanded"] = state["nodes"]
            raise BudgetExceededError(state["nodes"])
        if ws.is_reduced():
            return True
        key = ws.arc_set()
        if key in failed:
            return False
        for c in ws.cherries():
            rec = ws.pick(c)
            steps.append((c, rec))
            if search():
                return True
            steps.pop()
            ws.undo(rec)
        failed.add(key)
        return False

    found = search()
    stats["nodes_expanded"] = state["nodes"]
    return CherrySequence(tuple(steps)) if found else None


def apply_sequence(g: Dag, seq: CherrySequence) -> Dag:
    """Replay a sequence forward and return the final (compacted) DAG."""
    ws = _Workspace(g)
    ws.validate_preconditions()
    for c, _ in seq.steps:
        ws.pick(c)
    dag, _ = ws.to_dag(g.labels)
    return dag


def orchard_leaf_ipp(g: Dag, seq: CherrySequence) -> PathPartition:
    """Build a certified leaf induced path partition from a reducing sequence.

    Replays the sequence forward, takes the reduced DAG's trivial two-vertex
    paths, then reverses the picks last to first: removed leaves come back
    as singleton paths (splitting their parent's path when the parent arc
    must be used), and suppressed subdivision vertices are spliced back into
    the path using the arc they subdivide.
    """
    ws = _Workspace(g)
    ws.validate_preconditions()
    records = []
    for c, _ in seq.steps:
        records.append(ws.pick(c))
    if not ws.is_reduced():
        raise ValueError("sequence does not reduce the graph")

    paths = sorted([[u, v] for u in ws.out for v in ws.out[u]], key=lambda p: p[0])

    def path_containing(v):
        for p in paths:
            if v in p:
                return p
        raise AssertionError(f"vertex {v} missing from partition")

    def ensure_arc_used(parent, child):
        # make some path traverse (parent, child); child currently a leaf
        p_child = path_containing(child)
        if len(p_child) > 1:
            assert p_child[p_child.index(child) - 1] == parent
            return
        paths.remove(p_child)
        p_par = path_containing(parent)
        cut = p_par.index(parent) + 1
        tail = p_par[cut:]
        del p_par[cut:]
        p_par.append(child)
        assert tail, "parent may not end a leaf path"
        paths.append(tail)

    def splice_after(parent, mid, child):
        p = path_containing(child)
        i = p.index(child)
        assert p[i - 1] == parent
        p.insert(i, mid)

    for rec in reversed(records):
        ws.undo(rec)
        c = rec.cherry
        sup = {v: (z, out) for v, z, out in rec.suppressed}
        if c.kind is CherryKind.STANDARD:
            if c.x_parent in sup:
                z, _ = sup[c.x_parent]
                ensure_arc_used(z, c.x)
                splice_after(z, c.x_parent, c.x)
            paths.append([c.y])
        else:
            p = sup[c.x_parent][0] if c.x_parent in sup else c.x_parent
            q = sup[c.y_parent][0] if c.y_parent in sup else c.y_parent
            ensure_arc_used(p, c.x)
            if p == q:
                # both parents were suppressed onto the same grandparent;
                # the reinserted reticulation parent starts y's path itself
                assert c.y_parent in sup
                y_path = path_containing(c.y)
                assert y_path == [c.y]
                if c.x_parent in sup:
                    splice_after(p, c.x_parent, c.x)
                y_path.insert(0, c.y_parent)
            else:
                ensure_arc_used(q, c.y)
                if c.x_parent in sup:
                    splice_after(p, c.x_parent, c.x)
                if c.y_parent in sup:
                    splice_after(q, c.y_parent, c.y)
        paths.sort(key=lambda p: p[0])

    pp = certified_partition(g, paths)
    assert pp.kind == Kind.LEAF_IPP
    return pp


def random_orchard(rng, target_vertices=20, components=1, network=True) -> Dag:
    """Random reducible DAG grown by inverting cherry picks.

    Starts from a reduced DAG with ``components`` single-arc components and
    repeatedly applies the exact inverse of a cherry-picking operation
    (adding a sibling leaf, optionally re-subdividing the parent arc, or
    adding a reticulated-cherry arc, with any resulting subdivision vertices
    materialized), so the result is reducible by construction. With
    ``network=True`` move choices are restricted so the final DAG classifies
    as a network (requires ``components=1``).
    """
    n = 2 * components
    out = {v: set() for v in range(n)}
    inn = {v: set() for v in range(n)}
    for i in range(components):
        out[2 * i].add(2 * i + 1)
        inn[2 * i + 1].add(2 * i)

    def add_vertex():
        nonlocal n
        out[n] = set()
        inn[n] = set()
        n += 1
        return n - 1

    def add_arc(u, v):
        out[u].add(v)
        inn[v].add(u)

    def reaches(a, b):
        stack = [a]
        seen = {a}
        while stack:
            u = stack.pop()
            if u == b:
                return True
            for w in out[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return False

    def leaves():
        return sorted(v for v in out if not out[v])

    first_move = True
    while n < target_vertices:
        room = target_vertices - n
        lvs = leaves()
        parent = {v: next(iter(inn[v])) for v in lvs}
        moves = [("sibling", x) for x in lvs]
        if room >= 2:
            moves += [("resplit", x) for x in lvs]
        # reticulated inverses need a non-root parent of y, with outdegree 1
        # when a proper network is requested (reticulations keep outdegree 1)
        def retic_ok(q):
            return inn[q] and (not network or len(out[q]) == 1)

        for x in lvs:
            for y in lvs:
                if x == y:
                    continue
                p, q = parent[x], parent[y]
                if not retic_ok(q):
                    continue
                if p != q and q not in out[p] and not reaches(q, p):
                    moves.append(("retic", x, y))
                if not reaches(q, parent[x]):
                    moves.append(("retic_split_x", x, y))
                if p != q:
                    moves.append(("retic_split_y", x, y))
                if room >= 2:
                    moves.append(("retic_split_both", x, y))
        if first_move and network:
            moves = [("sibling", lvs[0])]
            first_move = False
        kind, *args = moves[rng.randrange(len(moves))]
        if kind == "sibling":
            (x,) = args
            add_arc(parent[x], add_vertex())
        elif kind == "resplit":
            (x,) = args
            z = parent[x]
            out[z].discard(x)
            inn[x].discard(z)
            w = add_vertex()
            add_arc(z, w)
            add_arc(w, x)
            add_arc(w, add_vertex())
        elif kind == "retic":
            x, y = args
            add_arc(parent[x], parent[y])
        elif kind == "retic_split_x":
            x, y = args
            z = parent[x]
            out[z].discard(x)
            inn[x].discard(z)
            w = add_vertex()
            add_arc(z, w)
            add_arc(w, x)
            add_arc(w, parent[y])
        elif kind == "retic_split_y":
            x, y = args
            q0 = parent[y]
            out[q0].discard(y)
            inn[y].discard(q0)
            v = add_vertex()
            add_arc(q0, v)
            add_arc(v, y)
            add_arc(parent[x], v)
        else:  # retic_split_both
            x, y = args
            z, q0 = parent[x], parent[y]
            out[z].discard(x)
            inn[x].discard(z)
            w = add_vertex()
            add_arc(z, w)
            add_arc(w, x)
            out[q0].discard(y)
            inn[y].discard(q0)
            v = add_vertex()
            add_arc(q0, v)
            add_arc(v, y)
            add_arc(w, v)

    arcs = [(u, v) for u in out for v in out[u]]
    return Dag(n, arcs)
