"""Linear-time 2-SAT over equal / not-equal constraints between variables.

Constraints expand to the classic clause pairs — Equal(x, y) becomes
(!x | y) and (x | !y), NotEqual(x, y) becomes (x | y) and (!x | !y) — and
the instance is solved on the implication graph via Tarjan's strongly
connected components, which it emits in reverse topological order. A
variable is assigned true exactly when its positive literal's component
precedes its negative literal's component in that order.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True, slots=True)
class Equal:
    x: int
    y: int


@dataclass(frozen=True, slots=True)
class NotEqual:
    x: int
    y: int


Constraint = Equal | NotEqual


class TwoSatInstance:
    """Immutable constraint set over ``variable_count`` Boolean variables."""

    __slots__ = ("variable_count", "constraints", "_packed")

    def __init__(self, variable_count, constraints):
        constraints = tuple(constraints)
        packed = []
        for c in constraints:
            if not isinstance(c, (Equal, NotEqual)):
                raise TypeError(f"unsupported constraint {c!r}")
            if not (0 <= c.x < variable_count and 0 <= c.y < variable_count):
                raise ValueError(f"constraint {c!r} out of range")
            packed.append((type(c) is Equal, c.x, c.y))
        self.variable_count = variable_count
        self.constraints = constraints
        self._packed = packed

    def clauses(self):
        """Expanded 2-CNF clauses as pairs of signed DIMACS literals."""
        out = []
        for c in self.constraints:
            x, y = c.x + 1, c.y + 1
            if isinstance(c, Equal):
                out.append((-x, y))
                out.append((x, -y))
            else:
                out.append((x, y))
                out.append((-x, -y))
        return out


def solve(inst: TwoSatInstance) -> list[bool] | None:
    """Satisfying assignment, or None when unsatisfiable.

    Deterministic: Tarjan visits nodes in ascending id order, so identical
    instances produce identical assignments.
    """
    n_nodes = 2 * inst.variable_count
    adj = [[] for _ in range(n_nodes)]
    # Implication edges per constraint, inlined from the clause expansion:
    # each clause (a | b) contributes !a -> b and !b -> a.
    for is_eq, x, y in inst._packed:
        px = 2 * x
        nx = px + 1
        py = 2 * y
        ny = py + 1
        if is_eq:
            adj[px].append(py)
            adj[ny].append(nx)
            adj[nx].append(ny)
            adj[py].append(px)
        else:
            adj[nx].append(py)
            adj[ny].append(px)
            adj[px].append(ny)
            adj[py].append(nx)

    comp = _tarjan_scc(n_nodes, adj)
    assignment = []
    for v in range(inst.variable_count):
        pos, neg = comp[2 * v], comp[2 * v + 1]
        if pos == neg:
            return None
        assignment.append(pos < neg)
    return assignment


def _tarjan_scc(n_nodes, adj):
    """Component label per node; labels increase in reverse topological order."""
    index = [0] * n_nodes  # 1-based visit index, 0 = unvisited
    low = [0] * n_nodes
    comp = [-1] * n_nodes
    on_stack = bytearray(n_nodes)
    scc_stack = []
    counter = 1
    n_comp = 0
    for root in range(n_nodes):
        if index[root]:
            continue
        index[root] = low[root] = counter
        counter += 1
        scc_stack.append(root)
        on_stack[root] = 1
        frames = [root]
        iters = [iter(adj[root])]
        while frames:
            v = frames[-1]
            lv = low[v]
            descended = False
            for w in iters[-1]:
                iw = index[w]
                if not iw:
                    index[w] = low[w] = counter
                    counter += 1
                    scc_stack.append(w)
                    on_stack[w] = 1
                    frames.append(w)
                    iters.append(iter(adj[w]))
                    descended = True
                    break
                if on_stack[w] and iw < lv:
                    lv = iw
            low[v] = lv
            if descended:
                continue
            frames.pop()
            iters.pop()
            if lv == index[v]:
                while True:
                    w = scc_stack.pop()
                    on_stack[w] = 0
                    comp[w] = n_comp
                    if w == v:
                        break
                n_comp += 1
            if frames:
                u = frames[-1]
                if lv < low[u]:
                    low[u] = lv
    return comp


def check_assignment(inst: TwoSatInstance, assignment) -> bool:
    """True iff the assignment satisfies every expanded clause."""
    if len(assignment) != inst.variable_count:
        return False
    for a, b in inst.clauses():
        va = assignment[abs(a) - 1] == (a > 0)
        vb = assignment[abs(b) - 1] == (b > 0)
        if not (va or vb):
            return False
    return True


def to_dimacs(inst: TwoSatInstance) -> str:
    """DIMACS CNF rendering of the expanded clauses, for external solvers."""
    clauses = inst.clauses()
    lines = [f"p cnf {inst.variable_count} {len(clauses)}"]
    for a, b in clauses:
        lines.append(f"{a} {b} 0")
    return "\n".join(lines) + "\n"
