"""Exceptions shared by the search-based solvers."""

DEFAULT_BUDGET = 10_000_000


class BudgetExceededError(RuntimeError):
    """A bounded search ran out of its work budget."""

    def __init__(self, nodes_expanded):
        super().__init__(f"search budget exceeded after {nodes_expanded} nodes")
        self.nodes_expanded = nodes_expanded


class NotSemiBinaryError(ValueError):
    """Input DAG exceeds the degree bounds the 2-SAT encoding can express."""
