from typing import Optional

from internal.errors import BudgetExceededError


class NodeCounter:
    """Counts expanded search nodes and enforces an optional budget.

    A counter may be shared by several searches of one check so that the
    check as a whole respects a single budget.
    """

    def __init__(self, budget: Optional[int] = None):
        if budget is not None and budget < 1:
            raise ValueError("node budget must be positive")
        self.budget = budget
        self.nodes = 0

    def tick(self, amount: int = 1) -> None:
        self.nodes += amount
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetExceededError(self.nodes, self.budget)

    @property
    def remaining(self) -> Optional[int]:
        if self.budget is None:
            return None
        return max(self.budget - self.nodes, 0)
