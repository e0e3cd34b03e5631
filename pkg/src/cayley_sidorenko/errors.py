"""Exception types shared across the package."""

from __future__ import annotations


class BudgetExceededError(RuntimeError):
    """An exhaustive computation would exceed its configured work cap."""

    def __init__(self, what: str, cost: int, cap: int):
        super().__init__(f"{what}: estimated cost {cost} exceeds cap {cap}")
        self.what = what
        self.cost = cost
        self.cap = cap


class NotBipartiteError(ValueError):
    """Raised when an operation needs a bipartite graph; carries an odd cycle."""

    def __init__(self, message: str, witness: tuple[int, ...]):
        super().__init__(f"{message}; odd cycle {list(witness)}")
        self.witness = witness


class RankDeficientError(ValueError):
    pass
