"""Error kinds shared across the package.

Each class carries a ``kind`` string so the CLI can map failures to exit codes
without importing every module.
"""

from __future__ import annotations


class CopNumError(Exception):
    kind = "error"


class InvalidInput(CopNumError, ValueError):
    kind = "invalid-input"


class DisconnectedComplement(InvalidInput):
    """Removing a vertex set left the graph disconnected."""

    kind = "disconnected-complement"


class EmptyGraph(InvalidInput):
    kind = "empty-graph"


class NoPath(CopNumError):
    kind = "no-path"


class ResourceLimit(CopNumError):
    kind = "resource-limit"

    def __init__(self, message: str, required: int | None = None, budget: int | None = None):
        super().__init__(message)
        self.required = required
        self.budget = budget


class PartialResult(ResourceLimit):
    """A budgeted search stopped early; ``lower_bound`` is what was proven so far."""

    kind = "partial-result"

    def __init__(self, message: str, lower_bound: int):
        super().__init__(message)
        self.lower_bound = lower_bound


class InsufficientPatch(CopNumError):
    kind = "insufficient-patch"


class StrategyFault(CopNumError):
    """A strategy produced an illegal move or could not honour its contract."""

    kind = "strategy-fault"

    def __init__(self, message: str, side: str | None = None, stage: int | None = None):
        prefix = ""
        if side is not None:
            prefix = f"[{side}, stage {stage}] " if stage is not None else f"[{side}] "
        super().__init__(prefix + message)
        self.side = side
        self.stage = stage
