"""Resource-cap errors.

Every long-running search in this package runs under an explicit cap and
raises one of these instead of returning a silent partial answer.
"""

from __future__ import annotations


class ResourceLimitError(RuntimeError):
    """A configured resource cap was hit before the computation finished."""

    kind = "resource"

    def __init__(self, limit: int, detail: str = ""):
        self.limit = limit
        self.detail = detail
        msg = f"{self.kind} cap {limit} exceeded"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)


class EnumerationBudgetError(ResourceLimitError):
    """An exhaustive word enumeration would exceed the configured budget."""

    kind = "enumeration-budget"


class StateCapError(ResourceLimitError):
    """An automaton construction grew past the configured state cap."""

    kind = "state-cap"


class SearchBoundError(ResourceLimitError):
    """A bounded witness search was exhausted without an answer."""

    kind = "search-bound"
