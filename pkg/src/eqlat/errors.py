"""Exception types shared across the package.

Every failure mode that callers are expected to catch has its own class so that
tests and the CLI can tell validation problems, search caps, and bad parameters
apart without string matching.
"""

from __future__ import annotations


class EqlatError(Exception):
    """Base class for all package-specific errors."""


class CycleError(EqlatError):
    """The input cover relation contains a directed cycle."""


class UnknownLabel(EqlatError):
    """A label was referenced that is not an element of the structure."""


class NotALattice(EqlatError):
    """A pair of elements lacks a unique meet or join."""


class NotJoinHomomorphism(EqlatError):
    """An operator fails f(x + y) = f(x) + f(y) for some pair."""


class ZeroNotPreserved(EqlatError):
    """An operator fails f(0) = 0."""


class InvariantViolation(EqlatError):
    """A structural invariant promised by a type does not hold."""


class SizeGuard(EqlatError):
    """An enumeration grew past its configured cap."""


class SearchBudgetExceeded(EqlatError):
    """An operator search space is larger than the allowed budget."""


class BudgetExceeded(EqlatError):
    """A catalog generation request exceeds the enumeration budget."""


class ParamOutOfRange(EqlatError):
    """A named-family parameter is outside the supported range."""


def resolve_budget(explicit: int | None, default: int) -> int:
    """Pick a search cap: explicit argument, else EQLAT_BUDGET env var, else default."""
    if explicit is not None:
        return explicit
    import os

    raw = os.environ.get("EQLAT_BUDGET")
    if raw is not None:
        try:
            return int(raw)
        except ValueError:
            raise ParamOutOfRange(f"EQLAT_BUDGET must be an integer, got {raw!r}") from None
    return default
