"""Exception hierarchy and brute-force size-guard resolution."""

from __future__ import annotations

import os

#: Default vertex-count guard for exhaustive (exponential) routines.
DEFAULT_BRUTE_GUARD = 12
#: Default vertex-count guard for triple enumeration.
DEFAULT_ENUM_GUARD = 10
#: Default order guard for exhaustive tree enumeration.
DEFAULT_TREE_GUARD = 7

_ENV_GUARD = "KEEPTREE_GUARD"


class KeeptreeError(Exception):
    """Base class for all keeptree-specific errors."""


class ParseError(KeeptreeError):
    """Malformed input: edge list, GraphML, certificate, or manifest."""


class GuardExceeded(KeeptreeError):
    """A brute-force routine was invoked above its size guard."""


class PreconditionError(KeeptreeError):
    """A documented operation precondition does not hold for the inputs."""


class SearchExhausted(KeeptreeError):
    """A complete or guarded search finished without finding a witness."""


class HypothesisFailure(KeeptreeError):
    """Pipeline invoked without force on an instance failing its hypotheses."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class TheoremViolation(KeeptreeError):
    """A guarantee that must hold for valid inputs failed at runtime.

    Prime suspects are invalid inputs or an implementation bug; this is
    surfaced loudly rather than silently swallowed.
    """


def resolve_guard(explicit: int | None, default: int) -> int:
    """Pick a size guard: explicit argument, else KEEPTREE_GUARD, else default."""
    if explicit is not None:
        return explicit
    env = os.environ.get(_ENV_GUARD)
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ParseError(f"{_ENV_GUARD} must be an integer, got {env!r}") from exc
    return default
