"""Exception types raised across the package."""
from __future__ import annotations


class FlagclassError(Exception):
    """Base class for every error this package raises on purpose."""


class InvalidLieTypeError(FlagclassError, ValueError):
    """Family letter or rank outside the classification."""


class InvalidInputError(FlagclassError, ValueError):
    """A precondition on an argument failed."""


class DimensionMismatchError(InvalidInputError):
    """Vector length does not match the rank in play."""


class RootArgumentError(InvalidInputError):
    """An argument was expected to be a (suitable) root and is not."""


class ProjectsToZeroError(RootArgumentError):
    """Restriction to the center of the isotropy vanishes."""


class CartanBracketError(RootArgumentError):
    """Bracket lands in the Cartan subalgebra, not on a root vector."""


class NotAFlagManifoldError(InvalidInputError):
    """Painting every node leaves no flag manifold."""


class NotConnectedError(FlagclassError):
    """No chain or bridge exists between the requested endpoints."""


class NotInSubgroupError(InvalidInputError):
    """Weyl element does not stabilize the painted subsystem."""


class CapExceededError(FlagclassError):
    """An enumeration would exceed its configured cap."""


class InvariantViolationError(FlagclassError, AssertionError):
    """Two routes that must agree disagreed; this is a bug, not bad input."""
