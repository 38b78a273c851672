"""Exception types shared across the package.

Every error raised by the library derives from :class:`Hilb2Error`, so the
command line front end can map failure families onto stable exit codes.
"""
from __future__ import annotations


class Hilb2Error(Exception):
    """Base class for all library errors."""


class CapExceeded(Hilb2Error):
    """An exhaustive enumeration hit its configured hard cap."""


class DomainMismatch(Hilb2Error):
    """Permutations or point sets with incompatible domains were combined."""


class NotASubgroup(Hilb2Error):
    """An operation expected a subgroup relation that does not hold."""


class NotAGroup(Hilb2Error):
    """A multiplication table fails the group axioms."""


class EmptyBase(Hilb2Error):
    """A free action model needs at least one base label."""


class UnknownPoint(Hilb2Error):
    """A queried point does not belong to the model."""


class UnknownCatalogEntry(Hilb2Error):
    """No built-in surface is registered under the requested name."""


class NonAbelianDeckGroup(Hilb2Error):
    """The quotient construction requires an abelian deck group."""


class NotGalois(Hilb2Error):
    """A cover expected to be Galois (with a free deck action) is not."""


class HomomorphismFailure(Hilb2Error):
    """A structural verification that should always succeed failed.

    Raised only if the model itself is inconsistent; no reachable input
    should trigger it.
    """


class IncompleteTable(Hilb2Error):
    """A coset table with undefined entries cannot be realized."""


class InfiniteGroup(Hilb2Error):
    """A finite-group operation was asked about an infinite group."""


class InfiniteAbelianization(InfiniteGroup):
    """Classification requires the abelianized fundamental group to be finite."""


class PresentationSyntaxError(Hilb2Error):
    """A presentation string failed to parse.

    Carries the character offset at which parsing stopped.
    """

    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


class UnknownGenerator(PresentationSyntaxError):
    """A word used a generator name that the presentation does not declare."""

    def __init__(self, name: str, position: int):
        super().__init__(f"unknown generator {name!r}", position)
        self.name = name


class BadLength(Hilb2Error):
    """A Hodge vector had the wrong number of entries for the operation."""
