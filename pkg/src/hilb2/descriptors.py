"""Record types for covers and surfaces, shared across the pipeline.

A cover is presented purely by finite data: labeled sheets, the monodromy
action on them, the deck action, and bookkeeping labels.  A surface is its
name, the presentation of the fundamental group of its smooth part, its
labeled singular points, and optionally the dimensions of its holomorphic
forms.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from . import permgroup
from .fpgroup import Presentation
from .permgroup import Group
from .tables import validate_ade


@dataclass(frozen=True)
class CoverDescriptor:
    """A finite cover given by its action data on labeled sheets.

    ``monodromy`` and ``deck_group`` act on indices of ``total_points``.
    For covers of a one-point base the sheets form a single fiber and the
    monodromy is transitive; for orbit-space covers over a multi-point base
    the recorded actions are fiberwise, and for a Galois cover the deck
    orbits are exactly the fibers.

    ``ramification_labels`` marks base points over which branching is
    allowed (empty means unramified everywhere); ``center_labels`` marks
    total points that sit over the doubled locus and would be replaced by
    the exceptional geometry in the honest picture.
    """

    base_label: str
    total_points: tuple[str, ...]
    monodromy: Group
    degree: int
    deck_group: Group
    galois: bool
    ramification_labels: frozenset[str] = frozenset()
    center_labels: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        count = len(self.total_points)
        if len(set(self.total_points)) != count:
            raise ValueError("duplicate sheet labels")
        if self.degree < 1:
            raise ValueError("degree is at least 1")
        if self.monodromy.domain_size != count:
            raise ValueError("monodromy does not act on the sheets")
        if self.deck_group.domain_size != count:
            raise ValueError("deck group does not act on the sheets")
        if not set(self.center_labels) <= set(self.total_points):
            raise ValueError("center labels must name sheets")

    @property
    def is_etale(self) -> bool:
        return not self.ramification_labels

    def fibers(self) -> tuple[tuple[str, ...], ...]:
        """The sheets grouped by the base point they lie over.

        A Galois cover's fibers are the deck orbits; a connected non-Galois
        cover here always sits over a one-point base, so its fiber is the
        whole sheet set.
        """
        if self.galois:
            return permgroup.orbits(self.deck_group, self.total_points)
        return (self.total_points,)


@dataclass(frozen=True)
class SurfaceDescriptor:
    """A surface known through its smooth part's fundamental group.

    ``singular_points`` lists (label, type) pairs where type is a rational
    double point symbol: A1, A2, ..., D4, D5, ..., E6, E7, E8.  ``hodge``
    optionally records the dimensions (h0, h1, h2) of global holomorphic
    forms; None means unknown.
    """

    name: str
    pi1_smooth: Presentation
    singular_points: tuple[tuple[str, str], ...] = ()
    hodge: tuple[int, int, int] | None = field(default=None)

    def __post_init__(self) -> None:
        labels = [label for label, _ in self.singular_points]
        if len(set(labels)) != len(labels):
            raise ValueError("duplicate singular-point labels")
        for _, ade in self.singular_points:
            validate_ade(ade)
        if self.hodge is not None:
            h = self.hodge
            if len(h) != 3 or any(
                not isinstance(v, int) or isinstance(v, bool) or v < 0
                for v in h
            ):
                raise ValueError("hodge is a triple of nonnegative integers")
            if h[0] != 1:
                raise ValueError("a connected surface has one 0-form up to scale")

    @property
    def is_smooth(self) -> bool:
        return not self.singular_points

    @property
    def singular_labels(self) -> tuple[str, ...]:
        return tuple(label for label, _ in self.singular_points)
