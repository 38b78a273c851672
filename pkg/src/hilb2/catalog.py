"""Built-in surface descriptors, keyed by name.

The entries are illustrative, not a classification: a simply connected
model, smooth and singular double-cover models, a cyclic family with the
matching A-type points, a quaternion model with a D-type point, and a
nonabelian model used for negative tests.  Each entry records the
presentation of the smooth part's fundamental group, labeled singular
points, and (where meaningful here) the holomorphic-form dimensions.
"""
from __future__ import annotations

from .descriptors import SurfaceDescriptor
from .errors import UnknownCatalogEntry
from .fpgroup import parse_presentation


def _entry(name: str, presentation: str, singular=(), hodge=None) -> SurfaceDescriptor:
    return SurfaceDescriptor(
        name=name,
        pi1_smooth=parse_presentation(presentation),
        singular_points=tuple(singular),
        hodge=hodge,
    )


def _build() -> dict[str, SurfaceDescriptor]:
    entries = [
        _entry("simply-connected", "< | >", hodge=(1, 0, 1)),
        _entry("smooth-enriques", "< a | a^2 >", hodge=(1, 0, 0)),
        _entry(
            "enriques-type", "< a | a^2 >",
            singular=(("p1", "A1"),), hodge=(1, 0, 0),
        ),
        _entry(
            "quaternion",
            "< a b | a^4, a^2 b^-2, b^-1 a b a >",
            singular=(("p1", "D4"),),
        ),
        _entry("nonabelian-order6", "< a b | a^2, b^3, a b a b >"),
    ]
    for n in range(2, 9):
        entries.append(_entry(
            f"cyclic-{n}", f"< a | a^{n} >",
            singular=(("p1", f"A{n - 1}"),),
        ))
    return {entry.name: entry for entry in entries}


_SURFACES = _build()


def surface_names() -> tuple[str, ...]:
    return tuple(sorted(_SURFACES))


def get_surface(name: str) -> SurfaceDescriptor:
    try:
        return _SURFACES[name]
    except KeyError:
        known = ", ".join(surface_names())
        raise UnknownCatalogEntry(
            f"no catalog surface named {name!r}; known: {known}"
        ) from None
