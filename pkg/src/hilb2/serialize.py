"""Exact JSON encoding of the descriptor types.

Everything in this package is integer-valued, so serialization is lossless
by construction: permutations are image lists, groups are generator lists
plus a domain size (decoding regenerates the same element set),
presentations are their canonical text.  Dictionaries carry a ``type`` tag
for dispatch, and reports are wrapped in a versioned envelope.
"""
from __future__ import annotations

import json

from . import permgroup
from .descriptors import CoverDescriptor, SurfaceDescriptor
from .fpgroup import AbelianInvariants, parse_presentation
from .permgroup import Group, Permutation

SCHEMA_VERSION = 1


def group_to_dict(group: Group) -> dict:
    return {
        "domain_size": group.domain_size,
        "generators": [list(p.images) for p in group.generators],
    }


def group_from_dict(data: dict) -> Group:
    return permgroup.generate(
        tuple(Permutation(tuple(images)) for images in data["generators"]),
        domain_size=data["domain_size"],
    )


def cover_to_dict(cover: CoverDescriptor) -> dict:
    return {
        "type": "cover",
        "base_label": cover.base_label,
        "total_points": list(cover.total_points),
        "monodromy": group_to_dict(cover.monodromy),
        "degree": cover.degree,
        "deck_group": group_to_dict(cover.deck_group),
        "galois": cover.galois,
        "ramification_labels": sorted(cover.ramification_labels),
        "center_labels": list(cover.center_labels),
    }


def cover_from_dict(data: dict) -> CoverDescriptor:
    return CoverDescriptor(
        base_label=data["base_label"],
        total_points=tuple(data["total_points"]),
        monodromy=group_from_dict(data["monodromy"]),
        degree=data["degree"],
        deck_group=group_from_dict(data["deck_group"]),
        galois=data["galois"],
        ramification_labels=frozenset(data["ramification_labels"]),
        center_labels=tuple(data["center_labels"]),
    )


def surface_to_dict(surface: SurfaceDescriptor) -> dict:
    return {
        "type": "surface",
        "name": surface.name,
        "pi1_smooth": str(surface.pi1_smooth),
        "singular_points": [list(pair) for pair in surface.singular_points],
        "hodge": None if surface.hodge is None else list(surface.hodge),
    }


def surface_from_dict(data: dict) -> SurfaceDescriptor:
    return SurfaceDescriptor(
        name=data["name"],
        pi1_smooth=parse_presentation(data["pi1_smooth"]),
        singular_points=tuple(
            (label, ade) for label, ade in data["singular_points"]
        ),
        hodge=None if data["hodge"] is None else tuple(data["hodge"]),
    )


def invariants_to_dict(invariants: AbelianInvariants) -> dict:
    return {
        "type": "abelian_invariants",
        "rank": invariants.rank,
        "torsion": list(invariants.torsion),
    }


def invariants_from_dict(data: dict) -> AbelianInvariants:
    return AbelianInvariants(
        rank=data["rank"], torsion=tuple(data["torsion"])
    )


_ENCODERS = {
    CoverDescriptor: cover_to_dict,
    SurfaceDescriptor: surface_to_dict,
    AbelianInvariants: invariants_to_dict,
}
_DECODERS = {
    "cover": cover_from_dict,
    "surface": surface_from_dict,
    "abelian_invariants": invariants_from_dict,
}


def to_dict(obj) -> dict:
    encoder = _ENCODERS.get(type(obj))
    if encoder is None:
        raise TypeError(f"no JSON encoding for {type(obj).__name__}")
    return encoder(obj)


def from_dict(data: dict):
    decoder = _DECODERS.get(data.get("type"))
    if decoder is None:
        raise ValueError(f"unknown record type {data.get('type')!r}")
    return decoder(data)


def envelope(command: str, results: list) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "results": results,
    }


def emit(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True)


def parse(text: str) -> dict:
    return json.loads(text)
