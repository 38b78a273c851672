"""Holomorphic-form dimension bookkeeping for symmetric squares.

A surface contributes a graded triple (h0, h1, h2): the dimensions of its
global holomorphic 0-, 1- and 2-forms.  On the square of the surface the
coordinate swap acts on a product of an i-form and a j-form with the sign
(-1)**(i*j), so the swap-invariant dimensions follow the super-symmetric
square rule: ordinary symmetric square on even-degree diagonal blocks,
exterior square on odd-degree diagonal blocks.  Blowing up the diagonal
adds nothing in these degrees, so the five resulting numbers are the form
dimensions of the Hilbert square.

The target pattern (1, 0, 1, 0, 1) says the whole form algebra is freely
generated by a single 2-form — the dimension-level signature of an
irreducible symplectic fourfold.
"""
from __future__ import annotations

from .errors import BadLength

SURFACE_LENGTH = 3
HILB_LENGTH = 5
ISV_SURFACE_PATTERN = (1, 0, 1)
ISV_HILB_PATTERN = (1, 0, 1, 0, 1)


def _validated(dims, expected_length: int) -> tuple[int, ...]:
    out = tuple(dims)
    if len(out) != expected_length:
        raise BadLength(
            f"expected {expected_length} dimensions, got {len(out)}"
        )
    for value in out:
        if not isinstance(value, int) or isinstance(value, bool) or value < 0:
            raise ValueError(f"dimensions are nonnegative integers, got {value!r}")
    if out[0] != 1:
        raise ValueError("a connected model has one 0-form up to scale")
    return out


def symmetric_square_hodge(dims) -> tuple[int, ...]:
    """Form dimensions (length 5) of the Hilbert square of a surface.

    Degree p collects products of an i-form and a j-form with i + j = p;
    mixed blocks (i < j) contribute once per pair of basis vectors, and the
    diagonal block i = j = p/2 contributes its symmetric square when i is
    even and its exterior square when i is odd.
    """
    h = _validated(dims, SURFACE_LENGTH)
    out = []
    for p in range(HILB_LENGTH):
        total = sum(
            h[i] * h[p - i]
            for i in range(max(0, p - 2), SURFACE_LENGTH)
            if i < p - i <= 2
        )
        if p % 2 == 0:
            m = p // 2
            if m % 2 == 0:
                total += h[m] * (h[m] + 1) // 2
            else:
                total += h[m] * (h[m] - 1) // 2
        out.append(total)
    return tuple(out)


def isv_pattern_check(dims) -> bool:
    """True when five form dimensions match the symplectic-fourfold pattern."""
    return _validated(dims, HILB_LENGTH) == ISV_HILB_PATTERN


def isv_surface_check(dims) -> bool:
    """True when a surface's form dimensions force the pattern upstairs.

    The requirement is no global 1-forms and a one-dimensional space of
    2-forms — exactly the triple (1, 0, 1).
    """
    return _validated(dims, SURFACE_LENGTH) == ISV_SURFACE_PATTERN
