"""Presentations, Smith normal form, coset enumeration, abelian lattices.

The Smith invariant factors are cross-checked with the determinantal
divisor formula (gcd of all k-by-k minors), a derivation independent of
the row/column reduction in the implementation.
"""
import itertools
import math

import pytest

from hilb2 import permgroup
from hilb2.errors import (
    CapExceeded,
    PresentationSyntaxError,
    UnknownGenerator,
)
from hilb2.fpgroup import (
    AbelianInvariants,
    abelianization,
    coset_enumeration,
    parse_presentation,
    parse_word,
    permutation_realization,
    smith_invariant_factors,
    subgroups_of_abelian,
)
from hilb2.tables import abelian_table


def minor_determinant(matrix, rows, cols):
    if not rows:
        return 1
    size = len(rows)
    total = 0
    for perm in itertools.permutations(range(size)):
        sign = 1
        for i in range(size):
            for j in range(i + 1, size):
                if perm[i] > perm[j]:
                    sign = -sign
        product = 1
        for i in range(size):
            product *= matrix[rows[i]][cols[perm[i]]]
        total += sign * product
    return total


def invariant_factors_by_minors(matrix):
    """Determinantal-divisor oracle: f_k = d_k / d_{k-1} with d_k the gcd
    of all k-by-k minors, and zeros once the divisors vanish."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    width = min(rows, cols)
    factors = []
    previous = 1
    for k in range(1, width + 1):
        gcd_k = 0
        for rsel in itertools.combinations(range(rows), k):
            for csel in itertools.combinations(range(cols), k):
                gcd_k = math.gcd(gcd_k, minor_determinant(matrix, rsel, csel))
        if gcd_k == 0:
            break
        factors.append(gcd_k // previous)
        previous = gcd_k
    factors.extend([0] * (width - len(factors)))
    return tuple(factors)


def test_smith_invariant_factors_frozen_values():
    assert smith_invariant_factors([[2, 0], [0, 3]]) == (1, 6)
    assert smith_invariant_factors([[2, 4], [6, 8]]) == (2, 4)
    assert smith_invariant_factors([[1, 0], [0, 1]]) == (1, 1)
    assert smith_invariant_factors([[0, 0], [0, 0]]) == (0, 0)
    assert smith_invariant_factors([[1, 2, 3], [4, 5, 6], [7, 8, 9]]) \
        == (1, 3, 0)
    assert smith_invariant_factors([]) == ()
    assert smith_invariant_factors([[6]]) == (6,)
    assert smith_invariant_factors([[2, 3]]) == (1,)


def test_smith_invariant_factors_match_minor_oracle():
    matrices = [
        [[2, 0], [0, 3]],
        [[2, 4], [6, 8]],
        [[4, 2], [2, 4]],
        [[1, 2, 3], [4, 5, 6], [7, 8, 9]],
        [[2, 0, 0], [0, 4, 0], [0, 0, 8]],
        [[3, 1, -2], [0, 5, 4]],
        [[-2, 4], [6, -8], [10, 12]],
        [[12]],
        [[0, 7], [3, 0]],
    ]
    for matrix in matrices:
        assert smith_invariant_factors(matrix) == \
            invariant_factors_by_minors(matrix), matrix


def test_parse_presentation_round_trip():
    text = "< a b | a^4, a^2 b^-2, b^-1 a b a >"
    p = parse_presentation(text)
    assert str(p) == text
    assert str(parse_presentation(str(p))) == text
    empty = str(parse_presentation("< | >"))
    assert str(parse_presentation(empty)) == empty
    assert str(parse_presentation("<a|a^2>")) == "< a | a^2 >"


def test_parse_presentation_errors():
    for bad in ("", "a | a^2", "< a  a^2 >", "< a | a^ >", "< a | b >"):
        with pytest.raises((PresentationSyntaxError, UnknownGenerator)):
            parse_presentation(bad)


def test_parse_word():
    p = parse_presentation("< a b | a^2, b^3 >")
    assert parse_word(p, "a b^-1") != ()
    with pytest.raises(UnknownGenerator):
        parse_word(p, "c")


def test_abelianization_of_reference_presentations():
    cases = [
        ("< | >", 0, ()),
        ("< a | a^2 >", 0, (2,)),
        ("< a | a^7 >", 0, (7,)),
        ("< a b | a^4, a^2 b^-2, b^-1 a b a >", 0, (2, 2)),
        ("< a b | a^2, b^3, a b a b >", 0, (2,)),
        ("< a | >", 1, ()),
        ("< a b | >", 2, ()),
        ("< a b | a^2 >", 1, (2,)),
    ]
    for text, rank, torsion in cases:
        result = abelianization(parse_presentation(text))
        assert (result.rank, result.torsion) == (rank, torsion), text


def test_coset_enumeration_indices():
    assert coset_enumeration(parse_presentation("< a | a^5 >")).index == 5
    assert coset_enumeration(
        parse_presentation("< a b | a^4, a^2 b^-2, b^-1 a b a >")
    ).index == 8
    assert coset_enumeration(
        parse_presentation("< a b | a^2, b^3, a b a b >")
    ).index == 6
    assert coset_enumeration(parse_presentation("< | >")).index == 1


def test_coset_enumeration_over_subgroup():
    p = parse_presentation("< a b | a^3, b^2, a b a b >")
    table = coset_enumeration(p, (parse_word(p, "b"),))
    assert table.index == 3
    q = parse_presentation("< a b | a^2, b^3, a b a b >")
    assert coset_enumeration(q, (parse_word(q, "b"),)).index == 2


def test_coset_enumeration_cap():
    with pytest.raises(CapExceeded):
        coset_enumeration(parse_presentation("< a b | >"), cap=50)


def test_permutation_realization_is_regular_for_trivial_subgroup():
    p = parse_presentation("< a b | a^2, b^3, a b a b >")
    table = coset_enumeration(p)
    group = permutation_realization(table)
    assert len(group) == 6
    assert not group.is_abelian()
    assert permgroup.commutator_subgroup(group).order == 3


def test_subgroups_of_abelian_counts():
    assert len(subgroups_of_abelian(AbelianInvariants(0, ()))) == 1
    assert len(subgroups_of_abelian(AbelianInvariants(0, (2, 2)))) == 5
    assert len(subgroups_of_abelian(AbelianInvariants(0, (4,)))) == 3
    assert len(subgroups_of_abelian(AbelianInvariants(0, (6,)))) == 4
    assert len(subgroups_of_abelian(AbelianInvariants(0, (2, 4)))) == 8


def regular_model(table):
    mul = table.mul
    gens = tuple(
        permgroup.Permutation(tuple(mul(g, x) for x in range(table.order)))
        for g in table.small_generating_set()
    )
    return permgroup.generate(gens, domain_size=max(table.order, 1))


def test_subgroups_of_abelian_match_permutation_enumeration():
    for torsion in ((2, 2), (4,), (6,), (2, 4), (8,), (3, 3)):
        structured = subgroups_of_abelian(AbelianInvariants(0, torsion))
        brute = permgroup.subgroups(regular_model(abelian_table(torsion)))
        assert len(structured) == len(brute), torsion
        assert sorted(s.order for s in structured) == \
            sorted(g.order for g in brute), torsion


def test_abelian_subgroup_quotients():
    subs = subgroups_of_abelian(AbelianInvariants(0, (4,)))
    by_order = {sub.order: sub for sub in subs}
    assert by_order[1].quotient == AbelianInvariants(0, (4,))
    assert by_order[2].quotient == AbelianInvariants(0, (2,))
    assert by_order[4].quotient == AbelianInvariants(0, ())
    for sub in subs:
        assert sub.order * sub.index == 4
