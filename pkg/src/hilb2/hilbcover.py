"""Finite working model of the two-point Hilbert-scheme cover construction.

Start from a free action of a finite group G (order d) on a sheet set Z
over a base B.  On the square Z x Z live the coordinate swap
(z, w) -> (w, z), the second-slot translations (z, w) -> (z, g.w), the
diagonal translations (z, w) -> (g.z, g.w) and the antidiagonal
translations (z, w) -> (a.z, a^-1.w).  Three subgroups of the symmetry
group of the square organize everything:

* the pair group, generated by the swap and the second-slot translations,
  has order 2 d^2 and its orbit space is the symmetric quotient of B;
* the diagonal group, generated by the swap and the diagonal translations,
  has order 2 d; its orbits over an off-doubled symmetric point number d,
  but over a doubled point they number (d + t) / 2 where t counts the
  solutions of g^2 = id (each orbit pair {r, r^-1} merges), so its orbit
  space covers the symmetric quotient with non-constant fibers unless
  every element of G squares to the identity.  It is normal in the pair
  group exactly in that square-to-identity case;
* the antidiagonal group, generated by the swap and the antidiagonal
  translations, is always normal in the pair group: the product of the
  two slot coordinates, read in the abelianization of G, is a surjective
  homomorphism from the pair group onto G/[G, G] whose kernel is exactly
  the antidiagonal group.  Its order is 2 d |[G, G]| and it has exactly
  |G/[G, G]| orbits over every symmetric point — the same count on and
  off the doubled locus — so its orbit space is an unramified
  intermediate quotient of degree |G/[G, G]|.  For abelian G that degree
  is d and the quotient induces the full Hilbert-square cover; for
  nonabelian G only the abelianized cover survives the squaring.  The
  antidiagonal group coincides with the diagonal one whenever every
  element squares to the identity.

Every one of these laws is verified element-by-element at construction
time.  Degenerate models (one sheet over one base point) collapse every
permutation of Z x Z, so the groups are realized on two tagged copies of
Z x Z — swap-type elements exchange the copies, translation-type elements
preserve them — which keeps the abstract group sizes faithful.  All orbit,
fiber and component computations use the plain action on Z x Z.

Index conventions, fixed for reproducibility: a sheet (g, b) has index
g * |B| + b with g in multiplication-table order and b in input order; a
pair (z, w) has index z * |Z| + w; a tagged point is k + t * |Z|^2 with
tag t in {0, 1}.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
import itertools

from . import permgroup
from .descriptors import CoverDescriptor
from .errors import (
    EmptyBase,
    HomomorphismFailure,
    NonAbelianDeckGroup,
    NotGalois,
    UnknownPoint,
)
from .permgroup import DEFAULT_ELEMENT_CAP, Group, Permutation
from .tables import GroupTable


@dataclass(frozen=True, order=True)
class SymPoint:
    """An unordered pair of base labels; first <= second in base order."""

    first: str
    second: str

    @property
    def is_diagonal(self) -> bool:
        return self.first == self.second

    @property
    def label(self) -> str:
        if self.is_diagonal:
            return f"2{self.first}"
        return f"{self.first}+{self.second}"


@dataclass(frozen=True)
class SymQuotient:
    """The symmetric square of a finite label set.

    Points are ordered lexicographically by base-index pairs (i, j) with
    i <= j, so for base (a, b) the order is 2a, a+b, 2b.
    """

    base: tuple[str, ...]
    points: tuple[SymPoint, ...]

    def __post_init__(self) -> None:
        n = len(self.base)
        if len(self.points) != n * (n + 1) // 2:
            raise ValueError("a symmetric square has n(n+1)/2 points")

    def index_of(self, point) -> int:
        """Index of a point given as a SymPoint or its label."""
        for i, p in enumerate(self.points):
            if p == point or p.label == point:
                return i
        raise UnknownPoint(f"{point!r} is not a point of this symmetric square")


def symmetric_quotient(base) -> SymQuotient:
    base = tuple(base)
    points = tuple(
        SymPoint(base[i], base[j])
        for i in range(len(base)) for j in range(i, len(base))
    )
    return SymQuotient(base, points)


@dataclass(frozen=True)
class GSet:
    """A free action of a finite group on sheets over a labeled base.

    The point set is G x B acted on by left multiplication in the first
    slot; the orbit space is B.  Constructed through :func:`free_gset`,
    which verifies freeness by exhaustion.
    """

    group: GroupTable
    base: tuple[str, ...]

    @property
    def size(self) -> int:
        return self.group.order * len(self.base)

    def point_of(self, g: int, b: int) -> int:
        return g * len(self.base) + b

    def g_of(self, z: int) -> int:
        return z // len(self.base)

    def b_of(self, z: int) -> int:
        return z % len(self.base)

    def point_label(self, z: int) -> str:
        g, b = self.g_of(z), self.b_of(z)
        if g == self.group.identity:
            return self.base[b]
        return f"{self.base[b]}.{g}"

    @cached_property
    def labels(self) -> tuple[str, ...]:
        return tuple(self.point_label(z) for z in range(self.size))

    def translation(self, g: int) -> Permutation:
        """The sheet permutation (h, b) -> (g h, b)."""
        mul = self.group.mul
        return Permutation(tuple(
            self.point_of(mul(g, self.g_of(z)), self.b_of(z))
            for z in range(self.size)
        ))


def free_gset(group: GroupTable, base) -> GSet:
    """Build the standard free model; verify freeness point by point."""
    base = tuple(base)
    if not base:
        raise EmptyBase("the base needs at least one point")
    if len(set(base)) != len(base):
        raise ValueError("duplicate base labels")
    gset = GSet(group, base)
    identity = group.identity
    for g in range(group.order):
        if g == identity:
            continue
        moved = gset.translation(g)
        for z in range(gset.size):
            if moved(z) == z:
                raise ValueError(
                    f"action is not free: element {g} fixes a point"
                )
    return gset


@dataclass(frozen=True)
class HilbConstruction:
    """The verified package built on the square of a free G-sheet model.

    ``swap``, ``second_slot_maps``, ``diagonal_maps``,
    ``antidiagonal_maps`` and ``pair_translations`` are tagged
    permutations (domain 2|Z|^2); the three groups they generate live
    tagged as well, with ``*_plain`` images acting on the plain square.
    ``pair_translations[g1 * d + g]`` acts by (z, w) -> (g1.z, g.w);
    ``antidiagonal_maps[a]`` is the pair translation by (a, a^-1).

    ``diagonal_copies[g]`` lists the pair indices (z, g.z);
    ``sym_fibers[i]`` lists the pair indices over symmetric point i;
    ``diagonal_orbit_fibers[i]`` / ``antidiagonal_orbit_fibers[i]`` list
    the orbits of the respective subgroup over symmetric point i, each
    orbit sorted, orbits ordered by smallest member.
    """

    gset: GSet
    square: tuple[tuple[int, int], ...]
    swap: Permutation
    second_slot_maps: tuple[Permutation, ...]
    diagonal_maps: tuple[Permutation, ...]
    antidiagonal_maps: tuple[Permutation, ...]
    pair_translations: tuple[Permutation, ...]
    pair_group: Group
    diagonal_group: Group
    antidiagonal_group: Group
    pair_group_plain: Group
    diagonal_group_plain: Group
    antidiagonal_group_plain: Group
    diagonal_copies: tuple[tuple[int, ...], ...]
    sym: SymQuotient
    sym_fibers: tuple[tuple[int, ...], ...]
    diagonal_orbit_fibers: tuple[tuple[tuple[int, ...], ...], ...]
    antidiagonal_orbit_fibers: tuple[tuple[tuple[int, ...], ...], ...]

    @property
    def d(self) -> int:
        return self.gset.group.order

    @property
    def pair_count(self) -> int:
        return self.gset.size ** 2

    @property
    def square_exponent_holds(self) -> bool:
        """True when every group element squares to the identity."""
        table = self.gset.group
        return all(
            table.mul(g, g) == table.identity for g in range(table.order)
        )

    def plain_of(self, tagged: Permutation) -> Permutation:
        """Forget the tag: the induced permutation of the plain square."""
        m = self.pair_count
        return Permutation(tuple(tagged.images[x] % m for x in range(m)))


def _lift_preserving(images, m: int) -> Permutation:
    return Permutation(tuple(images) + tuple(x + m for x in images))


def _lift_flipping(images, m: int) -> Permutation:
    return Permutation(tuple(x + m for x in images) + tuple(images))


def _orbit_fibers(group_plain: Group, point_sym, sym_count: int,
                  label: str) -> tuple[tuple[tuple[int, ...], ...], ...]:
    """Orbits of a plain subgroup, bucketed by the symmetric point under
    each orbit (asserting no orbit straddles two points)."""
    per_sym: list[list[tuple[int, ...]]] = [[] for _ in range(sym_count)]
    for orbit in permgroup.orbits(group_plain):
        targets = {point_sym[k] for k in orbit}
        assert len(targets) == 1, \
            f"a {label} orbit crosses symmetric points"
        per_sym[targets.pop()].append(tuple(sorted(orbit)))
    for bucket in per_sym:
        bucket.sort(key=lambda o: o[0])
    return tuple(tuple(bucket) for bucket in per_sym)


def build_construction(gset: GSet, *, cap: int = DEFAULT_ELEMENT_CAP) -> HilbConstruction:
    """Assemble the whole package and verify every law exhaustively.

    Checks performed element-by-element (an assertion failure means the
    model itself is broken, not the input):

    * g -> second-slot map and g -> diagonal map are homomorphisms, and
      a -> antidiagonal map is a homomorphism exactly when G is abelian;
    * diagonal map of g = swap . slot-map(g) . swap . slot-map(g);
    * slot-map(g) (swap slot-map(g1) swap) = (swap slot-map(g1) swap)
      slot-map(g), and prefixing a slot map rewrites a pair translation
      into another pair translation — the normal-form rewriting rules;
    * the pair translation indexed (g1, g) moves (z, w) to (g1.z, g.w);
    * the pair group is exactly {pair translations} plus {swap times pair
      translations}, order 2 d^2; the diagonal group is {diagonal maps}
      plus {swap times diagonal maps}, order 2 d; the antidiagonal group
      has order 2 d |commutator of G| (= 2 d in the abelian case, where
      its normal form mirrors the diagonal one);
    * the diagonal group is normal in the pair group exactly when every
      g satisfies g^2 = id; the antidiagonal group is always normal; the
      two subgroups coincide in the g^2 = id case;
    * sending the pair translation (g1, g) and its swap companion to the
      class of g1 * g in the abelianization of G is a homomorphism onto
      G/[G, G] with kernel exactly the antidiagonal group — the
      intermediate quotient is Galois with deck group G/[G, G], which is
      all of G in the abelian case;
    * the plain pair-group orbits partition the square into the
      symmetric-point fibers, of size 2 d^2 off the doubled locus and d^2
      on it;
    * the diagonal preimage splits into d disjoint copies of the sheet
      set, and each copy is fixed pointwise by its antidiagonal swap
      element;
    * diagonal-group orbits over a symmetric point number d off the
      doubled locus and (d + t) / 2 on it, t = #{g : g^2 = id};
      antidiagonal-group orbits number |G/[G, G]| over every point
      (constant fibers; d of them in the abelian case).

    Raises ``CapExceeded`` if the generated groups would pass ``cap``.
    """
    table = gset.group
    d = table.order
    n = gset.size
    m = n * n
    square = tuple((z, w) for z in range(n) for w in range(n))

    translations = [gset.translation(g).images for g in range(d)]
    swap_plain = tuple(w * n + z for z in range(n) for w in range(n))
    slot_plain = [
        tuple(z * n + tr[w] for z in range(n) for w in range(n))
        for tr in translations
    ]
    diag_plain = [
        tuple(tr[z] * n + tr[w] for z in range(n) for w in range(n))
        for tr in translations
    ]

    swap = _lift_flipping(swap_plain, m)
    slot_maps = tuple(_lift_preserving(p, m) for p in slot_plain)
    diag_maps = tuple(_lift_preserving(p, m) for p in diag_plain)
    dom = 2 * m

    # Both families are homomorphic images of G.
    for g in range(d):
        for h in range(d):
            gh = table.mul(g, h)
            assert slot_maps[g] * slot_maps[h] == slot_maps[gh], \
                "second-slot maps do not form a homomorphism"
            assert diag_maps[g] * diag_maps[h] == diag_maps[gh], \
                "diagonal maps do not form a homomorphism"

    gens_of_g = table.small_generating_set()
    pair_group = permgroup.generate(
        (swap,) + tuple(slot_maps[g] for g in gens_of_g),
        domain_size=dom, cap=cap,
    )
    diagonal_group = permgroup.generate(
        (swap,) + tuple(diag_maps[g] for g in gens_of_g),
        domain_size=dom, cap=cap,
    )
    assert all(p in pair_group.elements for p in slot_maps), \
        "a second-slot map escaped the pair group"
    assert all(p in diagonal_group.elements for p in diag_maps), \
        "a diagonal map escaped the diagonal group"
    assert diagonal_group.is_subgroup_of(pair_group)

    # diagonal map = swap . slot . swap . slot.
    for g in range(d):
        assert swap * slot_maps[g] * swap * slot_maps[g] == diag_maps[g], \
            "diagonal map is not the double swap-slot word"

    # Pair translations and the rewriting identities.
    conjugated = [swap * slot_maps[g1] * swap for g1 in range(d)]
    pair_maps = tuple(
        conjugated[g1] * slot_maps[g]
        for g1 in range(d) for g in range(d)
    )
    for g1 in range(d):
        for g in range(d):
            assert slot_maps[g] * conjugated[g1] == pair_maps[g1 * d + g], \
                "slot map does not commute past a conjugated slot map"
    for h in range(d):
        for g1 in range(d):
            for g in range(d):
                assert slot_maps[h] * pair_maps[g1 * d + g] \
                    == pair_maps[g1 * d + table.mul(h, g)], \
                    "prefixing a slot map does not rewrite the second index"
    for g1 in range(d):
        for g in range(d):
            expected = tuple(
                translations[g1][z] * n + translations[g][w]
                for z in range(n) for w in range(n)
            )
            got = pair_maps[g1 * d + g].images
            assert all(got[k] % m == expected[k] for k in range(m)), \
                "pair translation does not act as (g1.z, g.w)"

    # Normal forms pin the orders exactly.
    pair_set = set(pair_maps)
    assert len(pair_set) == d * d, "pair translations are not distinct"
    assert pair_group.elements == pair_set | {swap * x for x in pair_maps}, \
        "pair group is not translations plus swap times translations"
    assert diagonal_group.elements == (
        set(diag_maps) | {swap * x for x in diag_maps}
    ), "diagonal group is not diagonals plus swap times diagonals"
    assert len(pair_group) == 2 * d * d and len(diagonal_group) == 2 * d

    # The antidiagonal family and its group.
    anti_maps = tuple(pair_maps[a * d + table.inv(a)] for a in range(d))
    anti_hom = all(
        anti_maps[a] * anti_maps[b] == anti_maps[table.mul(a, b)]
        for a in range(d) for b in range(d)
    )
    assert anti_hom == table.is_abelian, \
        "antidiagonal maps compose homomorphically iff G is abelian"
    antidiagonal_group = permgroup.generate(
        (swap,) + anti_maps, domain_size=dom, cap=cap
    )
    assert antidiagonal_group.is_subgroup_of(pair_group)
    commutator_order = len(table.commutator_subgroup())
    plus_part = {
        w for w in antidiagonal_group.elements if w.images[0] < m
    }
    assert len(plus_part) == d * commutator_order, \
        "translation half of the antidiagonal group has the wrong order"
    assert len(antidiagonal_group) == 2 * d * commutator_order
    if table.is_abelian:
        assert antidiagonal_group.elements == (
            set(anti_maps) | {swap * x for x in anti_maps}
        ), "abelian antidiagonal group is not antidiagonals plus swaps"

    # Normality laws for the two intermediate subgroups.
    squares_to_id = all(
        table.mul(g, g) == table.identity for g in range(d)
    )
    assert permgroup.is_normal(diagonal_group, pair_group) == squares_to_id, \
        "diagonal group normality differs from the g^2 = id condition"
    assert permgroup.is_normal(antidiagonal_group, pair_group), \
        "antidiagonal group is not normal in the pair group"
    if squares_to_id:
        assert antidiagonal_group.elements == diagonal_group.elements, \
            "the two intermediate subgroups differ despite g^2 = id"

    # The product of the two slots, read in the abelianization of G, is a
    # homomorphism onto G/[G, G] with kernel exactly the antidiagonal
    # group — so the quotient of the pair group by it is G/[G, G].
    ab_table, class_of = table.quotient_by(table.commutator_subgroup())
    assert ab_table.order == d // commutator_order
    slot_product: dict[Permutation, int] = {}
    for g1 in range(d):
        for g in range(d):
            value = class_of[table.mul(g1, g)]
            slot_product[pair_maps[g1 * d + g]] = value
            slot_product[swap * pair_maps[g1 * d + g]] = value
    assert len(slot_product) == len(pair_group)
    gen_values = [(swap, ab_table.identity)] + [
        (slot_maps[g], class_of[g]) for g in gens_of_g
    ]
    for gen, gen_value in gen_values:
        for w, value in slot_product.items():
            assert slot_product[gen * w] == ab_table.mul(gen_value, value), \
                "slot product is not a homomorphism"
    kernel = {
        w for w, value in slot_product.items()
        if value == ab_table.identity
    }
    assert kernel == antidiagonal_group.elements, \
        "slot-product kernel is not the antidiagonal group"

    def project(w: Permutation) -> Permutation:
        return Permutation(tuple(w.images[x] % m for x in range(m)))

    pair_plain = permgroup.generate(
        tuple(project(w) for w in pair_group.generators),
        domain_size=m, cap=cap,
    )
    diag_group_plain = permgroup.generate(
        tuple(project(w) for w in diagonal_group.generators),
        domain_size=m, cap=cap,
    )
    anti_group_plain = permgroup.generate(
        tuple(project(w) for w in antidiagonal_group.generators),
        domain_size=m, cap=cap,
    )
    assert pair_plain.elements == {project(w) for w in pair_group}, \
        "plain image of the pair group does not match"
    assert diag_group_plain.elements == {
        project(w) for w in diagonal_group
    }, "plain image of the diagonal group does not match"
    assert anti_group_plain.elements == {
        project(w) for w in antidiagonal_group
    }, "plain image of the antidiagonal group does not match"

    # Diagonal copies.
    diagonal_copies = tuple(
        tuple(z * n + translations[g][z] for z in range(n))
        for g in range(d)
    )
    seen: set[int] = set()
    for g, copy in enumerate(diagonal_copies):
        assert len(copy) == n
        assert not (set(copy) & seen), "diagonal copies overlap"
        seen |= set(copy)
        # The antidiagonal swap element indexed by g fixes copy g
        # pointwise — this is what makes the intermediate quotient tame
        # along the doubled locus.
        fixer = swap * anti_maps[g]
        assert all(fixer.images[k] % m == k for k in copy), \
            "antidiagonal swap element does not fix its diagonal copy"

    # Symmetric-point fibers of the big quotient map.
    sym = symmetric_quotient(gset.base)
    sym_index = {}
    for i, p in enumerate(sym.points):
        bi = gset.base.index(p.first)
        bj = gset.base.index(p.second)
        sym_index[(bi, bj)] = i
    fibers: list[list[int]] = [[] for _ in sym.points]
    for k in range(m):
        z, w = square[k]
        bz, bw = gset.b_of(z), gset.b_of(w)
        fibers[sym_index[(min(bz, bw), max(bz, bw))]].append(k)
    sym_fibers = tuple(tuple(f) for f in fibers)
    for i, p in enumerate(sym.points):
        expected_size = d * d if p.is_diagonal else 2 * d * d
        assert len(sym_fibers[i]) == expected_size, "fiber size law failed"
    diagonal_union = set(
        itertools.chain.from_iterable(
            sym_fibers[i] for i, p in enumerate(sym.points) if p.is_diagonal
        )
    )
    assert seen == diagonal_union, \
        "diagonal copies do not exhaust the doubled-locus preimage"

    # The plain pair-group orbits are exactly the fibers.
    pair_orbit_sets = {frozenset(o) for o in permgroup.orbits(pair_plain)}
    assert pair_orbit_sets == {frozenset(f) for f in sym_fibers}, \
        "pair-group orbit space is not the symmetric quotient"

    point_sym = [0] * m
    for i, f in enumerate(sym_fibers):
        for k in f:
            point_sym[k] = i

    # Diagonal-group orbits: d per off-doubled point, (d + t) / 2 per
    # doubled point, t = #{g : g^2 = id} (orbit classes {r, r^-1} merge).
    diag_fibers = _orbit_fibers(
        diag_group_plain, point_sym, len(sym.points), "diagonal-group"
    )
    t = sum(
        1 for g in range(d) if table.mul(g, g) == table.identity
    )
    for i, p in enumerate(sym.points):
        expected = (d + t) // 2 if p.is_diagonal else d
        assert len(diag_fibers[i]) == expected, \
            "diagonal-group orbit count law failed"

    # Antidiagonal-group orbits: constant |G/[G, G]| per point (= d for
    # abelian G) — the intermediate quotient is unramified.
    anti_fibers = _orbit_fibers(
        anti_group_plain, point_sym, len(sym.points), "antidiagonal-group"
    )
    for i in range(len(sym.points)):
        assert len(anti_fibers[i]) == ab_table.order, \
            "antidiagonal-group orbit count is not the abelianization order"

    return HilbConstruction(
        gset=gset,
        square=square,
        swap=swap,
        second_slot_maps=slot_maps,
        diagonal_maps=diag_maps,
        antidiagonal_maps=anti_maps,
        pair_translations=pair_maps,
        pair_group=pair_group,
        diagonal_group=diagonal_group,
        antidiagonal_group=antidiagonal_group,
        pair_group_plain=pair_plain,
        diagonal_group_plain=diag_group_plain,
        antidiagonal_group_plain=anti_group_plain,
        diagonal_copies=diagonal_copies,
        sym=sym,
        sym_fibers=sym_fibers,
        diagonal_orbit_fibers=diag_fibers,
        antidiagonal_orbit_fibers=anti_fibers,
    )


@dataclass(frozen=True)
class SignReport:
    """Audit record for the swap-parity homomorphism and its splitting."""

    pair_group_order: int
    d: int
    kernel_order: int
    kernel_is_translation_image: bool
    translation_injective: bool
    translation_homomorphism: bool
    sign_homomorphism: bool
    section_sign: int
    section_squares_to_identity: bool

    @property
    def ok(self) -> bool:
        return (
            self.kernel_is_translation_image
            and self.translation_injective
            and self.translation_homomorphism
            and self.sign_homomorphism
            and self.section_sign == -1
            and self.section_squares_to_identity
            and self.kernel_order == self.d ** 2
            and self.pair_group_order == 2 * self.d ** 2
        )


def sign_and_splitting(c: HilbConstruction) -> SignReport:
    """Verify the swap-parity map on the pair group splits with kernel G x G.

    Every element of the pair group either preserves or exchanges the two
    tagged copies uniformly; the resulting sign map is a homomorphism onto
    the order-2 group, split by the swap, and its kernel is exactly the
    injective image of G x G through the pair translations.  Any failed
    check raises :class:`HomomorphismFailure` — with a validly built
    construction this never happens.
    """
    m = c.pair_count
    d = c.d
    dom = 2 * m

    sign: dict[Permutation, int] = {}
    for w in c.pair_group:
        flips = w.images[0] >= m
        uniform = all((w.images[x] >= m) == (not flips if x >= m else flips)
                      for x in range(dom))
        if not uniform:
            raise HomomorphismFailure(
                "an element of the pair group mixes the tagged copies"
            )
        sign[w] = -1 if flips else 1
    # Uniform tags force sign(ab) = sign(a)sign(b); re-check by generator
    # induction anyway.
    sign_hom = all(
        sign[gen * w] == sign[gen] * sign[w]
        for gen in c.pair_group.generators for w in c.pair_group
    )

    kernel = {w for w, s in sign.items() if s == 1}
    pair_maps = c.pair_translations
    pair_set = set(pair_maps)
    kernel_is_image = kernel == pair_set
    injective = len(pair_set) == d * d

    # Homomorphism from the direct square, by generator induction: left
    # multiplication by a generator pair matches composition.
    table = c.gset.group
    gens = tuple(table.small_generating_set())
    identity = table.identity
    gen_pairs = [(u, identity) for u in gens] + [(identity, v) for v in gens]
    translation_hom = True
    for (u, v) in gen_pairs:
        lead = pair_maps[u * d + v]
        for g1 in range(d):
            for g in range(d):
                composed = lead * pair_maps[g1 * d + g]
                direct = pair_maps[table.mul(u, g1) * d + table.mul(v, g)]
                if composed != direct:
                    translation_hom = False
    section_sign = sign[c.swap]
    squares = (c.swap * c.swap).is_identity

    report = SignReport(
        pair_group_order=len(c.pair_group),
        d=d,
        kernel_order=len(kernel),
        kernel_is_translation_image=kernel_is_image,
        translation_injective=injective,
        translation_homomorphism=translation_hom,
        sign_homomorphism=sign_hom,
        section_sign=section_sign,
        section_squares_to_identity=squares,
    )
    if not report.ok:
        raise HomomorphismFailure(f"sign/splitting verification failed: {report}")
    return report


def big_fiber(c: HilbConstruction, point) -> tuple[int, ...]:
    """Pair indices over a symmetric point (a SymPoint or its label).

    Size is 2 d^2 off the doubled locus and d^2 on it, a law asserted at
    construction time.
    """
    return c.sym_fibers[c.sym.index_of(point)]


def diagonal_components(c: HilbConstruction) -> dict[int, tuple[int, ...]]:
    """The d disjoint sheets over the doubled locus, keyed by g.

    Sheet g is {(z, g.z)}; disjointness and exhaustion of the doubled-locus
    preimage are asserted at construction time.
    """
    return dict(enumerate(c.diagonal_copies))


def fixed_components(c: HilbConstruction) -> frozenset[int]:
    """Labels g of diagonal copies fixed pointwise by a nontrivial element
    of the diagonal group.

    Computed by exhaustion over the whole diagonal group and re-checked
    against the closed form {g : g * g = identity}: the only candidates
    are swap-type elements, which fix (z, g.z) for every z exactly when
    their translation part equals g and g has order at most 2 (the swap
    itself fixes the true diagonal).  Note the contrast with the
    antidiagonal group, where every diagonal copy has a pointwise fixer.
    """
    m = c.pair_count
    identity = Permutation.identity(2 * m)
    found = set()
    for g, copy in enumerate(c.diagonal_copies):
        for w in c.diagonal_group:
            if w == identity:
                continue
            if all(w.images[k] % m == k for k in copy):
                found.add(g)
                break
    table = c.gset.group
    closed_form = {
        g for g in range(table.order) if table.mul(g, g) == table.identity
    }
    assert found == closed_form, (
        f"fixed diagonal copies {sorted(found)} disagree with the order-2 "
        f"prediction {sorted(closed_form)}"
    )
    return frozenset(found)


def xi_tilde_fibers(c: HilbConstruction) -> dict[str, tuple[tuple[int, ...], ...]]:
    """Fibers of the intermediate degree-d quotient, keyed by point label.

    These are the antidiagonal-group orbits over each symmetric point;
    every fiber carries exactly |G/[G, G]| orbits — d of them when G is
    abelian — so the intermediate cover is unramified, as asserted at
    construction time.  (The diagonal-group orbit decomposition, whose
    count drops to (d + t) / 2 over doubled points, is available as
    ``c.diagonal_orbit_fibers``.)
    """
    return {
        p.label: c.antidiagonal_orbit_fibers[i]
        for i, p in enumerate(c.sym.points)
    }


def _abstract_table(group: Group) -> tuple[GroupTable, tuple[Permutation, ...]]:
    """Multiplication table of a permutation group over its sorted elements."""
    elements = group.element_list
    index = {p: i for i, p in enumerate(elements)}
    rows = tuple(
        tuple(index[a * b] for b in elements) for a in elements
    )
    return GroupTable(rows), elements


def hilb_square_cover(xi: CoverDescriptor, *,
                      cap: int = DEFAULT_ELEMENT_CAP) -> CoverDescriptor:
    """The induced cover of the Hilbert square of the base of ``xi``.

    ``xi`` must be Galois with an abelian deck group acting freely on its
    sheets.  The result is the degree-|deck| cover whose sheets are the
    antidiagonal-group orbits of the squared model: over each symmetric
    point ``P`` the sheets are labeled ``P#0 .. P#(d-1)`` in order of
    smallest orbit member, sheets over doubled points are recorded as
    center labels (the locus blown up downstairs), the deck group is
    carried over isomorphically, and no ramification is introduced —
    the intermediate quotient has constant degree-d fibers.
    """
    if not xi.galois:
        raise NotGalois("the squared construction needs a Galois input cover")
    deck = xi.deck_group
    if not deck.is_abelian():
        raise NonAbelianDeckGroup(
            "the squared construction needs an abelian deck group: with a "
            "nonabelian one the intermediate quotient only realizes the "
            "abelianized cover, not a cover of the full degree"
        )
    for p in deck.element_list:
        if not p.is_identity and any(p(x) == x for x in range(deck.domain_size)):
            raise NotGalois("deck group does not act freely on the sheets")

    table, elements = _abstract_table(deck)
    blocks = permgroup.orbits(deck)
    base_labels = tuple(
        min(xi.total_points[i] for i in block) for block in blocks
    )
    if len(set(base_labels)) != len(base_labels):
        raise ValueError("deck orbits do not have distinct minimal labels")

    gset = free_gset(table, base_labels)
    c = build_construction(gset, cap=cap)
    assert len(c.antidiagonal_group) == 2 * c.d, \
        "abelian deck group but oversized antidiagonal subgroup"
    d = c.d

    total: list[str] = []
    center: list[str] = []
    orbit_to_index: dict[int, int] = {}
    for i, p in enumerate(c.sym.points):
        for k, orbit in enumerate(c.antidiagonal_orbit_fibers[i]):
            label = f"{p.label}#{k}"
            orbit_to_index[orbit[0]] = len(total)
            total.append(label)
            if p.is_diagonal:
                center.append(label)

    orbit_of_point: dict[int, int] = {}
    for i in range(len(c.sym.points)):
        for orbit in c.antidiagonal_orbit_fibers[i]:
            root = orbit_to_index[orbit[0]]
            for k in orbit:
                orbit_of_point[k] = root

    deck_perms = set()
    for g in range(d):
        mover = c.plain_of(c.second_slot_maps[g])
        images = tuple(
            orbit_of_point[mover(min_point)]
            for min_point in sorted(orbit_to_index, key=orbit_to_index.get)
        )
        deck_perms.add(Permutation(images))
    assert len(deck_perms) == d, "deck action on orbits is not faithful"
    new_deck = permgroup.group_from_elements(len(total), deck_perms)
    assert len(new_deck) == d

    return CoverDescriptor(
        base_label=f"Hilb2({xi.base_label})",
        total_points=tuple(total),
        monodromy=new_deck,
        degree=d,
        deck_group=new_deck,
        galois=True,
        ramification_labels=xi.ramification_labels,
        center_labels=tuple(center),
    )
