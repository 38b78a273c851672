"""Cover calculus on finite monodromy data.

Covers of a space with fundamental group g correspond to subgroups h <= g:
the sheets are the cosets of h, the monodromy is the coset action, the
cover is Galois exactly when h is normal, and deck transformations come
from the normalizer of h.  This module makes each arrow of that dictionary
executable — including Galois closure, a brute-force verification that the
fundamental group of a punctured symmetric power collapses onto the
abelianization, and the pipeline that turns a surface's data into the full
list of covers of its Hilbert square.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
import itertools
import math

from . import permgroup
from .descriptors import CoverDescriptor, SurfaceDescriptor
from .errors import InfiniteAbelianization, NotASubgroup
from .fpgroup import abelianization, subgroups_of_abelian
from .hilbcover import free_gset, hilb_square_cover
from .permgroup import DEFAULT_ELEMENT_CAP, Group, Permutation
from .tables import GroupTable, abelian_table


def cover_from_subgroup(g: Group, h: Group, *,
                        base_label: str = "base") -> CoverDescriptor:
    """The cover whose sheets are the right cosets of ``h`` in ``g``.

    Sheets are labeled c0, c1, ... with c0 the coset of the identity; the
    monodromy is the right-multiplication action of ``g``, the deck group
    is the left-multiplication action of the normalizer of ``h`` (of order
    |normalizer| / |h|), and the cover is Galois exactly when ``h`` is
    normal.
    """
    if not h.is_subgroup_of(g):
        raise NotASubgroup("the defining subgroup must lie in the group")
    coset_of: dict[Permutation, int] = {}
    reps: list[Permutation] = []
    for x in g.element_list:
        if x in coset_of:
            continue
        k = len(reps)
        reps.append(x)
        for m in h.element_list:
            coset_of[m * x] = k
    degree = len(reps)
    labels = tuple(f"c{i}" for i in range(degree))

    monodromy_gens = tuple(
        Permutation(tuple(coset_of[reps[i] * gen] for i in range(degree)))
        for gen in g.generators
    )
    monodromy = permgroup.generate(
        monodromy_gens, domain_size=degree, cap=len(g)
    )
    assert len(permgroup.orbits(monodromy)) == 1, "coset action is transitive"

    normalizer = permgroup.normalizer(g, h)
    deck_perms = {
        Permutation(tuple(coset_of[x * reps[i]] for i in range(degree)))
        for x in normalizer.element_list
    }
    assert len(deck_perms) == len(normalizer) // len(h)
    deck = permgroup.group_from_elements(degree, deck_perms)

    return CoverDescriptor(
        base_label=base_label,
        total_points=labels,
        monodromy=monodromy,
        degree=degree,
        deck_group=deck,
        galois=permgroup.is_normal(h, g),
    )


def galois_closure(c: CoverDescriptor) -> CoverDescriptor:
    """The minimal Galois cover dominating ``c``.

    A Galois cover is returned unchanged (so the operation is exactly
    idempotent).  Otherwise the closure is the regular action of the
    monodromy image: the kernel of the sheet action is already gone from
    the image, so acting on itself is the coset action on the core of the
    defining subgroup.  Sheets are labeled m0, m1, ...
    """
    if c.galois:
        return c
    group = c.monodromy
    elements = group.element_list
    index = {p: i for i, p in enumerate(elements)}
    size = len(elements)
    labels = tuple(f"m{i}" for i in range(size))
    monodromy_gens = tuple(
        Permutation(tuple(index[elements[i] * gen] for i in range(size)))
        for gen in group.generators
    )
    monodromy = permgroup.generate(
        monodromy_gens, domain_size=size, cap=size
    )
    deck_perms = {
        Permutation(tuple(index[x * elements[i]] for i in range(size)))
        for x in elements
    }
    deck = permgroup.group_from_elements(size, deck_perms)
    assert len(deck) == size
    return CoverDescriptor(
        base_label=c.base_label,
        total_points=labels,
        monodromy=monodromy,
        degree=size,
        deck_group=deck,
        galois=True,
        ramification_labels=c.ramification_labels,
    )


def cover_isomorphic(a: CoverDescriptor, b: CoverDescriptor) -> bool:
    """Equivalence of two covers with transitive, generator-aligned monodromy.

    The monodromy groups must list their generators in parallel (images of
    the same abstract generators, as happens for covers built from the same
    source group); the test searches for a sheet bijection intertwining the
    two generator actions, which by transitivity is determined by the image
    of one sheet.
    """
    if a.base_label != b.base_label or a.degree != b.degree:
        return False
    ga, gb = a.monodromy.generators, b.monodromy.generators
    if len(ga) != len(gb):
        return False
    size = len(a.total_points)
    if size != len(b.total_points):
        return False
    for start in range(size):
        phi = {0: start}
        stack = [0]
        consistent = True
        while stack and consistent:
            x = stack.pop()
            for pa, pb in zip(ga, gb):
                y, fy = pa(x), pb(phi[x])
                if y in phi:
                    if phi[y] != fy:
                        consistent = False
                        break
                else:
                    phi[y] = fy
                    stack.append(y)
        if (consistent and len(phi) == size
                and len(set(phi.values())) == size):
            return True
    return False


@dataclass(frozen=True)
class WreathModel:
    """The group of Q-decorated coordinate permutations, acting faithfully.

    The domain is all n-tuples over Q (index sum of t_i |Q|^(n-1-i))
    followed by n position markers; a vector acts on tuples by slotwise
    left multiplication and fixes the markers, while a coordinate
    permutation rearranges tuple slots and moves the markers.  The markers
    keep the action faithful even for |Q| = 1, so the order is always
    |Q|^n * n!.
    """

    q_table: GroupTable
    n: int
    wreath: Group
    transposition_lifts: tuple[Permutation, ...]

    @property
    def tuple_count(self) -> int:
        return self.q_table.order ** self.n


def _tuple_index(values, q: int) -> int:
    index = 0
    for v in values:
        index = index * q + v
    return index


def _vector_permutation(vector, q_table: GroupTable, n: int) -> Permutation:
    """Pure slotwise left multiplication by ``vector``, markers fixed."""
    q = q_table.order
    images = []
    for t in itertools.product(range(q), repeat=n):
        moved = tuple(q_table.mul(vector[i], t[i]) for i in range(n))
        images.append(_tuple_index(moved, q))
    images.extend(q ** n + i for i in range(n))
    return Permutation(tuple(images))


def wreath_model(q_table: GroupTable, n: int, *,
                 cap: int = DEFAULT_ELEMENT_CAP) -> WreathModel:
    """Build the decorated-permutation group with its transposition lifts."""
    if n < 2:
        raise ValueError("need at least two coordinates")
    q = q_table.order
    qpow = q ** n
    dom = qpow + n

    lifts = []
    for i in range(n - 1):
        images = []
        for t in itertools.product(range(q), repeat=n):
            u = list(t)
            u[i], u[i + 1] = u[i + 1], u[i]
            images.append(_tuple_index(u, q))
        block = list(range(qpow, qpow + n))
        block[i], block[i + 1] = block[i + 1], block[i]
        images.extend(block)
        lifts.append(Permutation(tuple(images)))

    vector_gens = []
    identity = q_table.identity
    for a in q_table.small_generating_set():
        vector = [identity] * n
        vector[0] = a
        vector_gens.append(_vector_permutation(vector, q_table, n))

    wreath = permgroup.generate(
        tuple(vector_gens) + tuple(lifts), domain_size=dom, cap=cap
    )
    assert len(wreath) == qpow * math.factorial(n), \
        "decorated permutation group has the wrong order"
    return WreathModel(q_table, n, wreath, tuple(lifts))


@dataclass(frozen=True)
class WreathCheckReport:
    """Outcome of the punctured-symmetric-power fundamental-group check.

    ``lift_closure_order`` is the order of the normal closure N of the
    transposition lifts; ``k_vector_closure_order`` is the order of the
    normal closure of the twisted-difference vectors alone (the two
    candidate kernels — both are reported, and the quotient conclusion is
    verified for N).
    """

    q_order: int
    n: int
    wreath_order: int
    lift_closure_order: int
    k_vector_closure_order: int
    k_vectors_in_closure: bool
    quotient_abelian: bool
    quotient_invariants: tuple[int, ...]
    q_abelianized: tuple[int, ...]
    composition_homomorphism: bool
    composition_kernel_is_closure: bool

    @property
    def ok(self) -> bool:
        return (
            self.k_vectors_in_closure
            and self.quotient_abelian
            and self.quotient_invariants == self.q_abelianized
            and self.composition_homomorphism
            and self.composition_kernel_is_closure
            and self.wreath_order
            == self.lift_closure_order * _order_of_invariants(self.q_abelianized)
        )


def _order_of_invariants(invariants) -> int:
    out = 1
    for d in invariants:
        out *= d
    return out


def wreath_quotient_check(q_table: GroupTable, n: int, *,
                          cap: int = DEFAULT_ELEMENT_CAP) -> WreathCheckReport:
    """Verify that killing the transposition lifts leaves exactly Q-abelian.

    Builds the decorated-permutation group W of order |Q|^n n!, takes the
    normal closure N of the transposition lifts, and checks by exhaustion:

    * every twisted-difference vector (the slotwise products
      g_{p(i)}^-1 g_i over all coordinate permutations p and tuples g)
      lies in N;
    * W / N is abelian with invariant factors equal to those of the
      abelianization of Q;
    * the slot-composition map w -> product of the components of the
      vector part of w, taken modulo commutators of Q, is a homomorphism
      (checked on generator-times-element pairs, which extends to all
      products by induction) whose kernel is exactly N.
    """
    model = wreath_model(q_table, n, cap=cap)
    W = model.wreath
    q = q_table.order
    qpow = q ** n

    N = permgroup.normal_closure(W, model.transposition_lifts, cap=cap)

    inverse = q_table.inv
    mul = q_table.mul
    k_vectors = set()
    for p in itertools.permutations(range(n)):
        p_inverse = [0] * n
        for i, pi in enumerate(p):
            p_inverse[pi] = i
        for g in itertools.product(range(q), repeat=n):
            k_vectors.add(tuple(
                mul(inverse(g[p_inverse[i]]), g[i]) for i in range(n)
            ))
    k_perms = {
        _vector_permutation(v, q_table, n) for v in k_vectors
    }
    k_in_closure = all(perm in N.elements for perm in k_perms)
    nontrivial = [p for p in k_perms if not p.is_identity]
    if nontrivial:
        k_closure = permgroup.normal_closure(W, nontrivial, cap=cap)
        k_closure_order = len(k_closure)
    else:
        k_closure_order = 1

    quotient, _, _ = permgroup.quotient_table(W, N)
    quotient_abelian = quotient.is_abelian
    quotient_invariants = (
        quotient.abelian_invariants() if quotient_abelian else ()
    )

    commutator = q_table.commutator_subgroup()
    qab_table, class_of = q_table.quotient_by(commutator)
    qab = qab_table.abelian_invariants()

    identity_tuple_index = _tuple_index([q_table.identity] * n, q)

    def compose(w: Permutation) -> int:
        t = w.images[identity_tuple_index]
        digits = []
        for _ in range(n):
            digits.append(t % q)
            t //= q
        digits.reverse()
        product = q_table.identity
        for value in digits:
            product = mul(product, value)
        return class_of[product]

    phi = {w: compose(w) for w in W}
    hom_ok = all(
        phi[gen * w] == qab_table.mul(phi[gen], phi[w])
        for gen in W.generators for w in W
    )
    qab_identity = qab_table.identity
    kernel = {w for w, value in phi.items() if value == qab_identity}
    kernel_is_n = kernel == N.elements
    image_full = len(set(phi.values())) == qab_table.order

    return WreathCheckReport(
        q_order=q,
        n=n,
        wreath_order=len(W),
        lift_closure_order=len(N),
        k_vector_closure_order=k_closure_order,
        k_vectors_in_closure=k_in_closure,
        quotient_abelian=quotient_abelian,
        quotient_invariants=quotient_invariants,
        q_abelianized=qab,
        composition_homomorphism=hom_ok and image_full,
        composition_kernel_is_closure=kernel_is_n,
    )


CLASSIFY_BASE = ("a", "b")


def classify_hilb_covers(s: SurfaceDescriptor, *,
                         cap: int = DEFAULT_ELEMENT_CAP) -> tuple[CoverDescriptor, ...]:
    """All covers of the Hilbert square of ``s``, one per subgroup upstairs.

    The fundamental group of the Hilbert square is the abelianization of
    the smooth part's fundamental group; each of its subgroups induces a
    Galois cover with abelian deck group, realized explicitly through the
    squared construction over a fixed two-point base model.  Results are
    ordered by degree, then by the defining subgroup.  Raises
    :class:`InfiniteAbelianization` when the abelianization has positive
    free rank.
    """
    invariants = abelianization(s.pi1_smooth)
    if invariants.rank > 0:
        raise InfiniteAbelianization(
            f"the abelianized fundamental group has free rank "
            f"{invariants.rank}; only finite groups classify here"
        )
    subs = sorted(
        subgroups_of_abelian(invariants),
        key=lambda sub: (sub.index, sub.elements),
    )
    out = []
    for sub in subs:
        deck_table = abelian_table(sub.quotient.torsion)
        gset = free_gset(deck_table, CLASSIFY_BASE)
        action = permgroup.generate(
            tuple(gset.translation(g) for g in deck_table.small_generating_set()),
            domain_size=gset.size,
            cap=cap,
        )
        assert len(action) == deck_table.order
        surface_cover = CoverDescriptor(
            base_label=s.name,
            total_points=gset.labels,
            monodromy=action,
            degree=deck_table.order,
            deck_group=action,
            galois=True,
        )
        hilb = hilb_square_cover(surface_cover, cap=cap)
        out.append(quasietale_correspondence(s, hilb))
    return tuple(out)


def quasietale_correspondence(s: SurfaceDescriptor,
                              c: CoverDescriptor) -> CoverDescriptor:
    """Transport a cover that is unramified over the smooth part to the
    possibly-singular total surface.

    The monodromy data is untouched; the only change is bookkeeping — a
    nontrivial cover acquires the singular-point labels as its allowed
    branch locus, while degree-1 covers and covers of smooth surfaces pass
    through unchanged.  Inverse direction: :func:`remove_base_labels` with
    the same labels.
    """
    if s.is_smooth or c.degree == 1:
        return c
    return replace(c, ramification_labels=frozenset(s.singular_labels))


def remove_base_labels(c: CoverDescriptor, labels) -> CoverDescriptor:
    """Restrict a cover away from the given base labels.

    In this bookkeeping model restriction only shrinks the allowed branch
    locus: an unramified cover stays unramified, and one ramified at a
    surviving label stays ramified there.
    """
    return replace(
        c, ramification_labels=c.ramification_labels - frozenset(labels)
    )
