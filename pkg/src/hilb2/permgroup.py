"""Exact finite permutation-group engine.

Everything here is computed by exhaustive enumeration: groups are closed
under composition element by element (with a hard cap), subgroup lattices
are found by repeatedly extending known subgroups by single elements, and
normality questions are settled by conjugating with every group element.
No stabilizer chains, no randomness: at the scales this package works with
(a few thousand elements at most) full enumeration keeps every answer
independently auditable and bit-for-bit reproducible.

All objects are immutable after construction, so they can be shared freely
across threads and used as dictionary keys.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from math import lcm

from .errors import CapExceeded, DomainMismatch, NotASubgroup
from .tables import GroupTable

DEFAULT_ELEMENT_CAP = 20000
DEFAULT_SUBGROUP_CAP = 512


@dataclass(frozen=True, order=True)
class Permutation:
    """A bijection of {0, ..., n-1} stored as its tuple of images."""

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        n = len(self.images)
        if len(set(self.images)) != n or any(not 0 <= v < n for v in self.images):
            raise ValueError(f"not a bijection of 0..{n - 1}: {self.images!r}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return _raw(tuple(range(n)))

    @classmethod
    def from_cycles(cls, n: int, cycles) -> "Permutation":
        """Build a permutation of {0..n-1} from disjoint cycles."""
        images = list(range(n))
        for cycle in cycles:
            for i, x in enumerate(cycle):
                images[x] = cycle[(i + 1) % len(cycle)]
        return cls(tuple(images))

    @property
    def domain_size(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: "Permutation") -> "Permutation":
        """Composition: ``(p * q)(x) = p(q(x))``, i.e. apply ``q`` first."""
        if len(self.images) != len(other.images):
            raise DomainMismatch(
                f"cannot compose permutations of sizes "
                f"{len(self.images)} and {len(other.images)}"
            )
        p = self.images
        return _raw(tuple(p[v] for v in other.images))

    def inverse(self) -> "Permutation":
        images = [0] * len(self.images)
        for x, y in enumerate(self.images):
            images[y] = x
        return _raw(tuple(images))

    @property
    def is_identity(self) -> bool:
        return all(v == x for x, v in enumerate(self.images))

    def cycles(self) -> tuple[tuple[int, ...], ...]:
        """Nontrivial cycles, each rotated to start at its smallest point."""
        seen = [False] * len(self.images)
        out = []
        for start in range(len(self.images)):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                seen[x] = True
                cycle.append(x)
                x = self.images[x]
            if len(cycle) > 1:
                out.append(tuple(cycle))
        return tuple(out)

    def order(self) -> int:
        return lcm(1, *(len(c) for c in self.cycles()))


def _raw(images: tuple[int, ...]) -> Permutation:
    """Wrap an images tuple already known to be a bijection.

    Skips the constructor's validation; only for internal use where the
    tuple comes from composing or inverting validated permutations.
    """
    p = object.__new__(Permutation)
    object.__setattr__(p, "images", images)
    return p


@dataclass(frozen=True, eq=False)
class Group:
    """A fully enumerated permutation group on a fixed domain.

    ``element_list`` is sorted by image tuple, which fixes a canonical
    element order used for every deterministic construction downstream.
    """

    domain_size: int
    generators: tuple[Permutation, ...]
    element_list: tuple[Permutation, ...]
    elements: frozenset[Permutation] = field(repr=False)

    @classmethod
    def trivial(cls, domain_size: int) -> "Group":
        ident = Permutation.identity(domain_size)
        return cls(domain_size, (), (ident,), frozenset({ident}))

    @property
    def order(self) -> int:
        return len(self.element_list)

    @property
    def identity(self) -> Permutation:
        return Permutation.identity(self.domain_size)

    def __contains__(self, p: Permutation) -> bool:
        return p in self.elements

    def __iter__(self):
        return iter(self.element_list)

    def __len__(self) -> int:
        return len(self.element_list)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Group):
            return NotImplemented
        return (
            self.domain_size == other.domain_size and self.elements == other.elements
        )

    def __hash__(self) -> int:
        return hash((self.domain_size, self.elements))

    def __repr__(self) -> str:
        return f"Group(domain_size={self.domain_size}, order={self.order})"

    def is_abelian(self) -> bool:
        gens = self.generators or self.element_list
        return all(a * b == b * a for a in gens for b in gens)

    def is_subgroup_of(self, other: "Group") -> bool:
        return (
            self.domain_size == other.domain_size
            and self.elements <= other.elements
        )


def generate(gens, *, domain_size: int | None = None,
             cap: int = DEFAULT_ELEMENT_CAP) -> Group:
    """Close a set of permutations under composition.

    The closure is a breadth-first walk over products, so it visits exactly
    the generated group; inverses appear automatically because every
    element of a finite group is a positive power of itself.  Raises
    :class:`CapExceeded` as soon as the closure would pass ``cap`` elements.
    """
    gens = sorted(set(gens))
    if domain_size is None:
        if not gens:
            raise DomainMismatch("an empty generating set needs an explicit domain_size")
        domain_size = gens[0].domain_size
    for g in gens:
        if g.domain_size != domain_size:
            raise DomainMismatch(
                f"generator on {g.domain_size} points does not act on "
                f"{domain_size} points"
            )
    ident = Permutation.identity(domain_size)
    elements = {ident}
    frontier = deque([ident])
    while frontier:
        x = frontier.popleft()
        for g in gens:
            y = x * g
            if y not in elements:
                if len(elements) >= cap:
                    raise CapExceeded(
                        f"group closure exceeded cap of {cap} elements"
                    )
                elements.add(y)
                frontier.append(y)
    return Group(
        domain_size=domain_size,
        generators=tuple(g for g in gens if not g.is_identity) or (),
        element_list=tuple(sorted(elements)),
        elements=frozenset(elements),
    )


def group_from_elements(domain_size: int, elements) -> Group:
    """Wrap an already-closed element set as a :class:`Group`.

    The caller promises closure; a small generating set is extracted so the
    result behaves like any generated group.
    """
    element_set = frozenset(elements)
    gens = small_generating_set(sorted(element_set), domain_size)
    return Group(
        domain_size=domain_size,
        generators=tuple(gens),
        element_list=tuple(sorted(element_set)),
        elements=element_set,
    )


def small_generating_set(element_list, domain_size: int) -> tuple[Permutation, ...]:
    """Greedy small generating set for a closed element list."""
    gens: list[Permutation] = []
    sub = {Permutation.identity(domain_size)}
    for x in element_list:
        if x not in sub:
            gens.append(x)
            sub = generate(gens, domain_size=domain_size,
                           cap=max(len(element_list), 1)).elements
    return tuple(gens)


def orbits(group: Group, points=None) -> tuple[tuple, ...]:
    """Partition of ``points`` into orbits of the group action.

    ``points`` is an indexed set of labels, one per domain point (position
    ``i`` labels domain point ``i``); it defaults to the indices themselves.
    Blocks are ordered by their smallest domain index.
    """
    n = group.domain_size
    if points is None:
        points = tuple(range(n))
    else:
        points = tuple(points)
    if len(points) != n:
        raise DomainMismatch(
            f"expected {n} point labels, got {len(points)}"
        )
    seen = [False] * n
    blocks = []
    for start in range(n):
        if seen[start]:
            continue
        seen[start] = True
        block = [start]
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for g in group.generators:
                y = g(x)
                if not seen[y]:
                    seen[y] = True
                    block.append(y)
                    queue.append(y)
        blocks.append(tuple(points[i] for i in sorted(block)))
    return tuple(blocks)


def _require_subgroup(sub: Group, group: Group) -> None:
    if sub.domain_size != group.domain_size:
        raise DomainMismatch(
            f"subgroup domain {sub.domain_size} differs from group domain "
            f"{group.domain_size}"
        )
    if not sub.elements <= group.elements:
        raise NotASubgroup("the given group does not contain the claimed subgroup")


def normal_closure(group: Group, seed, *, cap: int = DEFAULT_ELEMENT_CAP) -> Group:
    """Smallest normal subgroup of ``group`` containing every seed element.

    Alternates closing under composition with conjugating the current
    generating set by the group generators, until conjugation adds nothing.
    Conjugating generators suffices: conjugation is an automorphism, so a
    subgroup whose generators are conjugation-stable is itself stable.
    """
    seed = sorted(set(seed))
    for s in seed:
        if s not in group:
            raise NotASubgroup("seed element does not lie in the group")
    closure_gens = [s for s in seed if not s.is_identity]
    if not closure_gens:
        return Group.trivial(group.domain_size)
    current = generate(closure_gens, domain_size=group.domain_size, cap=cap)
    inverses = [(a, a.inverse()) for a in group.generators]
    while True:
        new = []
        for s in closure_gens:
            for a, ainv in inverses:
                c = a * s * ainv
                if c not in current and c not in new:
                    new.append(c)
        if not new:
            return current
        closure_gens.extend(new)
        current = generate(closure_gens, domain_size=group.domain_size, cap=cap)


def is_normal(sub: Group, group: Group) -> bool:
    """True iff conjugation by every group element maps ``sub`` onto itself."""
    _require_subgroup(sub, group)
    hgens = sub.generators or sub.element_list
    for a in group.element_list:
        ainv = a.inverse()
        if any(a * h * ainv not in sub.elements for h in hgens):
            return False
    return True


def core(group: Group, sub: Group) -> Group:
    """Largest normal subgroup of ``group`` contained in ``sub``.

    Computed literally as the intersection of all conjugates of ``sub``.
    """
    _require_subgroup(sub, group)
    members = set(sub.elements)
    for a in group.element_list:
        if len(members) == 1:
            break
        ainv = a.inverse()
        members &= {a * h * ainv for h in sub.element_list}
    return group_from_elements(group.domain_size, members)


def normalizer(group: Group, sub: Group) -> Group:
    """Elements of ``group`` whose conjugation maps ``sub`` onto itself."""
    _require_subgroup(sub, group)
    hgens = sub.generators or sub.element_list
    members = []
    for a in group.element_list:
        ainv = a.inverse()
        if all(a * h * ainv in sub.elements for h in hgens):
            members.append(a)
    return group_from_elements(group.domain_size, members)


def subgroups(group: Group, *, cap: int = DEFAULT_SUBGROUP_CAP) -> tuple[Group, ...]:
    """All subgroups, by breadth-first single-element extension.

    Starting from the trivial subgroup, every known subgroup is extended by
    each outside element and the extension closed; any subgroup is reachable
    this way because a proper subgroup of it extended by one of its missing
    elements stays inside it.  Only groups of order at most ``cap`` are
    accepted.
    """
    if group.order > cap:
        raise CapExceeded(
            f"subgroup enumeration is capped at order {cap}; group has order "
            f"{group.order}"
        )
    n = group.domain_size
    ident = Permutation.identity(n)
    trivial = frozenset({ident})
    found: dict[frozenset, tuple[Permutation, ...]] = {trivial: ()}
    queue = deque([trivial])
    while queue:
        current = queue.popleft()
        gens = found[current]
        for x in group.element_list:
            if x in current:
                continue
            ext_gens = gens + (x,)
            ext = generate(ext_gens, domain_size=n, cap=group.order).elements
            if ext not in found:
                found[ext] = ext_gens
                queue.append(ext)
    groups = [
        Group(n, tuple(g for g in gens if not g.is_identity),
              tuple(sorted(els)), els)
        for els, gens in found.items()
    ]
    groups.sort(key=lambda g: (g.order, g.element_list))
    return tuple(groups)


def commutator_subgroup(group: Group) -> Group:
    """Subgroup generated by all commutators, by brute force over pairs.

    The full set of commutators is closed under conjugation, so its plain
    closure is already normal; no extra normal closure step is needed.
    """
    comms = set()
    inverses = {a: a.inverse() for a in group.element_list}
    for a in group.element_list:
        for b in group.element_list:
            comms.add(a * b * inverses[a] * inverses[b])
    comms.discard(group.identity)
    if not comms:
        return Group.trivial(group.domain_size)
    closure = generate(
        sorted(comms), domain_size=group.domain_size, cap=group.order
    )
    return group_from_elements(group.domain_size, closure.elements)


def quotient_table(group: Group, normal_sub: Group) -> tuple[GroupTable, dict, tuple]:
    """Multiplication table of ``group / normal_sub``.

    Returns the table, the element-to-coset-index map, and the coset
    representatives (smallest element of each coset in canonical order).
    """
    _require_subgroup(normal_sub, group)
    if not is_normal(normal_sub, group):
        raise NotASubgroup("quotients need a normal subgroup")
    reps: list[Permutation] = []
    coset_of: dict[Permutation, int] = {}
    for e in group.element_list:
        if e in coset_of:
            continue
        k = len(reps)
        reps.append(e)
        for m in normal_sub.element_list:
            coset_of[e * m] = k
    size = len(reps)
    rows = tuple(
        tuple(coset_of[reps[i] * reps[j]] for j in range(size))
        for i in range(size)
    )
    return GroupTable(rows), coset_of, tuple(reps)


def abelian_invariants(group: Group) -> tuple[int, ...]:
    """Invariant factors of a finite abelian permutation group."""
    table, _, _ = quotient_table(group, Group.trivial(group.domain_size))
    return table.abelian_invariants()
