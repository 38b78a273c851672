"""Finitely presented groups made effective.

Three ingredients, all exact over the integers:

* a parser for presentation strings ``< a b | a^2, b^3, a b a b >``;
* abelianization through Smith normal form of the relator exponent matrix,
  with a deterministic smallest-pivot reduction over arbitrary-precision
  integers;
* coset enumeration (relator-tracing style with immediate coincidence
  handling and a hard coset cap) that turns a finite-index subgroup into a
  concrete permutation action on its cosets.

Together these let the rest of the package move between presentations,
abelian invariants and honest permutation groups.
"""
from __future__ import annotations

from dataclasses import dataclass
import itertools
from math import prod

from . import permgroup
from .errors import (
    CapExceeded,
    IncompleteTable,
    InfiniteGroup,
    PresentationSyntaxError,
    UnknownGenerator,
)
from .permgroup import Group, Permutation

DEFAULT_COSET_CAP = 100000

_NAME_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ_")
_NAME_BODY = _NAME_START | set("0123456789")


@dataclass(frozen=True)
class Presentation:
    """A group presentation: generator names plus relator words.

    Words are tuples of nonzero letters: letter ``+(i+1)`` is generator
    ``i`` and ``-(i+1)`` its inverse.
    """

    generator_names: tuple[str, ...]
    relators: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        n = len(self.generator_names)
        if len(set(self.generator_names)) != n:
            raise ValueError("duplicate generator names")
        for word in self.relators:
            for letter in word:
                if letter == 0 or abs(letter) > n:
                    raise ValueError(f"letter {letter} is out of range")

    @property
    def rank(self) -> int:
        return len(self.generator_names)

    def word_to_string(self, word) -> str:
        parts = []
        for letter, run in itertools.groupby(word):
            k = len(list(run)) * (1 if letter > 0 else -1)
            name = self.generator_names[abs(letter) - 1]
            parts.append(name if k == 1 else f"{name}^{k}")
        return " ".join(parts) if parts else "1"

    def __str__(self) -> str:
        gens = " ".join(self.generator_names)
        rels = ", ".join(self.word_to_string(w) for w in self.relators)
        return f"< {gens} | {rels} >"


@dataclass(frozen=True)
class AbelianInvariants:
    """Free rank plus invariant torsion factors d1 | d2 | ... (each >= 2)."""

    rank: int
    torsion: tuple[int, ...]

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError("negative free rank")
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion factors are at least 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a != 0:
                raise ValueError(
                    f"invariant factors must divide in turn: {self.torsion}"
                )

    @property
    def is_finite(self) -> bool:
        return self.rank == 0

    @property
    def order(self) -> int:
        if not self.is_finite:
            raise InfiniteGroup("infinite abelian group has no order")
        return prod(self.torsion) if self.torsion else 1


@dataclass(frozen=True)
class CosetTable:
    """A complete coset table for a subgroup of a presented group.

    ``rows[c]`` lists, for coset ``c``, the targets under every letter:
    column ``2*i`` is generator ``i`` and column ``2*i + 1`` its inverse.
    """

    presentation: Presentation
    subgroup_words: tuple[tuple[int, ...], ...]
    rows: tuple[tuple[int, ...], ...]

    @property
    def index(self) -> int:
        return len(self.rows)

    def step(self, coset: int, letter: int) -> int:
        """Apply one signed generator letter to a coset index."""
        if letter > 0:
            return self.rows[coset][2 * (letter - 1)]
        return self.rows[coset][2 * (-letter - 1) + 1]

    def trace(self, coset: int, word) -> int:
        for letter in word:
            coset = self.step(coset, letter)
        return coset


class _Parser:
    """Recursive-descent parser for the presentation grammar.

    Whitespace is ignored everywhere.  Inside words, generator names are
    matched greedily against the declared names, so ``abab`` and
    ``a b a b`` read the same.
    """

    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def error(self, message: str) -> PresentationSyntaxError:
        return PresentationSyntaxError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def expect(self, ch: str) -> None:
        if self.peek() != ch:
            raise self.error(f"expected {ch!r}")
        self.pos += 1

    def read_name(self) -> str:
        self.skip_ws()
        start = self.pos
        if self.pos >= len(self.text) or self.text[self.pos] not in _NAME_START:
            raise self.error("expected a generator name")
        while self.pos < len(self.text) and self.text[self.pos] in _NAME_BODY:
            self.pos += 1
        return self.text[start:self.pos]

    def read_int(self) -> int:
        self.skip_ws()
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        digits = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == digits:
            self.pos = start
            raise self.error("expected an integer exponent")
        return int(self.text[start:self.pos])

    def match_generator(self, names: tuple[str, ...]) -> int:
        """Longest declared name starting at the cursor, or raise."""
        self.skip_ws()
        best = None
        for i, name in enumerate(names):
            if self.text.startswith(name, self.pos):
                if best is None or len(name) > len(names[best]):
                    best = i
        if best is None:
            if self.pos < len(self.text) and self.text[self.pos] in _NAME_START:
                position = self.pos
                raise UnknownGenerator(self.read_name(), position)
            raise self.error("expected a generator name")
        self.pos += len(names[best])
        return best

    def read_word(self, names: tuple[str, ...]) -> tuple[int, ...]:
        letters: list[int] = []
        while self.peek() not in (",", ">", ""):
            index = self.match_generator(names)
            exponent = 1
            if self.peek() == "^":
                self.pos += 1
                exponent = self.read_int()
            letter = index + 1 if exponent >= 0 else -(index + 1)
            letters.extend([letter] * abs(exponent))
        if not letters:
            raise self.error("empty word")
        return tuple(letters)

    def parse(self) -> Presentation:
        self.expect("<")
        names: list[str] = []
        while self.peek() not in ("|", ""):
            name = self.read_name()
            if name in names:
                raise self.error(f"duplicate generator {name!r}")
            names.append(name)
        self.expect("|")
        names_t = tuple(names)
        relators: list[tuple[int, ...]] = []
        if self.peek() != ">":
            relators.append(self.read_word(names_t))
            while self.peek() == ",":
                self.pos += 1
                relators.append(self.read_word(names_t))
        self.expect(">")
        self.skip_ws()
        if self.pos != len(self.text):
            raise self.error("trailing input after '>'")
        return Presentation(names_t, tuple(relators))


def parse_presentation(text: str) -> Presentation:
    """Parse ``< g1 g2 ... | w1, w2, ... >`` into a :class:`Presentation`."""
    return _Parser(text).parse()


def parse_word(presentation: Presentation, text: str) -> tuple[int, ...]:
    """Parse a single word in the generators of an existing presentation."""
    parser = _Parser(text)
    word = parser.read_word(presentation.generator_names)
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error("trailing input after word")
    return word


def smith_invariant_factors(matrix) -> tuple[int, ...]:
    """Diagonal of the Smith normal form of an integer matrix.

    Deterministic reduction: at each step the entry of smallest nonzero
    absolute value (ties broken by position) becomes the pivot, rows and
    columns are reduced against it, and once the matrix is diagonal the
    divisibility chain is enforced with gcd/lcm fix-ups.  Exact integer
    arithmetic throughout.  Returns ``min(rows, cols)`` nonnegative entries,
    zeros included.
    """
    m = [list(map(int, row)) for row in matrix]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    if any(len(row) != ncols for row in m):
        raise ValueError("ragged matrix")
    size = min(nrows, ncols)
    diag = []
    top = 0
    while top < size:
        pivot = None
        for i in range(top, nrows):
            for j in range(top, ncols):
                v = abs(m[i][j])
                if v and (pivot is None or v < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        i, j = pivot
        m[top], m[i] = m[i], m[top]
        for row in m:
            row[top], row[j] = row[j], row[top]
        while True:
            p = m[top][top]
            dirty = False
            for i in range(top + 1, nrows):
                q = m[i][top] // p
                if q:
                    for j in range(top, ncols):
                        m[i][j] -= q * m[top][j]
                if m[i][top]:
                    m[top], m[i] = m[i], m[top]
                    dirty = True
                    break
            if dirty:
                continue
            for j in range(top + 1, ncols):
                q = m[top][j] // p
                if q:
                    for i in range(top, nrows):
                        m[i][j] -= q * m[i][top]
                if m[top][j]:
                    for i in range(nrows):
                        m[i][top], m[i][j] = m[i][j], m[i][top]
                    dirty = True
                    break
            if not dirty:
                break
        diag.append(abs(m[top][top]))
        top += 1
    diag.extend([0] * (size - len(diag)))
    # Enforce d1 | d2 | ... with the standard gcd/lcm exchange.
    for i in range(len(diag)):
        for j in range(i + 1, len(diag)):
            a, b = diag[i], diag[j]
            if a and b and b % a != 0:
                from math import gcd
                g = gcd(a, b)
                diag[i], diag[j] = g, a * b // g
            elif a == 0 and b != 0:
                diag[i], diag[j] = b, 0
    return tuple(diag)


def abelianization(presentation: Presentation) -> AbelianInvariants:
    """Abelian invariants from the relator exponent-sum matrix."""
    n = presentation.rank
    rows = []
    for word in presentation.relators:
        row = [0] * n
        for letter in word:
            row[abs(letter) - 1] += 1 if letter > 0 else -1
        rows.append(row)
    if not rows or n == 0:
        return AbelianInvariants(rank=n, torsion=())
    diag = smith_invariant_factors(rows)
    nonzero = [d for d in diag if d != 0]
    return AbelianInvariants(
        rank=n - len(nonzero),
        torsion=tuple(d for d in nonzero if d > 1),
    )


class _Enumerator:
    """Coset enumeration by relator tracing.

    Scans every relator at every live coset, defining new cosets whenever a
    scan stalls and processing coincidences immediately through a union-find
    merge queue.  A hard cap bounds the total number of cosets ever defined.
    """

    def __init__(self, presentation: Presentation, subgroup_words, cap: int):
        self.nletters = 2 * presentation.rank
        self.relators = [self._letters(w) for w in presentation.relators]
        self.subgroup_words = [self._letters(w) for w in subgroup_words]
        self.cap = cap
        self.table: list[list[int | None]] = [[None] * self.nletters]
        self.parent = [0]

    @staticmethod
    def _letters(word) -> tuple[int, ...]:
        return tuple(
            2 * (letter - 1) if letter > 0 else 2 * (-letter - 1) + 1
            for letter in word
        )

    @staticmethod
    def _inv(letter: int) -> int:
        return letter ^ 1

    def rep(self, k: int) -> int:
        while self.parent[k] != k:
            self.parent[k] = self.parent[self.parent[k]]
            k = self.parent[k]
        return k

    def define(self, alpha: int, letter: int) -> int:
        if len(self.table) >= self.cap:
            raise CapExceeded(
                f"coset enumeration exceeded cap of {self.cap} cosets"
            )
        beta = len(self.table)
        self.table.append([None] * self.nletters)
        self.parent.append(beta)
        self.table[alpha][letter] = beta
        self.table[beta][self._inv(letter)] = alpha
        return beta

    def _merge(self, queue: list, a: int, b: int) -> None:
        a, b = self.rep(a), self.rep(b)
        if a != b:
            a, b = min(a, b), max(a, b)
            self.parent[b] = a
            queue.append(b)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(queue, a, b)
        i = 0
        while i < len(queue):
            gamma = queue[i]
            i += 1
            for letter in range(self.nletters):
                delta = self.table[gamma][letter]
                if delta is None:
                    continue
                self.table[delta][self._inv(letter)] = None
                mu, nu = self.rep(gamma), self.rep(delta)
                existing = self.table[mu][letter]
                if existing is not None:
                    self._merge(queue, nu, existing)
                else:
                    back = self.table[nu][self._inv(letter)]
                    if back is not None:
                        self._merge(queue, mu, back)
                    else:
                        self.table[mu][letter] = nu
                        self.table[nu][self._inv(letter)] = mu

    def scan_and_fill(self, alpha: int, word) -> None:
        f, b = alpha, alpha
        i, j = 0, len(word) - 1
        while True:
            while i <= j and self.table[f][word[i]] is not None:
                f = self.table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and self.table[b][self._inv(word[j])] is not None:
                b = self.table[b][self._inv(word[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if j == i:
                self.table[f][word[i]] = b
                self.table[b][self._inv(word[i])] = f
                return
            f = self.define(f, word[i])
            i += 1

    def _snapshot(self) -> tuple[int, int, int]:
        live = [k for k in range(len(self.table)) if self.rep(k) == k]
        holes = sum(
            1 for k in live for v in self.table[k] if v is None
        )
        return len(self.table), len(live), holes

    def run(self) -> list[list[int]]:
        for word in self.subgroup_words:
            self.scan_and_fill(0, word)
        # Sweep until a whole pass neither defines, merges, nor fills
        # anything.  A late coincidence can reopen entries in rows that
        # were already processed, so one pass is not always enough.
        while True:
            before = self._snapshot()
            alpha = 0
            while alpha < len(self.table):
                if self.rep(alpha) == alpha:
                    for word in self.relators:
                        if self.rep(alpha) != alpha:
                            break
                        self.scan_and_fill(alpha, word)
                    if self.rep(alpha) == alpha:
                        for letter in range(self.nletters):
                            if self.table[alpha][letter] is None:
                                self.define(alpha, letter)
                alpha += 1
            if self._snapshot() == before:
                break
        live = [k for k in range(len(self.table)) if self.rep(k) == k]
        renumber = {old: new for new, old in enumerate(live)}
        rows = []
        for old in live:
            row = []
            for letter in range(self.nletters):
                target = self.table[old][letter]
                if target is None:
                    raise IncompleteTable("enumeration left an undefined entry")
                row.append(renumber[self.rep(target)])
            rows.append(row)
        return rows


def coset_enumeration(presentation: Presentation, subgroup_words=(),
                      cap: int = DEFAULT_COSET_CAP) -> CosetTable:
    """Enumerate cosets of the subgroup generated by ``subgroup_words``.

    Raises :class:`CapExceeded` if more than ``cap`` cosets get defined,
    which is also the only way an infinite-index enumeration can end.
    The returned table is complete and verified: every relator traces to
    the identity at every coset and every subgroup word fixes coset 0.
    """
    subgroup_words = tuple(tuple(w) for w in subgroup_words)
    rows = _Enumerator(presentation, subgroup_words, cap).run()
    table = CosetTable(presentation, subgroup_words, tuple(map(tuple, rows)))
    for word in subgroup_words:
        assert table.trace(0, word) == 0, "subgroup word moved coset 0"
    for coset in range(table.index):
        for word in presentation.relators:
            assert table.trace(coset, word) == coset, "relator moved a coset"
    return table


def permutation_realization(table: CosetTable, *,
                            cap: int = permgroup.DEFAULT_ELEMENT_CAP) -> Group:
    """The image of the presented group acting on the cosets.

    Generator ``i`` becomes the permutation ``coset -> coset * g_i``.
    """
    n = table.index
    perms = []
    for i in range(table.presentation.rank):
        images = tuple(table.rows[c][2 * i] for c in range(n))
        if len(set(images)) != n:
            raise IncompleteTable(f"generator {i} does not act bijectively")
        perms.append(Permutation(images))
    return permgroup.generate(perms, domain_size=max(n, 1), cap=cap)


@dataclass(frozen=True)
class AbelianSubgroup:
    """A subgroup of a finite abelian group, with its quotient data.

    Elements are exponent vectors relative to the ambient invariant
    factors.  ``quotient`` describes the ambient group modulo this
    subgroup, i.e. the deck group of the cover the subgroup classifies.
    """

    ambient: tuple[int, ...]
    elements: tuple[tuple[int, ...], ...]
    generators: tuple[tuple[int, ...], ...]
    invariants: tuple[int, ...]
    quotient: AbelianInvariants

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return self.quotient.order


def _vector_invariants(elements, moduli) -> tuple[int, ...]:
    """Invariant factors of a subgroup given by its exponent vectors.

    The subgroup carries its own multiplication (componentwise addition
    modulo the ambient factors), so build its table and read the factors
    off the structure theorem.
    """
    ordered = tuple(sorted(elements))
    if len(ordered) == 1:
        return ()
    index_of = {e: i for i, e in enumerate(ordered)}

    def add(u, v):
        return tuple((a + b) % m for a, b, m in zip(u, v, moduli))

    rows = tuple(
        tuple(index_of[add(a, b)] for b in ordered) for a in ordered
    )
    from .tables import GroupTable
    return GroupTable(rows).abelian_invariants()


def subgroups_of_abelian(invariants: AbelianInvariants) -> tuple[AbelianSubgroup, ...]:
    """Every subgroup of a finite abelian group, with quotient invariants.

    The ambient group is realized as exponent vectors modulo the invariant
    factors; subgroups are enumerated by single-element extension exactly
    like the permutation engine does, and each quotient's invariants come
    from the Smith form of the ambient relations stacked over the subgroup
    vectors.  Deterministic order: by subgroup order, then element list.
    """
    if not invariants.is_finite:
        raise InfiniteGroup("subgroup enumeration needs a finite group")
    moduli = invariants.torsion
    k = len(moduli)
    zero = (0,) * k
    all_elements = [tuple(v) for v in itertools.product(*[range(d) for d in moduli])]

    def add(u, v):
        return tuple((a + b) % m for a, b, m in zip(u, v, moduli))

    def closure(gens) -> frozenset:
        members = {zero}
        frontier = [zero]
        while frontier:
            x = frontier.pop()
            for g in gens:
                y = add(x, g)
                if y not in members:
                    members.add(y)
                    frontier.append(y)
        return frozenset(members)

    found: dict[frozenset, tuple] = {frozenset({zero}): ()}
    queue = [frozenset({zero})]
    while queue:
        current = queue.pop()
        gens = found[current]
        for x in all_elements:
            if x in current:
                continue
            ext_gens = gens + (x,)
            ext = closure(ext_gens)
            if ext not in found:
                found[ext] = ext_gens
                queue.append(ext)

    out = []
    for members, gens in found.items():
        ordered = tuple(sorted(members))
        rows = [[moduli[i] if i == j else 0 for j in range(k)] for i in range(k)]
        rows.extend([list(v) for v in ordered])
        if k:
            diag = smith_invariant_factors(rows)
            torsion = tuple(d for d in diag if d > 1)
        else:
            torsion = ()
        quotient = AbelianInvariants(rank=0, torsion=torsion)
        out.append(AbelianSubgroup(
            ambient=moduli,
            elements=ordered,
            generators=gens,
            invariants=_vector_invariants(ordered, moduli),
            quotient=quotient,
        ))
    out.sort(key=lambda s: (s.order, s.elements))
    return tuple(out)
