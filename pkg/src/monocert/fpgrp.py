"""Finitely presented groups, triangle groups and coset enumeration."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .perm import CapacityError, Permutation
from .words import FreeWord, WordParseError, parse_letters

DEFAULT_MAX_COSETS = 10**6


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class Presentation:
    generator_names: tuple[str, ...]
    relators: tuple[FreeWord, ...]

    @property
    def rank(self) -> int:
        return len(self.generator_names)

    def __str__(self) -> str:
        rels = ", ".join(r.format(self.generator_names) for r in self.relators)
        return f"{','.join(self.generator_names)} | {rels}"


def triangle(m: int, n: int, k: int) -> Presentation:
    """``<g0, g1, gi | g0^m, g1^n, gi^k, g0*g1*gi>``."""
    for v in (m, n, k):
        if not isinstance(v, int) or v < 1:
            raise PresentationError(f"triangle parameters must be positive integers, got {(m, n, k)}")
    rels = (FreeWord.gen(0, m), FreeWord.gen(1, n), FreeWord.gen(2, k),
            FreeWord(((0, 1), (1, 1), (2, 1))))
    return Presentation(("g0", "g1", "gi"), rels)


def parse_presentation(text: str) -> Presentation:
    """Parse ``"a,b | a^2, b^3, a*b*a^-1*b"``."""
    if text.count("|") != 1:
        raise PresentationError(f"expected exactly one '|' in {text!r}")
    gens_text, rels_text = text.split("|")
    names = tuple(g.strip() for g in gens_text.split(","))
    if not all(names) or len(set(names)) != len(names):
        raise PresentationError(f"bad generator list {gens_text.strip()!r}")
    rels = []
    if rels_text.strip():
        for part in rels_text.split(","):
            try:
                w = FreeWord.of(parse_letters(part, names))
            except WordParseError as exc:
                raise PresentationError(str(exc)) from None
            if w:
                rels.append(w)
    return Presentation(names, tuple(rels))


def hyperbolicity_class(m: int, n: int, k: int) -> str:
    s = Fraction(1, m) + Fraction(1, n) + Fraction(1, k)
    if s > 1:
        return "spherical"
    if s == 1:
        return "euclidean"
    return "hyperbolic"


def orbifold_euler_characteristic(m: int, n: int, k: int) -> Fraction:
    return -1 + Fraction(1, m) + Fraction(1, n) + Fraction(1, k)


# -- coset enumeration --------------------------------------------------------

def _columns(w: FreeWord | Sequence) -> list[int]:
    letters = w.letters if isinstance(w, FreeWord) else w
    return [2 * g + (0 if s == 1 else 1) for g, s in letters]


@dataclass(frozen=True)
class CosetTable:
    """A closed coset table.

    ``rows[c][2*i]`` is the coset ``c * g_i`` and ``rows[c][2*i+1]`` is
    ``c * g_i^-1`` (0-based ids, coset 0 is the subgroup).
    """

    presentation: Presentation
    subgroup: tuple[FreeWord, ...]
    rows: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.rows)

    @property
    def index(self) -> int:
        return len(self.rows)

    def scan(self, coset: int, w: FreeWord) -> int:
        for col in _columns(w):
            coset = self.rows[coset][col]
        return coset

    def is_compatible(self) -> bool:
        n = len(self.rows)
        for row in self.rows:
            if len(row) != 2 * self.presentation.rank or any(not 0 <= x < n for x in row):
                return False
        for c in range(n):
            for col in range(0, 2 * self.presentation.rank):
                if self.rows[self.rows[c][col]][col ^ 1] != c:
                    return False
            for r in self.presentation.relators:
                if self.scan(c, r) != c:
                    return False
        return all(self.scan(0, w) == 0 for w in self.subgroup)


class _Enumerator:
    """HLT coset enumeration with union-find coincidence processing."""

    def __init__(self, ngens: int, max_cosets: int):
        self.ncols = 2 * ngens
        self.max_cosets = max_cosets
        self.table: list[list[int | None]] = []
        self.parent: list[int] = []
        self.live = 0
        self.new_coset()

    def new_coset(self) -> int:
        if self.live >= self.max_cosets:
            raise CapacityError(f"coset enumeration exceeded {self.max_cosets} live cosets")
        self.table.append([None] * self.ncols)
        self.parent.append(len(self.parent))
        self.live += 1
        return len(self.table) - 1

    def rep(self, c: int) -> int:
        p = self.parent
        root = c
        while p[root] != root:
            root = p[root]
        while p[c] != root:
            p[c], c = root, p[c]
        return root

    def is_live(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> None:
        d = self.new_coset()
        self.table[c][x] = d
        self.table[d][x ^ 1] = c

    def scan_and_fill(self, c: int, w: list[int]) -> None:
        t = self.table
        f = b = c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and t[f][w[i]] is not None:
                f = t[f][w[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][w[j] ^ 1] is not None:
                b = t[b][w[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][w[i]] = b
                t[b][w[i] ^ 1] = f
                return
            self.define(f, w[i])

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.rep(k), self.rep(l)
        if k == l:
            return
        k, l = min(k, l), max(k, l)
        self.parent[l] = k
        self.live -= 1
        queue.append(l)

    def coincidence(self, a: int, b: int) -> None:
        t = self.table
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = t[e][x]
                if f is None:
                    continue
                t[f][x ^ 1] = None
                e1, f1 = self.rep(e), self.rep(f)
                if t[e1][x] is not None:
                    self._merge(f1, t[e1][x], queue)
                elif t[f1][x ^ 1] is not None:
                    self._merge(e1, t[f1][x ^ 1], queue)
                else:
                    t[e1][x] = f1
                    t[f1][x ^ 1] = e1

    def run(self, relators: list[list[int]], subgroup: list[list[int]]) -> None:
        for w in subgroup:
            self.scan_and_fill(0, w)
        c = 0
        while c < len(self.table):
            if self.is_live(c):
                for r in relators:
                    if not self.is_live(c):
                        break
                    self.scan_and_fill(c, r)
                if self.is_live(c):
                    for x in range(self.ncols):
                        if self.table[c][x] is None:
                            self.define(c, x)
            c += 1

    def standardized(self) -> list[tuple[int, ...]]:
        """Live rows renumbered in breadth-first order from coset 0."""
        t = self.table
        new = {0: 0}
        order = [0]
        queue = deque([0])
        while queue:
            c = queue.popleft()
            for x in range(self.ncols):
                d = self.rep(t[c][x])
                if d not in new:
                    new[d] = len(order)
                    order.append(d)
                    queue.append(d)
        return [tuple(new[self.rep(t[c][x])] for x in range(self.ncols)) for c in order]


def todd_coxeter(p: Presentation, subgroup_words: Sequence[FreeWord] = (),
                 max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate the cosets of ``<subgroup_words>`` in the group presented by ``p``.

    Raises :class:`CapacityError` when more than ``max_cosets`` cosets are
    alive at once; that is not a proof the index is infinite.
    """
    if p.rank == 0:
        raise PresentationError("presentation has no generators")
    for w in subgroup_words:
        if w.rank() > p.rank:
            raise PresentationError(f"subgroup word {w} uses a generator outside the presentation")
    en = _Enumerator(p.rank, max_cosets)
    en.run([_columns(r) for r in p.relators], [_columns(w) for w in subgroup_words])
    table = CosetTable(p, tuple(subgroup_words), tuple(en.standardized()))
    assert len(table) == en.live
    return table


def coset_action(t: CosetTable) -> list[Permutation]:
    """One permutation of coset ids per generator.

    Generator ``g`` acts by ``c -> c * g^-1`` so that the assignment is a
    homomorphism for right-to-left composition: every relator evaluates to
    the identity.
    """
    n = len(t.rows)
    for row in t.rows:
        if any(x is None or not 0 <= x < n for x in row):
            raise PresentationError("coset table is not closed")
    return [Permutation(tuple(row[2 * i + 1] for row in t.rows))
            for i in range(t.presentation.rank)]
