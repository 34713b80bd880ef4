"""Permutations and finite permutation groups.

Points are 1-based in every external format (cycle strings, ``__call__``),
0-based inside ``Permutation.images``.

Products follow function composition: ``p * q`` sends ``x`` to ``p(q(x))``,
so in any word the rightmost factor acts first.  Under this convention the
triangle relator ``(1 2)(1 2 ... n)(n ... 3 2)`` is the identity.

Coset and regular actions are written so that they are homomorphisms for
this product: ``g`` sends the coset ``x*H`` to ``g*x*H``, and the regular
permutation of ``g`` sends element ``e`` to ``g*e``.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Sequence

DEFAULT_CAP = 10**6
DEFAULT_ISO_CAP = 5040


class PermError(ValueError):
    pass


class CapacityError(RuntimeError):
    """An enumeration outgrew its configured cap."""


class CycleParseError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position} in {text!r}")
        self.text = text
        self.position = position


@dataclass(frozen=True)
class Permutation:
    images: tuple[int, ...]

    def __post_init__(self):
        n = len(self.images)
        if n < 1:
            raise PermError("degree must be at least 1")
        if sorted(self.images) != list(range(n)):
            raise PermError(f"not a bijection on {n} points: {self.images}")

    @classmethod
    def identity(cls, degree: int) -> Permutation:
        return cls(tuple(range(degree)))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> Permutation:
        """Build from 1-based images: ``images[i-1]`` is the image of ``i``."""
        return cls(tuple(i - 1 for i in images))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Permutation:
        images = list(range(degree))
        seen = set()
        for cyc in cycles:
            for a in cyc:
                if not 1 <= a <= degree:
                    raise PermError(f"point {a} out of range 1..{degree}")
                if a in seen:
                    raise PermError(f"point {a} repeated")
                seen.add(a)
            for a, b in zip(cyc, list(cyc[1:]) + list(cyc[:1])):
                images[a - 1] = b - 1
        return cls(tuple(images))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point - 1] + 1

    def __mul__(self, other: Permutation) -> Permutation:
        return compose(self, other)

    def inverse(self) -> Permutation:
        return inverse(self)

    def is_identity(self) -> bool:
        return all(i == x for i, x in enumerate(self.images))

    def order(self) -> int:
        return element_order(self)

    def cycles(self) -> list[list[int]]:
        return cycle_decomposition(self)

    def __pow__(self, e: int) -> Permutation:
        base = self if e >= 0 else self.inverse()
        result = Permutation.identity(self.degree)
        for _ in range(abs(e)):
            result = result * base
        return result

    def __str__(self) -> str:
        parts = [c for c in cycle_decomposition(self) if len(c) > 1]
        if not parts:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in parts)

    def __repr__(self) -> str:
        return f"Permutation({self}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Return ``p o q``: apply ``q`` first, then ``p``."""
    if p.degree != q.degree:
        raise PermError(f"degree mismatch: {p.degree} vs {q.degree}")
    pi = p.images
    return Permutation(tuple(pi[x] for x in q.images))


def inverse(p: Permutation) -> Permutation:
    inv = [0] * p.degree
    for i, x in enumerate(p.images):
        inv[x] = i
    return Permutation(tuple(inv))


def cycle_decomposition(p: Permutation) -> list[list[int]]:
    """Disjoint cycles including fixed points, each starting at its minimum."""
    seen = [False] * p.degree
    out = []
    for start in range(p.degree):
        if seen[start]:
            continue
        cyc = []
        x = start
        while not seen[x]:
            seen[x] = True
            cyc.append(x + 1)
            x = p.images[x]
        out.append(cyc)
    return out


def element_order(p: Permutation) -> int:
    return math.lcm(*(len(c) for c in cycle_decomposition(p)))


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(\d+)|(\S))")


def parse_cycles(text: str, degree: int) -> Permutation:
    """Parse cycle notation such as ``"(1 2)(3 4 5)"``.

    ``""`` and ``"()"`` are the identity; singleton cycles are accepted and
    act trivially.
    """
    cycles: list[list[int]] = []
    current: list[int] | None = None
    seen: set[int] = set()
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace remains
            break
        start = m.start(m.lastindex)
        pos = m.end()
        lpar, rpar, num, junk = m.groups()
        if junk is not None:
            raise CycleParseError(f"unexpected character {junk!r}", text, start)
        if lpar:
            if current is not None:
                raise CycleParseError("nested '('", text, start)
            current = []
        elif rpar:
            if current is None:
                raise CycleParseError("unmatched ')'", text, start)
            cycles.append(current)
            current = None
        else:
            if current is None:
                raise CycleParseError("point outside a cycle", text, start)
            a = int(num)
            if not 1 <= a <= degree:
                raise CycleParseError(f"point {a} out of range 1..{degree}", text, start)
            if a in seen:
                raise CycleParseError(f"point {a} repeated", text, start)
            seen.add(a)
            current.append(a)
    if current is not None:
        raise CycleParseError("unclosed '('", text, len(text))
    return Permutation.from_cycles(cycles, degree)


@dataclass(frozen=True, eq=False)
class PermGroup:
    """A fully enumerated permutation group.

    ``elements`` lists the group in breadth-first order from the identity,
    so ``elements[0]`` is always the identity.  Build with :func:`generate`.
    """

    degree: int
    generators: tuple[Permutation, ...]
    elements: tuple[Permutation, ...]
    _index: dict = field(repr=False, compare=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, g: Permutation) -> int:
        """0-based position of ``g`` in ``elements``."""
        try:
            return self._index[g]
        except KeyError:
            raise PermError(f"{g} is not in the group") from None

    def __contains__(self, g: object) -> bool:
        return g in self._index

    def __iter__(self):
        return iter(self.elements)

    def __len__(self) -> int:
        return len(self.elements)

    @property
    def identity(self) -> Permutation:
        return self.elements[0]

    def is_subgroup_of(self, other: PermGroup) -> bool:
        return self.degree == other.degree and all(g in other for g in self.generators)


def generate(generators: Sequence[Permutation], cap: int = DEFAULT_CAP,
             degree: int | None = None) -> PermGroup:
    """Breadth-first closure of ``generators``.

    ``degree`` is only needed when ``generators`` is empty.
    """
    gens = tuple(generators)
    if not gens:
        if degree is None:
            raise PermError("need generators or an explicit degree")
        gens = (Permutation.identity(degree),)
    n = gens[0].degree
    for g in gens:
        if g.degree != n:
            raise PermError(f"degree mismatch: {g.degree} vs {n}")
    e = Permutation.identity(n)
    elements = [e]
    index = {e: 0}
    queue = deque([e])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = compose(x, g)
            if y not in index:
                if len(elements) >= cap:
                    raise CapacityError(f"group closure exceeds cap of {cap} elements")
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    return PermGroup(n, gens, tuple(elements), index)


def symmetric_group(n: int, cap: int = DEFAULT_CAP) -> PermGroup:
    gens = [Permutation.from_cycles([range(1, n + 1)], n)]
    if n > 1:
        gens.insert(0, Permutation.from_cycles([(1, 2)], n))
    return generate(gens, cap)


@dataclass(frozen=True)
class CosetSpace:
    """Cosets ``x*H`` of a subgroup ``H`` (coset 0 is ``H`` itself).

    ``representatives[c]`` lies in coset ``c``; ``lookup`` maps every element
    of the ambient group to its coset id when the ambient group was
    enumerated, and is ``None`` for orbit-built spaces.
    """

    subgroup: PermGroup
    representatives: tuple[Permutation, ...]
    lookup: dict | None
    _keys: dict = field(repr=False, compare=False)

    def __len__(self) -> int:
        return len(self.representatives)

    def coset_of(self, x: Permutation) -> int:
        if self.lookup is not None:
            try:
                return self.lookup[x]
            except KeyError:
                raise PermError(f"{x} is outside the ambient group") from None
        try:
            return self._keys[_coset_key(x, self.subgroup)]
        except KeyError:
            raise PermError(f"{x} is outside the ambient group") from None


def _coset_key(x: Permutation, sub: PermGroup) -> tuple[int, ...]:
    return min(compose(x, h).images for h in sub.elements)


def right_cosets(super_group: PermGroup, sub_gens: Sequence[Permutation]) -> CosetSpace:
    """Partition ``super_group`` into the cosets of ``<sub_gens>``.

    Coset ``c`` is the set ``x*H`` for its representative ``x``; read with
    the action-order convention (apply ``h`` then ``x``) this is ``Hx``.
    """
    for h in sub_gens:
        if h not in super_group:
            raise PermError(f"subgroup generator {h} is not in the ambient group")
    sub = generate(sub_gens, degree=super_group.degree)
    lookup: dict[Permutation, int] = {}
    reps = []
    keys = {}
    for x in super_group.elements:
        if x in lookup:
            continue
        c = len(reps)
        reps.append(x)
        members = [compose(x, h) for h in sub.elements]
        for y in members:
            lookup[y] = c
        keys[min(y.images for y in members)] = c
    return CosetSpace(sub, tuple(reps), lookup, keys)


def coset_orbit(generators: Sequence[Permutation], sub: PermGroup,
                cap: int = DEFAULT_CAP) -> tuple[CosetSpace, list[Permutation]]:
    """Cosets of ``sub`` reachable from ``sub`` under ``generators``.

    Builds the coset space without enumerating the ambient group.  Returns
    the space and, for each generator, its action on coset ids.  Each
    representative is the product of generators along the breadth-first
    tree that first reached its coset.
    """
    e = sub.identity
    keys = {_coset_key(e, sub): 0}
    reps = [e]
    edges: list[list[int]] = [[] for _ in generators]
    c = 0
    while c < len(reps):
        x = reps[c]
        for i, g in enumerate(generators):
            y = compose(g, x)
            k = _coset_key(y, sub)
            if k not in keys:
                if len(reps) >= cap:
                    raise CapacityError(f"coset space exceeds cap of {cap} cosets")
                keys[k] = len(reps)
                reps.append(y)
            edges[i].append(keys[k])
        c += 1
    space = CosetSpace(sub, tuple(reps), None, keys)
    return space, [Permutation(tuple(row)) for row in edges]


def action_on_cosets(g: Permutation, cosets: CosetSpace) -> Permutation:
    """Permutation of coset ids induced by ``x*H -> g*x*H``."""
    return Permutation(tuple(cosets.coset_of(compose(g, x)) for x in cosets.representatives))


def normal_core(super_group: PermGroup, sub_gens: Sequence[Permutation]) -> PermGroup:
    """Largest normal subgroup of ``super_group`` inside ``<sub_gens>``.

    Computed as the kernel of the action on cosets.
    """
    cosets = right_cosets(super_group, sub_gens)
    kernel = [x for x in cosets.subgroup.elements
              if action_on_cosets(x, cosets).is_identity()]
    return generate(kernel, degree=super_group.degree)


def regular_permutation(group: PermGroup, g: Permutation) -> Permutation:
    """Permutation of element positions ``e -> g*e`` (1-based on output)."""
    return Permutation(tuple(group.index(compose(g, x)) for x in group.elements))


def regular_representation(group: PermGroup) -> tuple[PermGroup, dict[Permutation, int]]:
    """Cayley embedding of ``group`` into ``S_|group|``.

    Element ``i`` (1-based) is ``group.elements[i-1]``; the identity is 1.
    Returns the image group and the relabeling map element -> point.
    """
    gens = [regular_permutation(group, g) for g in group.generators]
    relabel = {x: i + 1 for i, x in enumerate(group.elements)}
    return generate(gens), relabel


def is_transitive(perms: Sequence[Permutation]) -> bool:
    n = perms[0].degree
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for p in perms:
            y = p.images[x]
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == n


def is_regular(group: PermGroup) -> bool:
    """Transitive with trivial point stabilizers."""
    if group.order != group.degree or not is_transitive(group.generators):
        return False
    return all(x.is_identity() or all(i != p for i, p in enumerate(x.images))
               for x in group.elements)


# -- isomorphism --------------------------------------------------------------

@dataclass(frozen=True)
class IsoWitness:
    """Images in the target group of the source group's generators."""

    generator_images: tuple[Permutation, ...]


def _extend(source: PermGroup, target: PermGroup, images: Sequence[Permutation],
            ngens: int | None = None) -> dict[Permutation, Permutation] | None:
    """Extend generator images to a map on ``<first ngens generators>``.

    Returns ``None`` unless the extension is a well-defined injective
    homomorphism on that subgroup.
    """
    gens = source.generators[:ngens] if ngens is not None else source.generators
    imgs = images[:len(gens)]
    f = {source.identity: target.identity}
    used = {target.identity}
    queue = deque([source.identity])
    while queue:
        x = queue.popleft()
        fx = f[x]
        for s, t in zip(gens, imgs):
            y = compose(x, s)
            fy = compose(fx, t)
            if y in f:
                if f[y] != fy:
                    return None
            else:
                if fy in used:
                    return None
                f[y] = fy
                used.add(fy)
                queue.append(y)
    return f


def validate_witness(source: PermGroup, target: PermGroup, witness: IsoWitness) -> bool:
    """Check that the witness induces a bijective homomorphism."""
    if len(witness.generator_images) != len(source.generators):
        return False
    if any(t not in target for t in witness.generator_images):
        return False
    f = _extend(source, target, witness.generator_images)
    if f is None or len(f) != target.order or len(f) != source.order:
        return False
    if source.order <= 256:
        for a, b in product(source.elements, repeat=2):
            if f[compose(a, b)] != compose(f[a], f[b]):
                return False
    return True


def _class_size(group: PermGroup, g: Permutation) -> int:
    seen = {g}
    stack = [g]
    while stack:
        x = stack.pop()
        for s in group.generators:
            y = compose(compose(s, x), inverse(s))
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen)


def _profile(group: PermGroup) -> dict[int, int]:
    prof: dict[int, int] = {}
    for x in group.elements:
        o = element_order(x)
        prof[o] = prof.get(o, 0) + 1
    return prof


def is_isomorphic(g1: PermGroup, g2: PermGroup,
                  cap: int = DEFAULT_ISO_CAP) -> IsoWitness | None:
    """Search for an isomorphism ``g1 -> g2`` by backtracking over generator images."""
    if g1.order > cap or g2.order > cap:
        raise CapacityError(f"isomorphism test limited to order {cap}")
    if g1.order != g2.order or _profile(g1) != _profile(g2):
        return None
    gens = g1.generators
    class_sizes: dict[Permutation, int] = {}

    def csize(group, x):
        key = (id(group), x)
        if key not in class_sizes:
            class_sizes[key] = _class_size(group, x)
        return class_sizes[key]

    candidates = []
    for s in gens:
        o, cs = element_order(s), csize(g1, s)
        candidates.append([t for t in g2.elements
                           if element_order(t) == o and csize(g2, t) == cs])

    chosen: list[Permutation] = []

    def search(k: int) -> IsoWitness | None:
        if k == len(gens):
            w = IsoWitness(tuple(chosen))
            f = _extend(g1, g2, chosen)
            return w if f is not None and len(f) == g2.order else None
        for t in candidates[k]:
            chosen.append(t)
            if _extend(g1, g2, chosen, k + 1) is not None:
                found = search(k + 1)
                if found is not None:
                    return found
            chosen.pop()
        return None

    return search(0)
