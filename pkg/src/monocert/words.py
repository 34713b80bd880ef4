"""Reduced words in a free group and Schreier bases of finite-index kernels.

A letter is a pair ``(generator index, sign)`` with sign ``+1`` or ``-1``.
Words serialize as ``x0*x1^-1*x0``; runs of one letter compress to a power
(``x0^2``, ``x1^-3``) and the empty word is ``1``.
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

from .perm import PermGroup, PermError, compose, generate

Letter = tuple[int, int]


class WordParseError(ValueError):
    pass


def reduce(raw: Iterable[Letter]) -> tuple[Letter, ...]:
    """Freely reduce a sequence of letters."""
    out: list[Letter] = []
    for g, s in raw:
        if s not in (1, -1) or g < 0:
            raise ValueError(f"bad letter {(g, s)}")
        if out and out[-1] == (g, -s):
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


def is_reduced(raw: Sequence[Letter]) -> bool:
    return all(a != (b[0], -b[1]) for a, b in zip(raw, raw[1:]))


@dataclass(frozen=True)
class FreeWord:
    """A reduced word; construct through :meth:`of` to reduce on the way in."""

    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        if not is_reduced(self.letters):
            raise ValueError(f"word is not reduced: {self.letters}")

    @classmethod
    def of(cls, raw: Iterable[Letter]) -> FreeWord:
        return cls(reduce(raw))

    @classmethod
    def gen(cls, i: int, power: int = 1) -> FreeWord:
        s = 1 if power >= 0 else -1
        return cls(((i, s),) * abs(power))

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: FreeWord) -> FreeWord:
        return word_multiply(self, other)

    def inverse(self) -> FreeWord:
        return word_invert(self)

    def rank(self) -> int:
        """Smallest alphabet size containing every letter."""
        return max((g for g, _ in self.letters), default=-1) + 1

    def format(self, names: Sequence[str] | None = None) -> str:
        return format_word(self.letters, names)

    def __str__(self) -> str:
        return self.format()


def word_multiply(a: FreeWord, b: FreeWord) -> FreeWord:
    return FreeWord.of(a.letters + b.letters)


def word_invert(a: FreeWord) -> FreeWord:
    return FreeWord(tuple((g, -s) for g, s in reversed(a.letters)))


def evaluate(w: FreeWord | Sequence[Letter], images: Sequence[Any], identity: Any = None) -> Any:
    """Image of ``w`` under ``x_i -> images[i]``.

    Images must support ``*`` and ``.inverse()``.  ``identity`` defaults to
    ``images[0] * images[0].inverse()``.
    """
    letters = w.letters if isinstance(w, FreeWord) else w
    if identity is None:
        if not images:
            raise ValueError("need at least one image or an explicit identity")
        identity = images[0] * images[0].inverse()
    inverses: dict[int, Any] = {}
    result = identity
    for g, s in letters:
        if g >= len(images):
            raise ValueError(f"generator x{g} has no image")
        if s == 1:
            result = result * images[g]
        else:
            if g not in inverses:
                inverses[g] = images[g].inverse()
            result = result * inverses[g]
    return result


# -- text form ----------------------------------------------------------------

def format_word(letters: Sequence[Letter], names: Sequence[str] | None = None) -> str:
    if not letters:
        return "1"
    parts = []
    i = 0
    while i < len(letters):
        j = i
        while j < len(letters) and letters[j] == letters[i]:
            j += 1
        g, s = letters[i]
        name = names[g] if names is not None else f"x{g}"
        e = s * (j - i)
        parts.append(name if e == 1 else f"{name}^{e}")
        i = j
    return "*".join(parts)


_FACTOR = re.compile(r"\s*([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*([+-]?\d+))?\s*$")


def parse_letters(text: str, names: Sequence[str] | None = None) -> list[Letter]:
    """Parse ``x0*x1^-1*x0`` (or powers like ``g0^5``) without reducing.

    With ``names=None`` the generators must be spelled ``x0, x1, ...``.
    ``1`` denotes the empty word.
    """
    text = text.strip()
    if text == "1":
        return []
    if not text:
        raise WordParseError("empty word text (use '1' for the identity)")
    lookup = {n: i for i, n in enumerate(names)} if names is not None else None
    out: list[Letter] = []
    for factor in text.split("*"):
        m = _FACTOR.match(factor)
        if m is None:
            raise WordParseError(f"malformed factor {factor.strip()!r} in {text!r}")
        name, power = m.group(1), m.group(2)
        if lookup is None:
            if not re.fullmatch(r"x\d+", name):
                raise WordParseError(f"unknown generator {name!r}")
            g = int(name[1:])
        elif name in lookup:
            g = lookup[name]
        else:
            raise WordParseError(f"unknown generator {name!r}")
        e = int(power) if power is not None else 1
        if e == 0:
            continue
        out.extend([(g, 1 if e > 0 else -1)] * abs(e))
    return out


def parse_word(text: str, names: Sequence[str] | None = None) -> FreeWord:
    return FreeWord.of(parse_letters(text, names))


# -- Schreier bases -----------------------------------------------------------

@dataclass(frozen=True)
class SchreierData:
    """Cayley graph, BFS spanning tree and kernel basis for ``F_r -> G``.

    ``vertices[v]`` is the group element at vertex ``v``;
    ``edges[v][i]`` is the vertex reached from ``v`` along generator ``i``;
    ``parent[v]`` is ``(u, i)`` for the tree edge into ``v`` (``None`` at the
    root, vertex 0 = identity).  ``tree_words[v]`` spells the tree path.
    """

    group: PermGroup
    vertices: tuple
    edges: tuple[tuple[int, ...], ...]
    parent: tuple[tuple[int, int] | None, ...]
    tree_words: tuple[FreeWord, ...]
    kernel_basis: tuple[FreeWord, ...]


def schreier_rank(index: int, r: int) -> int:
    return 1 + index * (r - 1)


def schreier_kernel_basis(generators: Sequence, group: PermGroup | None = None) -> SchreierData:
    """Free basis of the kernel of ``x_i -> generators[i]``.

    Vertices are group elements; the edge along ``x_i`` goes from ``u`` to
    ``u*g_i``.  The tree is breadth-first from the identity with generators
    tried in index order.  Each non-tree edge ``(u, i)`` gives the basis word
    ``t_u * x_i * t_(u*g_i)^-1``.
    """
    gens = list(generators)
    if not gens:
        raise ValueError("need at least one generator")
    if group is None:
        group = generate(gens)
    elif group.order != generate(gens, degree=group.degree).order:
        raise PermError("generators do not generate the given group")

    e = group.identity
    order = [e]
    vertex = {e: 0}
    parent: list[tuple[int, int] | None] = [None]
    queue = deque([e])
    while queue:
        u = queue.popleft()
        for i, g in enumerate(gens):
            v = compose(u, g)
            if v not in vertex:
                vertex[v] = len(order)
                order.append(v)
                parent.append((vertex[u], i))
                queue.append(v)
    if len(order) != group.order:
        raise PermError("Cayley graph is disconnected: generators do not generate the group")

    edges = tuple(tuple(vertex[compose(u, g)] for g in gens) for u in order)
    tree_words = [FreeWord()]
    for v in range(1, len(order)):
        u, i = parent[v]
        tree_words.append(FreeWord(tree_words[u].letters + ((i, 1),)))

    basis = []
    for u in range(len(order)):
        for i in range(len(gens)):
            v = edges[u][i]
            if parent[v] == (u, i):
                continue
            basis.append(tree_words[u] * FreeWord(((i, 1),)) * tree_words[v].inverse())

    return SchreierData(group, tuple(order), edges, tuple(parent), tuple(tree_words), tuple(basis))
