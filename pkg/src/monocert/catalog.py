"""Standard permutation realizations of small named groups.

==========  =========================================================
``Cn``      the n-cycle ``(1 2 ... n)`` on n points
``Sn``      ``(1 2)`` and ``(1 2 ... n)``
``An``      the 3-cycles ``(i i+1 i+2)``
``Dn``      rotation ``(1 2 ... n)`` and reflection ``i -> 2 - i (mod n)``
``V4``      ``(1 2)(3 4)``, ``(1 3)(2 4)`` in S4
``Q8``      regular representation on 8 points, generated by ``i`` and ``j``
==========  =========================================================
"""

from __future__ import annotations

import re

from .perm import Permutation

ACCEPTANCE_CATALOG = ("C2", "C3", "C4", "C5", "C6", "V4", "S3", "D4", "Q8", "A4", "S4")


class UnknownGroup(ValueError):
    pass


def _cycle(points, n):
    return Permutation.from_cycles([list(points)], n)


def _quaternion_generators() -> list[Permutation]:
    # units 1, i, j, k with signs; element (s, u) means s*u
    table = {
        ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
        ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
        ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
        ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
    }
    elements = [(s, u) for s in (1, -1) for u in "1ijk"]
    pos = {e: i for i, e in enumerate(elements)}

    def mul(x, y):
        s, u = table[(x[1], y[1])]
        return (x[0] * y[0] * s, u)

    return [Permutation(tuple(pos[mul(g, e)] for e in elements))
            for g in ((1, "i"), (1, "j"))]


def named_group(name: str) -> tuple[int, list[Permutation]]:
    """Return ``(degree, generators)`` for a catalog name such as ``"D4"``."""
    if name == "V4":
        return 4, [Permutation.from_cycles([(1, 2), (3, 4)], 4),
                   Permutation.from_cycles([(1, 3), (2, 4)], 4)]
    if name == "Q8":
        return 8, _quaternion_generators()
    m = re.fullmatch(r"([SACD])([1-9]\d*)", name)
    if m is None:
        raise UnknownGroup(f"unknown group name {name!r}")
    kind, n = m.group(1), int(m.group(2))
    ident = Permutation.identity(n)
    if kind == "C":
        return n, [_cycle(range(1, n + 1), n)]
    if kind == "S":
        if n == 1:
            return 1, [ident]
        return n, [_cycle((1, 2), n), _cycle(range(1, n + 1), n)]
    if kind == "A":
        if n < 3:
            return n, [ident]
        return n, [_cycle((i, i + 1, i + 2), n) for i in range(1, n - 1)]
    if n < 3:
        raise UnknownGroup("dihedral groups Dn need n >= 3")
    reflection = Permutation(tuple((-i) % n for i in range(n)))
    return n, [_cycle(range(1, n + 1), n), reflection]
