"""Exact arithmetic in PSL(2, Z) and the free subgroups of Gamma(2).

Matrices are stored with a canonical sign (first nonzero entry of
``a, b, c, d`` positive), so projective equality is plain equality.
Python integers are unbounded, which long words require.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .words import FreeWord


class MatrixError(ValueError):
    pass


@dataclass(frozen=True)
class ProjectiveMatrix:
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        if self.a * self.d - self.b * self.c != 1:
            raise MatrixError(f"determinant of {self.entries()} is not 1")
        first = next(x for x in (self.a, self.b, self.c, self.d) if x != 0)
        if first < 0:
            raise MatrixError("use canonicalize() for non-canonical signs")

    @classmethod
    def canonicalize(cls, a: int, b: int, c: int, d: int) -> ProjectiveMatrix:
        first = next((x for x in (a, b, c, d) if x != 0), 0)
        if first < 0:
            a, b, c, d = -a, -b, -c, -d
        return cls(a, b, c, d)

    @classmethod
    def identity(cls) -> ProjectiveMatrix:
        return cls(1, 0, 0, 1)

    def entries(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))

    def __mul__(self, other: ProjectiveMatrix) -> ProjectiveMatrix:
        return mat_multiply(self, other)

    def inverse(self) -> ProjectiveMatrix:
        return mat_inverse(self)

    def is_identity(self) -> bool:
        return self == IDENTITY

    def magnitude(self) -> int:
        return abs(self.a) + abs(self.b) + abs(self.c) + abs(self.d)

    def __str__(self) -> str:
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"


IDENTITY = ProjectiveMatrix(1, 0, 0, 1)


def mat_multiply(x: ProjectiveMatrix, y: ProjectiveMatrix) -> ProjectiveMatrix:
    return ProjectiveMatrix.canonicalize(
        x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d,
        x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d,
    )


def mat_inverse(x: ProjectiveMatrix) -> ProjectiveMatrix:
    return ProjectiveMatrix.canonicalize(x.d, -x.b, -x.c, x.a)


def mat_equal(x: ProjectiveMatrix, y: ProjectiveMatrix) -> bool:
    return x == y


def gen_A() -> ProjectiveMatrix:
    return ProjectiveMatrix(1, 2, 0, 1)


def gen_B() -> ProjectiveMatrix:
    return ProjectiveMatrix(1, 0, 2, 1)


def conjugate_generator(j: int) -> ProjectiveMatrix:
    """``B^-j * A * B^j``; the matrices for j < r freely generate a rank-r subgroup."""
    if j < 0:
        raise ValueError("j must be nonnegative")
    Bj = ProjectiveMatrix(1, 0, 2 * j, 1)  # B^j
    return mat_inverse(Bj) * gen_A() * Bj


def free_generators(r: int) -> list[ProjectiveMatrix]:
    return [conjugate_generator(j) for j in range(r)]


def in_gamma2(x: ProjectiveMatrix) -> bool:
    return x.a % 2 == 1 and x.d % 2 == 1 and x.b % 2 == 0 and x.c % 2 == 0


def matrix_to_word(x: ProjectiveMatrix) -> FreeWord:
    """Spell ``x`` in ``Gamma(2)`` as a reduced word in ``x0 = A``, ``x1 = B``.

    Peels letters off the left: at each step multiply by the inverse of the
    letter that most reduces ``|a|+|b|+|c|+|d|``.
    """
    if not in_gamma2(x):
        raise MatrixError(f"{x} is not in Gamma(2)")
    A, B = gen_A(), gen_B()
    moves = [((0, 1), mat_inverse(A)), ((0, -1), A),
             ((1, 1), mat_inverse(B)), ((1, -1), B)]
    letters = []
    while not x.is_identity():
        mu = x.magnitude()
        best = None
        for letter, m in moves:
            y = m * x
            if y.magnitude() < mu and (best is None or y.magnitude() < best[1].magnitude()):
                best = (letter, y)
        if best is None:
            raise AssertionError(f"no magnitude-decreasing move from {x}")
        letters.append(best[0])
        x = best[1]
    return FreeWord.of(letters)


_MATRIX = re.compile(r"\[\[(-?\d+),(-?\d+)\],\[(-?\d+),(-?\d+)\]\]")


def parse_matrix(text: str) -> ProjectiveMatrix:
    m = _MATRIX.fullmatch(text.replace(" ", ""))
    if m is None:
        raise MatrixError(f"malformed matrix {text!r}")
    a, b, c, d = (int(g) for g in m.groups())
    if a * d - b * c != 1:
        raise MatrixError(f"determinant of {text!r} is not 1")
    return ProjectiveMatrix.canonicalize(a, b, c, d)
