"""Realizing a finite group as the monodromy group of a cover.

Two constructions produce a :class:`MonodromyCertificate`:

* :func:`triangle_construction` embeds ``G`` in ``S_n`` and pulls it back
  along ``phi: Delta(2, n, n-1) -> S_n``; the cover is
  ``ker(phi)\\H -> phi^-1(G)\\H``.
* :func:`free_construction` maps the free group ``F_r`` (matrices
  ``B^-j A B^j`` in Gamma(2)) onto ``G``; the cover is
  ``ker(phi)\\H -> F_r\\H``.

In both cases the fiber is labeled by the elements of ``G`` and the
monodromy is the regular action, certified by an explicit isomorphism.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from . import psl2
from .fpgrp import Presentation, hyperbolicity_class, orbifold_euler_characteristic, triangle
from .perm import (
    DEFAULT_CAP,
    IsoWitness,
    PermError,
    PermGroup,
    Permutation,
    compose,
    coset_orbit,
    cycle_decomposition,
    generate,
    inverse,
    is_isomorphic,
    is_regular,
    is_transitive,
    regular_permutation,
    validate_witness,
)
from .psl2 import ProjectiveMatrix
from .words import FreeWord, evaluate, is_reduced, schreier_kernel_basis, schreier_rank


class ConstructionError(RuntimeError):
    pass


class SignatureError(ValueError):
    pass


@dataclass(frozen=True)
class Homomorphism:
    """Generator images from a presentation (or free alphabet) into ``S_n``."""

    source: Presentation | None
    images: tuple[Permutation, ...]
    image: PermGroup
    relators_preserved: bool
    surjective: bool

    @property
    def target_degree(self) -> int:
        return self.images[0].degree


def check_homomorphism(source: Presentation | None, images: Sequence[Permutation],
                       target_order: int | None = None, cap: int = DEFAULT_CAP) -> Homomorphism:
    images = tuple(images)
    ok = True
    if source is not None:
        if len(images) != source.rank:
            raise ConstructionError(f"{source.rank} generators but {len(images)} images")
        ok = all(evaluate(r, images).is_identity() for r in source.relators)
    image = generate(images, cap)
    surjective = target_order is not None and image.order == target_order
    return Homomorphism(source, images, image, ok, surjective)


def triangle_images(n: int) -> tuple[Permutation, Permutation, Permutation]:
    """``(1 2)``, ``(1 2 ... n)`` and ``(n ... 3 2)`` in ``S_n``."""
    if n < 2:
        raise ConstructionError("the triangle construction needs n >= 2")
    return (Permutation.from_cycles([(1, 2)], n),
            Permutation.from_cycles([range(1, n + 1)], n),
            Permutation.from_cycles([range(n, 1, -1)], n))


def triangle_homomorphism(n: int, cap: int = DEFAULT_CAP) -> Homomorphism:
    images = triangle_images(n)
    hom = check_homomorphism(triangle(2, n, n - 1), images, math.factorial(n), cap)
    if not (hom.relators_preserved and hom.surjective):
        raise ConstructionError(f"phi for n={n} failed: relators={hom.relators_preserved} "
                                f"surjective={hom.surjective}")
    return hom


# -- signatures ---------------------------------------------------------------

@dataclass(frozen=True)
class Signature:
    genus: int
    periods: tuple[int, ...]

    def euler_characteristic(self) -> Fraction:
        """Orbifold Euler characteristic ``2 - 2g - sum(1 - 1/p)``."""
        return 2 - 2 * self.genus - sum((1 - Fraction(1, p) for p in self.periods), Fraction(0))

    def __str__(self) -> str:
        periods = " ".join(map(str, self.periods)) if self.periods else "none"
        return f"genus {self.genus}, periods: {periods}"


def subgroup_signature(ambient: tuple[int, int, int], action: Sequence[Permutation],
                       index: int | None = None) -> Signature:
    """Signature of a finite-index subgroup of the hyperbolic triangle group ``ambient``.

    ``action`` gives the three generators acting on the cosets.  A cycle of
    length ``l`` for a generator of order ``m`` is a cone point of order
    ``m/l`` when ``l < m``; the genus then follows from multiplicativity of
    the orbifold Euler characteristic.
    """
    if hyperbolicity_class(*ambient) != "hyperbolic":
        raise SignatureError(f"{ambient} is not hyperbolic")
    if len(action) != 3:
        raise SignatureError("need exactly three generator actions")
    d = action[0].degree
    if index is not None and index != d:
        raise SignatureError(f"index {index} does not match action degree {d}")
    if not is_transitive(action):
        raise SignatureError("coset action is not transitive")
    periods = []
    for order, p in zip(ambient, action):
        for cyc in cycle_decomposition(p):
            if order % len(cyc):
                raise SignatureError(f"cycle length {len(cyc)} does not divide {order}")
            if len(cyc) < order:
                periods.append(order // len(cyc))
    chi = d * orbifold_euler_characteristic(*ambient)
    two_g = 2 - chi - sum((1 - Fraction(1, p) for p in periods), Fraction(0))
    if two_g.denominator != 1 or two_g.numerator % 2 or two_g < 0:
        raise SignatureError(f"non-integral or negative genus: 2g = {two_g}")
    sig = Signature(two_g.numerator // 2, tuple(periods))
    assert sig.euler_characteristic() == chi
    return sig


def torsion_free_check(action: Sequence[Permutation], orders: Sequence[int]) -> bool:
    return all(len(c) == m for p, m in zip(action, orders) for c in cycle_decomposition(p))


def monodromy_from_pair(action: Sequence[Permutation], normal: bool) -> PermGroup:
    """The permutation group induced on the fiber.

    The image of the action is ``Gamma`` modulo the core of the point
    stabilizer.  With ``normal=True`` the stabilizer is asserted normal, so
    the image must act regularly.
    """
    group = generate(action)
    if normal and not is_regular(group):
        raise ConstructionError("stabilizer asserted normal but the action is not regular")
    return group


# -- certificates -------------------------------------------------------------

@dataclass(frozen=True)
class MonodromyCertificate:
    construction: str
    label: str
    group: PermGroup
    cover_degree: int
    ambient_index: int
    monodromy_generators: tuple[Permutation, ...]
    monodromy_group: PermGroup
    iso_witness: IsoWitness
    kernel_words: tuple[FreeWord, ...] = ()
    kernel_matrices: tuple[ProjectiveMatrix, ...] = ()
    ambient_action: tuple[Permutation, ...] = ()
    signature: dict | None = None
    checks: dict = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return self.group.degree

    @property
    def ok(self) -> bool:
        return all(self.checks.values())


def fiber_permutations(group: PermGroup, fiber_gens: Sequence[Permutation]
                       ) -> tuple[Permutation, ...]:
    """Regular permutations of ``fiber_gens`` on the elements of ``group``."""
    if not fiber_gens:
        return (Permutation.identity(group.order),)
    return tuple(regular_permutation(group, g) for g in fiber_gens)


def _certify_fiber(group: PermGroup, fiber_gens: Sequence[Permutation],
                   checks: dict) -> tuple[tuple[Permutation, ...], PermGroup, IsoWitness]:
    mon_gens = fiber_permutations(group, fiber_gens)
    mon = monodromy_from_pair(mon_gens, normal=True)
    checks["monodromy_order"] = mon.order == group.order
    checks["monodromy_regular"] = is_regular(mon)
    witness = is_isomorphic(mon, group, cap=max(group.order, 1))
    if witness is None:
        raise ConstructionError("monodromy group is not isomorphic to G")
    checks["iso_witness"] = validate_witness(mon, group, witness)
    return mon_gens, mon, witness


def triangle_fiber_generators(group: PermGroup, images: Sequence[Permutation],
                              cap: int = DEFAULT_CAP):
    """Coset action of Delta on ``phi^-1(G)`` and a generating set of ``G``.

    Returns ``(action, fiber_gens, schreier_ok)``.  The generating set is
    taken from the images of the Schreier generators of ``phi^-1(G)``, in
    the order found, keeping each one not already generated.
    """
    space, action = coset_orbit(images, group, cap)
    reps = space.representatives
    chosen: list[Permutation] = []
    span = {group.identity}
    schreier_ok = True
    for u, y_u in enumerate(reps):
        for i, g in enumerate(images):
            v = action[i].images[u]
            s = compose(inverse(reps[v]), compose(g, y_u))
            if s not in group:
                schreier_ok = False
                continue
            if s not in span and len(span) < group.order:
                chosen.append(s)
                span = set(generate(chosen).elements)
    return action, chosen, schreier_ok and len(span) == group.order


def triangle_construction(group: PermGroup, label: str = "", cap: int = DEFAULT_CAP
                          ) -> MonodromyCertificate:
    """Realize ``G <= S_n`` through ``phi: Delta(2, n, n-1) -> S_n``."""
    n = group.degree
    if n < 2:
        raise ConstructionError("G must act on at least 2 points")
    phi = triangle_homomorphism(n, cap)
    if not group.is_subgroup_of(phi.image):
        raise ConstructionError("G is not a subgroup of S_n")
    checks = {"phi_relators": phi.relators_preserved, "phi_surjective": phi.surjective}

    action, fiber_gens, schreier_ok = triangle_fiber_generators(group, phi.images, cap)
    d = action[0].degree
    checks["ambient_index"] = d * group.order == math.factorial(n)
    checks["schreier_images"] = schreier_ok
    mon_gens, mon, witness = _certify_fiber(group, fiber_gens, checks)

    ambient = (2, n, n - 1)
    signature = None
    if hyperbolicity_class(*ambient) == "hyperbolic":
        sub_sig = subgroup_signature(ambient, action, d)
        kernel_action = [regular_permutation(phi.image, g) for g in phi.images]
        ker_sig = subgroup_signature(ambient, kernel_action, phi.image.order)
        checks["kernel_torsion_free"] = torsion_free_check(kernel_action, ambient)
        signature = {
            "subgroup": sub_sig,
            "subgroup_torsion_free": torsion_free_check(action, ambient),
            "kernel": ker_sig,
        }
    return MonodromyCertificate(
        construction="triangle", label=label or _default_label(group), group=group,
        cover_degree=group.order, ambient_index=d, monodromy_generators=mon_gens,
        monodromy_group=mon, iso_witness=witness, ambient_action=tuple(action),
        signature=signature, checks=checks,
    )


def free_construction(generators: Sequence[Permutation], label: str = "",
                      cap: int = DEFAULT_CAP) -> MonodromyCertificate:
    """Realize ``G = <generators>`` as a quotient of ``F_r`` inside Gamma(2)."""
    gens = list(generators)
    if not gens:
        raise ConstructionError("need at least one generator")
    group = generate(gens, cap)
    r = len(gens)
    data = schreier_kernel_basis(gens, group)
    X = psl2.free_generators(r)
    matrices = tuple(evaluate(w, X, psl2.IDENTITY) for w in data.kernel_basis)

    checks = {
        "kernel_rank": len(data.kernel_basis) == schreier_rank(group.order, r),
        "kernel_reduced": all(is_reduced(w.letters) and w for w in data.kernel_basis),
        "kernel_in_kernel": all(evaluate(w, gens).is_identity() for w in data.kernel_basis),
        "kernel_matrices_gamma2": all(psl2.in_gamma2(m) for m in matrices),
        "kernel_matrices_nontrivial": not any(m.is_identity() for m in matrices),
    }
    mon_gens, mon, witness = _certify_fiber(group, gens, checks)
    return MonodromyCertificate(
        construction="free", label=label or _default_label(group), group=group,
        cover_degree=group.order, ambient_index=r, monodromy_generators=mon_gens,
        monodromy_group=mon, iso_witness=witness, kernel_words=data.kernel_basis,
        kernel_matrices=matrices, checks=checks,
    )


def _default_label(group: PermGroup) -> str:
    return f"perm:{group.degree}:" + ",".join(str(g) for g in group.generators)
