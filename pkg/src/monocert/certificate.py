"""JSON certificates and their independent re-verification."""

from __future__ import annotations

import json
import math
from typing import Any

from . import psl2
from .fpgrp import hyperbolicity_class, orbifold_euler_characteristic
from .monodromy import (
    MonodromyCertificate,
    Signature,
    SignatureError,
    fiber_permutations,
    subgroup_signature,
    torsion_free_check,
    triangle_fiber_generators,
    triangle_images,
)
from .perm import (
    CycleParseError,
    IsoWitness,
    PermError,
    generate,
    is_regular,
    parse_cycles,
    regular_permutation,
    symmetric_group,
    validate_witness,
)
from .words import WordParseError, evaluate, is_reduced, parse_letters, schreier_rank

FIELDS = ("construction", "group", "n", "cover_degree", "ambient_index",
          "monodromy_generators", "kernel_words", "kernel_matrices", "iso_witness",
          "signature", "checks")


class MalformedCertificate(ValueError):
    pass


def _sig_json(sig: Signature) -> dict:
    return {"genus": sig.genus, "periods": list(sig.periods)}


def to_dict(cert: MonodromyCertificate) -> dict:
    signature = None
    if cert.signature is not None:
        signature = {
            "subgroup": _sig_json(cert.signature["subgroup"]),
            "subgroup_torsion_free": cert.signature["subgroup_torsion_free"],
            "kernel": _sig_json(cert.signature["kernel"]),
        }
    witness = [{"generator": str(g), "image": str(t)}
               for g, t in zip(cert.monodromy_generators, cert.iso_witness.generator_images)]
    return {
        "construction": cert.construction,
        "group": {
            "label": cert.label,
            "degree": cert.group.degree,
            "order": cert.group.order,
            "generators": [str(g) for g in cert.group.generators],
        },
        "n": cert.degree,
        "cover_degree": cert.cover_degree,
        "ambient_index": cert.ambient_index,
        "monodromy_generators": [str(g) for g in cert.monodromy_generators],
        "kernel_words": [str(w) for w in cert.kernel_words],
        "kernel_matrices": [str(m) for m in cert.kernel_matrices],
        "iso_witness": witness,
        "signature": signature,
        "checks": dict(cert.checks),
    }


def dumps(cert: MonodromyCertificate) -> str:
    return json.dumps(to_dict(cert), indent=2) + "\n"


def _require(cond: bool, message: str) -> None:
    if not cond:
        raise MalformedCertificate(message)


def _check_shape(doc: Any) -> None:
    _require(isinstance(doc, dict), "certificate must be a JSON object")
    _require(tuple(doc) == FIELDS, f"fields must be exactly {', '.join(FIELDS)} in order")
    _require(doc["construction"] in ("triangle", "free"), "construction must be triangle or free")
    g = doc["group"]
    _require(isinstance(g, dict) and isinstance(g.get("generators"), list)
             and isinstance(g.get("degree"), int) and g["degree"] >= 1, "bad group field")
    for key in ("n", "cover_degree", "ambient_index"):
        _require(isinstance(doc[key], int) and doc[key] >= 1, f"{key} must be a positive integer")
    for key in ("monodromy_generators", "kernel_words", "kernel_matrices", "iso_witness"):
        _require(isinstance(doc[key], list), f"{key} must be a list")
    _require(all(isinstance(x, str) for x in doc["monodromy_generators"] + doc["kernel_words"]
                 + doc["kernel_matrices"]), "generator, word and matrix entries must be strings")
    _require(all(isinstance(x, dict) and set(x) == {"generator", "image"}
                 for x in doc["iso_witness"]), "iso_witness entries need generator and image")
    _require(doc["signature"] is None or isinstance(doc["signature"], dict), "bad signature field")
    _require(isinstance(doc["checks"], dict)
             and all(isinstance(v, bool) for v in doc["checks"].values()), "bad checks field")


def verify(doc: Any) -> list[str]:
    """Recompute every claim in a certificate; return the names of failing fields.

    Raises :class:`MalformedCertificate` when the document cannot be read.
    """
    _check_shape(doc)
    failures: list[str] = []

    def fail(name: str) -> None:
        if name not in failures:
            failures.append(name)

    n = doc["group"]["degree"]
    try:
        gens = [parse_cycles(s, n) for s in doc["group"]["generators"]]
    except CycleParseError as exc:
        raise MalformedCertificate(f"group generators: {exc}") from None
    _require(bool(gens), "group needs at least one generator")
    group = generate(gens)
    if doc["n"] != n:
        fail("n")
    if doc["cover_degree"] != group.order:
        fail("cover_degree")
    d = group.order

    if doc["construction"] == "triangle":
        _require(n >= 2, "triangle certificates need degree >= 2")
        images = triangle_images(n)
        action, fiber_gens, schreier_ok = triangle_fiber_generators(group, images)
        if doc["ambient_index"] != action[0].degree or action[0].degree * d != math.factorial(n):
            fail("ambient_index")
    else:
        fiber_gens = gens
        if doc["ambient_index"] != len(gens):
            fail("ambient_index")

    # monodromy generators: regular of degree |G| and the deterministic choice
    try:
        mon_gens = [parse_cycles(s, d) for s in doc["monodromy_generators"]]
    except CycleParseError:
        mon_gens = []
    expected = fiber_permutations(group, fiber_gens)
    mon = generate(mon_gens) if mon_gens else None
    if (mon is None or mon.order != d or not is_regular(mon)
            or tuple(mon_gens) != expected):
        fail("monodromy_generators")

    # isomorphism witness
    wit = doc["iso_witness"]
    try:
        ok = (mon is not None and len(wit) == len(mon_gens)
              and [w["generator"] for w in wit] == doc["monodromy_generators"])
        if ok:
            imgs = tuple(parse_cycles(w["image"], n) for w in wit)
            ok = validate_witness(mon, group, IsoWitness(imgs))
    except (CycleParseError, PermError):
        ok = False
    if not ok:
        fail("iso_witness")

    # kernel words and matrices
    words_doc, mats_doc = doc["kernel_words"], doc["kernel_matrices"]
    if doc["construction"] == "free":
        r = len(gens)
        X = psl2.free_generators(r)
        words = []
        try:
            words = [parse_letters(s) for s in words_doc]
            words_ok = (len(words) == schreier_rank(d, r)
                        and all(w and is_reduced(w) and max(g for g, _ in w) < r for w in words)
                        and all(evaluate(w, gens).is_identity() for w in words))
        except (WordParseError, ValueError):
            words_ok = False
        if not words_ok:
            fail("kernel_words")
        try:
            mats = [psl2.parse_matrix(s) for s in mats_doc]
            mats_ok = (len(mats) == len(words_doc)
                       and all(psl2.in_gamma2(m) and not m.is_identity() for m in mats))
            if mats_ok and words_ok:
                mats_ok = all(evaluate(w, X, psl2.IDENTITY) == m for w, m in zip(words, mats))
        except psl2.MatrixError:
            mats_ok = False
        if not mats_ok:
            fail("kernel_matrices")
    else:
        if words_doc:
            fail("kernel_words")
        if mats_doc:
            fail("kernel_matrices")
        if not schreier_ok:
            fail("ambient_index")

    # signature
    sig_doc = doc["signature"]
    if doc["construction"] == "triangle" and hyperbolicity_class(2, n, n - 1) == "hyperbolic":
        try:
            ambient = (2, n, n - 1)
            sn = symmetric_group(n)
            kernel_action = [regular_permutation(sn, g) for g in images]
            expected_sig = {
                "subgroup": _sig_json(subgroup_signature(ambient, action)),
                "subgroup_torsion_free": torsion_free_check(action, ambient),
                "kernel": _sig_json(subgroup_signature(ambient, kernel_action)),
            }
            sig_ok = sig_doc == expected_sig and all(
                Signature(s["genus"], tuple(s["periods"])).euler_characteristic()
                == idx * orbifold_euler_characteristic(*ambient)
                for s, idx in ((sig_doc["subgroup"], action[0].degree),
                               (sig_doc["kernel"], sn.order)))
        except (SignatureError, TypeError, KeyError):
            sig_ok = False
        if not sig_ok:
            fail("signature")
    elif sig_doc is not None:
        fail("signature")

    if not doc["checks"] or not all(doc["checks"].values()):
        fail("checks")
    return failures

