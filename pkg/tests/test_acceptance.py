"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""

import contextlib
import io
import itertools
import json
import math
import random
import sys
import time
from fractions import Fraction

import pytest

from monocert import psl2
from monocert.catalog import ACCEPTANCE_CATALOG, named_group
from monocert.cli import main as cli_main
from monocert.fpgrp import coset_action, todd_coxeter, triangle
from monocert.monodromy import (
    free_construction,
    subgroup_signature,
    torsion_free_check,
    triangle_construction,
    triangle_homomorphism,
)
from monocert.perm import (
    CapacityError,
    Permutation,
    action_on_cosets,
    compose,
    generate,
    inverse,
    is_isomorphic,
    is_regular,
    regular_permutation,
    right_cosets,
    symmetric_group,
    validate_witness,
)
from monocert.words import FreeWord, evaluate, schreier_kernel_basis

def _line(number: int, title: str, ok: bool, detail: str) -> str:
    return f"{'PASS' if ok else 'FAIL'} criterion {number}: {title} ({detail})"


def report(number, title, ok, detail, capsys=None):
    text = _line(number, title, ok, detail)
    if capsys is not None:
        with capsys.disabled():
            print("\n" + text)
    else:
        print(text)
    assert ok, text


# -- 1 ------------------------------------------------------------------------

def check_finite_triangle_orders():
    start = time.perf_counter()
    ok = True
    for n, expected in ((2, 2), (3, 6), (4, 24)):
        table = todd_coxeter(triangle(2, n, n - 1))
        G = generate(coset_action(table))
        ok &= len(table) == expected and G.order == expected
        ok &= is_isomorphic(G, symmetric_group(n)) is not None
    elapsed = time.perf_counter() - start
    return ok and elapsed < 1.0, f"orders 2, 6, 24 in {elapsed:.3f} s, limit 1 s"


# -- 2 ------------------------------------------------------------------------

def check_phi():
    start = time.perf_counter()
    ok = True
    for n in range(2, 8):
        phi = triangle_homomorphism(n)
        ok &= all(evaluate(r, phi.images).is_identity() for r in triangle(2, n, n - 1).relators)
        ok &= phi.image.order == math.factorial(n)
    elapsed = time.perf_counter() - start
    return ok and elapsed < 30.0, f"n = 2..7 in {elapsed:.2f} s, limit 30 s"


# -- 3 ------------------------------------------------------------------------

def check_realization():
    worst = 0.0
    ok = True
    for name in ACCEPTANCE_CATALOG:
        _, gens = named_group(name)
        G = generate(gens)
        start = time.perf_counter()
        for cert in (triangle_construction(G, name), free_construction(gens, name)):
            mon = cert.monodromy_group
            ok &= mon.degree == G.order and is_regular(mon)
            ok &= validate_witness(mon, G, cert.iso_witness)
        worst = max(worst, time.perf_counter() - start)
    return ok and worst < 5.0, f"{len(ACCEPTANCE_CATALOG)} groups, slowest {worst:.2f} s, limit 5 s"


# -- 4 ------------------------------------------------------------------------

def check_schreier():
    ok = True
    total = 0
    for name in ACCEPTANCE_CATALOG:
        _, gens = named_group(name)
        order = generate(gens).order
        basis = schreier_kernel_basis(gens).kernel_basis
        ok &= len(basis) == 1 + order * (len(gens) - 1)
        X = psl2.free_generators(len(gens))
        for w in basis:
            m = evaluate(w, X, psl2.IDENTITY)
            ok &= evaluate(w, gens).is_identity() and psl2.in_gamma2(m) and not m.is_identity()
        total += len(basis)
    return ok, f"{total} basis words over the catalog"


# -- 5 ------------------------------------------------------------------------

def random_reduced_word(rng, max_len=40):
    letters = []
    for _ in range(rng.randrange(max_len + 1)):
        options = [(g, s) for g in (0, 1) for s in (1, -1)
                   if not letters or letters[-1] != (g, -s)]
        letters.append(rng.choice(options))
    return FreeWord(tuple(letters))


def check_round_trip():
    start = time.perf_counter()
    rng = random.Random(20261019)
    AB = [psl2.gen_A(), psl2.gen_B()]
    ok = all(psl2.matrix_to_word(evaluate(w, AB, psl2.IDENTITY)) == w
             for w in (random_reduced_word(rng) for _ in range(500)))
    ok &= all(psl2.in_gamma2(psl2.conjugate_generator(j)) for j in range(9))
    ok &= psl2.conjugate_generator(0) == psl2.gen_A()
    ok &= str(psl2.conjugate_generator(1)) == "[[5,2],[-8,-3]]"
    elapsed = time.perf_counter() - start
    return ok and elapsed < 5.0, f"500 words in {elapsed:.2f} s, limit 5 s"


# -- 6 ------------------------------------------------------------------------

def all_subgroups(G):
    """Every subgroup of a small group: those of S3 and S4 are all 2-generated."""
    seen = {}
    for a, b in itertools.combinations_with_replacement(G.elements, 2):
        H = generate([a, b])
        seen.setdefault(frozenset(H.elements), H)
    return list(seen.values())


def core_by_intersection(G, H):
    core = set(H.elements)
    for g in G.elements:
        core &= {compose(compose(g, h), inverse(g)) for h in H.elements}
    return core


def check_normal_core():
    ok = True
    count = 0
    for n in (3, 4):
        G = symmetric_group(n)
        for H in all_subgroups(G):
            cosets = right_cosets(G, list(H.elements))
            image = generate([action_on_cosets(g, cosets) for g in G.generators])
            core = core_by_intersection(G, H)
            ok &= image.order == G.order // len(core)
            if len(core) == H.order:
                ok &= image.order == G.order // H.order
            count += 1
    return ok and count == 6 + 30, f"{count} subgroups of S3 and S4"


# -- 7 ------------------------------------------------------------------------

def check_riemann_hurwitz():
    s5 = symmetric_group(5)
    phi = triangle_homomorphism(5)
    action = [regular_permutation(s5, g) for g in phi.images]
    chi = Fraction(-1) + Fraction(1, 2) + Fraction(1, 5) + Fraction(1, 4)
    sig = subgroup_signature((2, 5, 4), action, 120)
    ok = torsion_free_check(action, (2, 5, 4))
    ok &= chi == Fraction(-1, 20) and 2 - 2 * sig.genus == 120 * chi
    ok &= sig.genus == 4 and sig.periods == ()
    one = subgroup_signature((2, 5, 4), [Permutation.identity(1)] * 3, 1)
    ok &= one.genus == 0 and sorted(one.periods) == [2, 4, 5]
    return ok, f"ker: {sig}; index 1: {one}"


# -- 8 ------------------------------------------------------------------------

def check_infinite_case():
    start = time.perf_counter()
    try:
        todd_coxeter(triangle(2, 5, 4), max_cosets=10**5)
    except CapacityError:
        return True, f"capacity error after {time.perf_counter() - start:.2f} s (evidence, not proof)"
    return False, "enumeration returned a table"


# -- 9 ------------------------------------------------------------------------

def check_certificates(tmp_path):
    outdir = tmp_path / "certs"
    ok = cli_main(["realize", "--all-catalog", "--out", str(outdir)]) == 0
    files = sorted(outdir.glob("*.json"))
    ok &= len(files) == 2 * len(ACCEPTANCE_CATALOG)
    ok &= all(cli_main(["verify", str(f)]) == 0 for f in files)

    mutations = {
        "monodromy_generators": lambda d: d["monodromy_generators"].__setitem__(0, "()"),
        "kernel_words": lambda d: d["kernel_words"].__setitem__(0, "x1*x1^-1*" + d["kernel_words"][0]),
        "kernel_matrices": lambda d: d["kernel_matrices"].__setitem__(0, "[[1,0],[2,1]]"),
    }
    source = json.loads((outdir / "S3-free.json").read_text())
    caught = []
    for field, change in mutations.items():
        doc = json.loads(json.dumps(source))
        change(doc)
        path = tmp_path / f"mutated-{field}.json"
        path.write_text(json.dumps(doc))
        if _verify_names(path, field):
            caught.append(field)
    ok &= len(caught) == len(mutations)
    return ok, f"{len(files)} certificates verified; mutations caught: {', '.join(caught)}"


def _verify_names(path, field):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(["verify", str(path)])
    return code == 1 and field in buf.getvalue()


# -- pytest entry points ------------------------------------------------------

CRITERIA = [
    (1, "finite triangle-group orders", check_finite_triangle_orders),
    (2, "phi relators and surjectivity", check_phi),
    (3, "monodromy realization", check_realization),
    (4, "Schreier index formula", check_schreier),
    (5, "Gamma(2) word/matrix round trip", check_round_trip),
    (6, "normal-core consistency", check_normal_core),
    (7, "Riemann-Hurwitz consistency", check_riemann_hurwitz),
    (8, "infinite-case capacity error", check_infinite_case),
]


@pytest.mark.parametrize("number,title,check", CRITERIA, ids=[f"criterion{c[0]}" for c in CRITERIA])
def test_criterion(number, title, check, capsys):
    ok, detail = check()
    report(number, title, ok, detail, capsys)


def test_criterion9(tmp_path, capsys):
    ok, detail = check_certificates(tmp_path)
    capsys.readouterr()
    report(9, "certificate integrity", ok, detail, capsys)


if __name__ == "__main__":
    import tempfile
    from pathlib import Path

    failed = 0
    for number, title, check in CRITERIA:
        ok, detail = check()
        print(_line(number, title, ok, detail))
        failed += not ok
    with tempfile.TemporaryDirectory() as tmp, contextlib.redirect_stdout(io.StringIO()):
        ok, detail = check_certificates(Path(tmp))
    print(_line(9, "certificate integrity", ok, detail))
    failed += not ok
    sys.exit(1 if failed else 0)
