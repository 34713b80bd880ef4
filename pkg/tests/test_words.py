import random

import pytest
from hypothesis import given, settings, strategies as st

from monocert import psl2
from monocert.catalog import ACCEPTANCE_CATALOG, named_group
from monocert.perm import PermError, Permutation, generate, parse_cycles
from monocert.words import (
    FreeWord,
    WordParseError,
    evaluate,
    format_word,
    is_reduced,
    parse_letters,
    parse_word,
    reduce,
    schreier_kernel_basis,
    schreier_rank,
    word_invert,
    word_multiply,
)

letters = st.lists(st.tuples(st.integers(0, 2), st.sampled_from([1, -1])), max_size=40)


def x(i, s=1):
    return (i, s)


def test_reduce_examples():
    assert reduce([x(0), x(0, -1)]) == ()
    assert reduce([x(0), x(1), x(1, -1), x(0)]) == (x(0), x(0))
    assert reduce([x(1, -1), x(0), x(0, -1), x(1)]) == ()


def test_word_times_inverse_is_empty():
    rng = random.Random(7)
    for _ in range(100):
        w = FreeWord.of((rng.randrange(3), rng.choice([1, -1])) for _ in range(rng.randrange(41)))
        assert word_multiply(w, word_invert(w)) == FreeWord()
        assert FreeWord.of(w.letters + word_invert(w).letters).letters == ()


@given(letters)
def test_reduce_idempotent_and_reduced(raw):
    r = reduce(raw)
    assert reduce(r) == r
    assert is_reduced(r)
    assert len(r) <= len(raw) and (len(raw) - len(r)) % 2 == 0


@given(letters, letters, letters)
def test_multiply_associative(a, b, c):
    a, b, c = FreeWord.of(a), FreeWord.of(b), FreeWord.of(c)
    assert (a * b) * c == a * (b * c)


def test_multiply_and_invert_examples():
    w = FreeWord.of([x(0), x(1, -1)])
    assert w * FreeWord() == w
    assert FreeWord.gen(0) * FreeWord.gen(0, -1) == FreeWord()
    assert word_invert(FreeWord.of([x(0), x(1)])) == FreeWord.of([x(1, -1), x(0, -1)])


def test_unreduced_word_rejected():
    with pytest.raises(ValueError):
        FreeWord((x(0), x(0, -1)))


def test_evaluate_examples():
    t = parse_cycles("(1 2)", 2)
    assert evaluate(FreeWord(), [t]).is_identity()
    assert evaluate(FreeWord.gen(0, 2), [t]).is_identity()
    ab = evaluate(FreeWord.of([x(0), x(1)]), [psl2.gen_A(), psl2.gen_B()])
    # [[1,2],[0,1]] [[1,0],[2,1]] = [[1+4, 2], [2, 1]]
    assert ab == psl2.ProjectiveMatrix(5, 2, 2, 1)


@settings(max_examples=200)
@given(letters, letters)
def test_evaluate_is_homomorphism(a, b):
    imgs = [parse_cycles("(1 2 3)(4 5)", 6), parse_cycles("(1 4)(2 6)", 6), parse_cycles("(3 5 6)", 6)]
    wa, wb = FreeWord.of(a), FreeWord.of(b)
    assert evaluate(wa * wb, imgs) == evaluate(wa, imgs) * evaluate(wb, imgs)
    mats = psl2.free_generators(3)
    assert evaluate(wa * wb, mats) == evaluate(wa, mats) * evaluate(wb, mats)


# -- text form ----------------------------------------------------------------

def test_format_examples():
    assert format_word([x(0), x(1, -1), x(0)]) == "x0*x1^-1*x0"
    assert format_word([]) == "1"
    assert format_word([x(0), x(0)]) == "x0^2"
    assert format_word([x(2, -1)] * 3 + [x(0)]) == "x2^-3*x0"


@given(letters)
def test_format_parse_round_trip(raw):
    w = FreeWord.of(raw)
    assert parse_word(str(w)) == w
    assert parse_letters(format_word(raw)) == list(raw)


def test_parse_named_and_powers():
    names = ["g0", "g1", "gi"]
    assert parse_letters("g0^2", names) == [x(0), x(0)]
    assert parse_letters("g0*g1*gi", names) == [x(0), x(1), x(2)]
    assert parse_letters("gi^-2 * g1", names) == [x(2, -1), x(2, -1), x(1)]
    assert parse_letters("x0*x0^-1") == [x(0), x(0, -1)]


@pytest.mark.parametrize("text", ["", "x0**x1", "y0", "x0^", "x0^a", "g7"])
def test_parse_errors(text):
    with pytest.raises(WordParseError):
        parse_letters(text)


# -- Schreier bases -----------------------------------------------------------

def test_schreier_c2():
    data = schreier_kernel_basis([parse_cycles("(1 2)", 2)])
    assert [str(w) for w in data.kernel_basis] == ["x0^2"]
    assert len(data.kernel_basis) == 1 == schreier_rank(2, 1)


def test_schreier_trivial():
    data = schreier_kernel_basis([Permutation.identity(3)])
    assert [str(w) for w in data.kernel_basis] == ["x0"]


def test_schreier_s3():
    gens = [parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)]
    data = schreier_kernel_basis(gens)
    assert len(data.kernel_basis) == 7 == 1 + 6 * (2 - 1)
    assert all(evaluate(w, gens).is_identity() for w in data.kernel_basis)


def test_schreier_rank_examples():
    assert schreier_rank(1, 4) == 4
    assert schreier_rank(6, 2) == 7
    v4 = named_group("V4")[1]
    assert schreier_rank(4, 2) == 5 == len(schreier_kernel_basis(v4).kernel_basis)


def test_schreier_tree_structure():
    gens = named_group("A4")[1]
    data = schreier_kernel_basis(gens)
    assert data.vertices[0].is_identity()
    assert data.parent[0] is None and all(p is not None for p in data.parent[1:])
    for v, w in enumerate(data.tree_words):
        assert evaluate(w, gens, data.vertices[0]) == data.vertices[v]


def test_schreier_rejects_non_generating_set():
    s3 = generate([parse_cycles("(1 2)", 3), parse_cycles("(1 2 3)", 3)])
    with pytest.raises(PermError):
        schreier_kernel_basis([parse_cycles("(1 2)", 3)], s3)


@pytest.mark.parametrize("name", ACCEPTANCE_CATALOG)
def test_schreier_catalog(name):
    _, gens = named_group(name)
    G = generate(gens)
    data = schreier_kernel_basis(gens)
    assert len(data.kernel_basis) == schreier_rank(G.order, len(gens))
    X = psl2.free_generators(len(gens))
    for w in data.kernel_basis:
        assert w and is_reduced(w.letters)
        assert evaluate(w, gens).is_identity()
        m = evaluate(w, X, psl2.IDENTITY)
        assert psl2.in_gamma2(m) and not m.is_identity()


def test_schreier_is_deterministic():
    gens = named_group("S4")[1]
    a = [str(w) for w in schreier_kernel_basis(gens).kernel_basis]
    b = [str(w) for w in schreier_kernel_basis(list(gens)).kernel_basis]
    assert a == b
