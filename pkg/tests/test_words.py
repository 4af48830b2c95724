import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crosscap.words import (Presentation, Word, WordError, free_reduce, invert_letters,
                            parse_letters, shortlex_key)

from strategies import letters, words

GENS = ("A1", "B", "V")
W = words(GENS)


def naive_reduce(ls):
    # repeated pairwise cancellation until nothing changes
    ls = list(ls)
    changed = True
    while changed:
        changed = False
        for i in range(len(ls) - 1):
            if ls[i] == -ls[i + 1]:
                del ls[i:i + 2]
                changed = True
                break
    return tuple(ls)


@given(letters(3, 30))
def test_free_reduce_matches_naive_cancellation(ls):
    assert free_reduce(ls) == naive_reduce(ls)


@given(W, W, W)
def test_multiplication_is_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(W)
def test_inverse_and_identity(a):
    e = Word.identity(GENS)
    assert a * ~a == e == ~a * a
    assert a * e == a == e * a
    assert ~~a == a


@given(W, st.integers(-4, 4))
def test_power_matches_repeated_product(a, n):
    expect = Word.identity(GENS)
    for _ in range(abs(n)):
        expect = expect * (a if n >= 0 else ~a)
    assert a ** n == expect


@given(W, W)
def test_conjugate_and_exponent_sums(a, g):
    c = a.conjugate(g)
    assert c == g * a * ~g
    assert c.exponent_sums() == a.exponent_sums()


@given(W)
def test_text_round_trip(a):
    assert Word.parse(str(a), GENS) == a


def test_randomized_algebra_ten_thousand():
    rng = random.Random(20240611)
    e = Word.identity(GENS)
    for _ in range(10_000):
        a, b, c = (Word.from_letters([rng.choice((1, -1, 2, -2, 3, -3)) for _ in range(rng.randrange(12))], GENS)
                   for _ in range(3))
        assert (a * b) * c == a * (b * c)
        assert a * ~a == e
        assert ~(a * b) == ~b * ~a
        assert len(a * b) <= len(a) + len(b)


def test_parse_syntax():
    w = Word.parse("A1 B^-1 V^2", GENS)
    assert w.letters == (1, -2, 3, 3)
    assert str(w) == "A1 B^-1 V^2"
    assert Word.parse("1", GENS) == Word.identity(GENS)
    assert str(Word.identity(GENS)) == "1"
    assert parse_letters("B B^-1", GENS) == ()


@pytest.mark.parametrize("text", ["A2", "A1^x", "B^0", "V^"])
def test_parse_rejects(text):
    with pytest.raises(WordError):
        Word.parse(text, GENS)


def test_mixing_generator_sets_is_an_error():
    with pytest.raises(WordError):
        Word.parse("A1", GENS) * Word.parse("x", ("x",))


def test_shortlex_order():
    assert shortlex_key((1,)) < shortlex_key((-1,)) < shortlex_key((2,)) < shortlex_key((1, 1))
    assert invert_letters((1, -2, 3)) == (-3, 2, -1)


def test_presentation_file_round_trip():
    p = Presentation.from_strings("demo", ("a", "b"), ["a^2", "a b a^-1 b^-1"])
    q = Presentation.loads(p.dumps(), "demo")
    assert q == p


@pytest.mark.parametrize("text", [
    "relator: a\n",
    "generators: a\nfoo: a\n",
    "generators: a\nrelator: b\n",
    "generators: a\njunk\n",
])
def test_presentation_file_errors(text):
    with pytest.raises(WordError):
        Presentation.loads(text)


def test_presentation_rejects_duplicates_and_empty_relators():
    with pytest.raises(WordError):
        Presentation.from_strings("p", ("a", "a"), [])
    with pytest.raises(WordError):
        Presentation.from_strings("p", ("a",), ["a a^-1"])
