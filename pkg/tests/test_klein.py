import time

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crosscap import klein as K
from crosscap.klein import IDENTITY, T, Y, KleinElement
from crosscap.words import Word, WordError

elems = st.builds(KleinElement, st.integers(-20, 20), st.integers(-20, 20))


def from_letters(m, n):
    # y^m t^n by repeated multiplication only
    out = IDENTITY
    for _ in range(abs(m)):
        out = out * (Y if m > 0 else Y.inverse())
    for _ in range(abs(n)):
        out = out * (T if n > 0 else T.inverse())
    return out


@given(elems, elems, elems)
def test_associative(a, b, c):
    assert (a * b) * c == a * (b * c)


@given(elems)
def test_inverse(a):
    assert a * a.inverse() == IDENTITY == a.inverse() * a


@given(elems, st.integers(-12, 12))
def test_closed_form_power_matches_repeated_product(a, k):
    expect = IDENTITY
    for _ in range(abs(k)):
        expect = expect * (a if k >= 0 else a.inverse())
    assert a ** k == expect


@given(elems)
def test_normal_form_is_y_power_then_t_power(a):
    assert from_letters(a.m, a.n) == a
    assert K.k_square(a) == a * a


def test_relator_holds():
    assert Y * T * Y.inverse() == T.inverse()


def test_word_evaluation():
    w = Word.parse("y t y^-1", ("y", "t"))
    assert K.k_from_word(w) == T.inverse()
    with pytest.raises(WordError):
        K.k_from_word(Word.parse("x", ("x",)))


def test_center_is_generated_by_y_squared():
    assert K.k_center() == KleinElement(2, 0)


def test_twist_subgroup_and_Y_predicate():
    assert K.in_twist_subgroup(KleinElement(4, -3))
    assert not K.in_twist_subgroup(Y)
    assert K.k_is_Y(Y) and K.k_is_Y(KleinElement(1, 5)) and K.k_is_Y(KleinElement(-1, 2))
    assert not K.k_is_Y(KleinElement(3, 0))


def test_y_classes_are_exactly_four():
    expect = [KleinElement(1, 0), KleinElement(1, 1), KleinElement(-1, 0), KleinElement(-1, 1)]
    for bound in (3, 4, 6):
        assert K.k_Y_conjugacy_classes(bound) == expect


def test_y_classes_brute_force_oracle():
    # conjugating y^(+-1) t^n changes n by an even amount and never changes m
    for e in [KleinElement(s, n) for s in (1, -1) for n in range(-5, 6)]:
        for g in [KleinElement(p, q) for p in range(-3, 4) for q in range(-3, 4)]:
            f = K.k_conjugate(e, g)
            assert f.m == e.m and (f.n - e.n) % 2 == 0


def test_automorphism_must_respect_relator():
    with pytest.raises(ValueError):
        K.KleinAutomorphism(T, Y)


@pytest.mark.parametrize("bound", [2, 3, 4])
def test_out_is_klein_four_and_stable(bound):
    t0 = time.perf_counter()
    tab = K.k_out(bound)
    assert time.perf_counter() - t0 < 1.0
    assert tab.order == 4 and tab.is_klein_four and tab.abelian


def test_out_bound_too_small():
    with pytest.raises(ValueError):
        K.k_out(1)


def test_inner_by_recognises_conjugation():
    for g in [KleinElement(p, q) for p in range(-2, 3) for q in range(-2, 3)]:
        phi = K.KleinAutomorphism(K.k_conjugate(Y, g), K.k_conjugate(T, g))
        h = K.inner_by(phi)
        assert h is not None
        assert all(K.k_conjugate(x, h) == phi(x) for x in (Y, T, KleinElement(3, -2)))
    # y -> y t has odd t-exponent, which no conjugation produces
    assert K.inner_by(K.KleinAutomorphism(Y * T, T)) is None


def test_mod_n2_out():
    assert K.out_mod_n2() == (6, False)
