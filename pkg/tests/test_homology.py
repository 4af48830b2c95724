import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from crosscap import homology as H
from crosscap import presentations as PR


def two_sided_classes(g):
    return [v for v in itertools.product((0, 1), repeat=g) if any(v) and H.two_sided(v)]


@pytest.mark.parametrize("g", [2, 3, 4, 5])
def test_transvection_relations_for_all_class_pairs(g):
    I = H.identity(g)
    classes = two_sided_classes(g)
    T = {a: H.transvection(a) for a in classes}
    for a in classes:
        assert np.array_equal(H.mat_mul(T[a], T[a]), I)
        assert H.preserves_pairing(T[a])
    for a, b in itertools.combinations(classes, 2):
        ab, ba = H.mat_mul(T[a], T[b]), H.mat_mul(T[b], T[a])
        if H.pairing(a, b) == 0:
            assert np.array_equal(ab, ba)
        else:
            assert np.array_equal(H.mat_mul(ab, T[a]), H.mat_mul(ba, T[b]))


def test_transvection_rejects_bad_classes():
    with pytest.raises(ValueError):
        H.transvection((0, 0, 0))
    with pytest.raises(ValueError):
        H.transvection((1, 0, 0))


def test_chain_classes():
    cs = H.chain_classes(4, 3)
    m = H.pairing_matrix(cs)
    assert m == [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
    with pytest.raises(ValueError):
        H.chain_classes(3, 3)


@pytest.mark.parametrize("g", [1, 2, 3, 4])
def test_isometry_count_matches_brute_force(g):
    brute = 0
    for bits in itertools.product((0, 1), repeat=g * g):
        m = np.array(bits, dtype=np.uint8).reshape(g, g)
        brute += H.preserves_pairing(m)
    assert len(H.isometries(g)) == brute


def test_isometries_of_the_dot_product_are_permutations_for_small_g():
    # x.x = 1 for every column forces odd weight; for g <= 3 that means permutations
    assert len(H.isometries(3)) == 6
    assert len(H.isometries(2)) == 2


@given(st.lists(st.integers(0, 1), min_size=4, max_size=4), st.lists(st.integers(0, 1), min_size=4, max_size=4))
def test_matrix_inverse(a, b):
    m = H.mat_mul(H.transvection((1, 1, 0, 0)), H.transvection((0, 1, 1, 0)))
    assert np.array_equal(H.mat_mul(m, H.mat_inv(m)), H.identity(4))


def test_default_assignment_kills_every_relator():
    for key in ("n31v", "n31u", "n21"):
        a = H.default_assignment(key)
        assert a is not None and a.verify(PR.get(key).presentation)


def test_triangle_classes_admit_no_assignment():
    e = PR.get("n31v")
    assert H.find_assignment(e.presentation, H.N31_TRIANGLE_CLASSES, 3) is None


def test_assignment_refutes_bad_V_image():
    e = PR.get("n31v")
    a = H.default_assignment("n31v")
    # image of V A1 V^-1 A1 under V -> A1 B V
    assert a.refutes(e.word("A1 B V A1 V^-1 B^-1 A1"))
    assert not a.refutes(e.word("A1 B A1 B A1 B A1 B A1 B A1 B"))
