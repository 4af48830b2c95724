import pytest
from hypothesis import given
from hypothesis import strategies as st
from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_form

from crosscap.snf import abelianize


def sympy_invariants(rows, n):
    if not rows:
        return (0,) * n
    m = Matrix(rows)
    snf = smith_normal_form(m, domain=ZZ)
    diag = [abs(snf[i, i]) for i in range(min(snf.shape))]
    nonzero = [d for d in diag if d]
    return tuple(d for d in nonzero if d > 1) + (0,) * (n - len(nonzero))


matrices = st.integers(1, 4).flatmap(lambda n: st.tuples(
    st.just(n), st.lists(st.lists(st.integers(-6, 6), min_size=n, max_size=n), max_size=4)))


@given(matrices)
def test_invariants_match_sympy(data):
    n, rows = data
    assert abelianize(rows, n).invariants == sympy_invariants(rows, n)


@given(matrices, st.lists(st.integers(-5, 5), min_size=4, max_size=4))
def test_relator_rows_map_to_zero(data, vec):
    n, rows = data
    ab = abelianize(rows, n)
    for r in rows:
        assert not any(ab.coordinates(r))
    v = vec[:n]
    w = [a + b for a, b in zip(v, rows[0])] if rows else v
    assert ab.coordinates(v) == ab.coordinates(w)


@pytest.mark.parametrize("rows,n,desc", [
    ([[2, 0], [0, 3]], 2, "Z/6"),
    ([[2, 0], [0, 2]], 2, "Z/2 + Z/2"),
    ([], 2, "Z + Z"),
    ([[1, -1]], 2, "Z"),
])
def test_describe(rows, n, desc):
    assert abelianize(rows, n).describe() == desc
