import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crosscap import surfaces as SF
from crosscap.surfaces import N, S, Constraint, Decomposition

KLEIN = Constraint.MUST_CONTAIN_KLEIN_BOTTLE_PIECE


def independent_check(d: Decomposition, G: int) -> None:
    """Recompute the glued surface without calling ``glue``."""
    chi = sum(SF.euler(p) for p in d.pieces)
    assert chi == 2 - G
    degree = [0] * len(d.pieces)
    for i, j, _ in d.edges:
        degree[i] += 1
        degree[j] += 1
    assert degree == [p.boundary for p in d.pieces]
    # connectivity by repeated closure
    reach = {0}
    while True:
        grown = reach | {j for i, j, _ in d.edges if i in reach} | {i for i, j, _ in d.edges if j in reach}
        if grown == reach:
            break
        reach = grown
    assert reach == set(range(len(d.pieces)))
    # nonorientable: a nonorientable piece, or some sign choice fails for every assignment
    if all(p.orientable for p in d.pieces):
        for signs in itertools.product((1, -1), repeat=len(d.pieces)):
            ok = all((signs[i] == -signs[j]) if rev else (signs[i] == signs[j]) for i, j, rev in d.edges)
            assert not ok


@pytest.mark.parametrize("text,expect", [("N7", N(7)), ("N3,1", N(3, 1)), ("S2,2", S(2, 2)), (" S0 , 4 ", S(0, 4))])
def test_parse_surface(text, expect):
    assert SF.parse_surface(text) == expect
    assert SF.parse_surface(str(expect)) == expect


@pytest.mark.parametrize("text", ["", "X3", "N", "N-1", "N0", "S2,2,2"])
def test_parse_surface_rejects(text):
    with pytest.raises(ValueError):
        SF.parse_surface(text)


def test_euler_values():
    assert SF.euler(S(0)) == 2 and SF.euler(N(1)) == 1 and SF.euler(N(2)) == 0
    assert SF.euler(N(3, 1)) == -2 and SF.euler(S(2, 2)) == -4


@pytest.mark.parametrize("g", range(1, 21))
def test_double_cover_doubles_euler(g):
    for n in range(0, 11):
        s = N(g, n)
        cov = SF.double_cover(s)
        assert cov == S(g - 1, 2 * n)
        assert SF.euler(cov) == 2 * SF.euler(s)


def test_double_cover_of_orientable_is_an_error():
    with pytest.raises(ValueError):
        SF.double_cover(S(1))
    assert SF.double_cover(N(2)) == S(1)


@given(st.integers(1, 40))
def test_chain_neighborhood(k):
    nu = SF.chain_neighborhood(k)
    assert SF.euler(nu) == 1 - k
    assert nu.boundary == (2 if k % 2 else 1)


def test_chain_neighborhood_examples():
    assert SF.chain_neighborhood(1) == SF.ANNULUS
    assert SF.chain_neighborhood(2) == S(1, 1)
    assert SF.chain_neighborhood(7) == S(3, 2)
    with pytest.raises(ValueError):
        SF.chain_neighborhood(0)


def test_glue_detects_errors():
    with pytest.raises(SF.GluingError):
        SF.glue(Decomposition((SF.PANTS,), ((0, 0, False),)))
    with pytest.raises(SF.GluingError):
        SF.glue(Decomposition((SF.DISC, SF.DISC), ()))


def test_glue_orientability_criterion():
    annulus = SF.ANNULUS
    assert SF.glue(Decomposition((annulus,), ((0, 0, False),))) == S(1)
    assert SF.glue(Decomposition((annulus,), ((0, 0, True),))) == N(2)
    assert SF.glue(Decomposition((SF.MOBIUS, SF.DISC), ((0, 1, False),))) == N(1)


def test_chain_examples():
    r = SF.chain_feasible(7, 7)
    assert r.feasible and sorted(map(str, r.witness.pieces[1:])) == ["N1,1", "S0,1"]
    assert not SF.chain_feasible(7, 9).feasible
    assert SF.chain_feasible(8, 7).feasible and not SF.chain_feasible(8, 9).feasible
    r = SF.chain_feasible(7, 5, KLEIN)
    assert r.feasible and sorted(map(str, r.witness.pieces[1:])) == ["N1,1", "N2,1"]
    assert not SF.chain_feasible(7, 7, KLEIN).feasible


def test_degenerate_ambients_are_rejected():
    for G in (0, 1, 2):
        with pytest.raises(ValueError):
            SF.chain_feasible(G, 1)
        with pytest.raises(ValueError):
            SF.abelian_rank(G)
    with pytest.raises(ValueError):
        SF.max_disjoint_system(4)


@pytest.mark.parametrize("G", range(3, 15))
@pytest.mark.parametrize("constraint", [Constraint.NONE, KLEIN])
def test_feasibility_is_downward_monotone_and_witnesses_validate(G, constraint):
    for k in range(3, G + 3):
        r = SF.chain_feasible(G, k, constraint)
        if r.feasible:
            independent_check(r.witness, G)
            assert SF.chain_feasible(G, k - 2, constraint).feasible


@pytest.mark.parametrize("G", range(3, 15))
def test_max_chain_is_odd(G):
    assert SF.max_chain(G) % 2 == 1


@pytest.mark.parametrize("G", range(5, 13))
def test_disjoint_systems_validate_and_match_rank(G):
    d = SF.max_disjoint_system(G)
    independent_check(d.witness, G)
    assert d.count == SF.abelian_rank(G)
    if G % 2:
        assert d.count == (3 * G - 7) // 2
        assert d.witness.count(N(1, 2)) == 1
    else:
        assert d.with_one_s04 == (3 * G - 8) // 2
        independent_check(d.s04_witness, G)
        assert d.s04_witness.count(S(0, 4)) == 1
        assert all(p in (SF.PANTS, S(0, 4)) for p in d.s04_witness.pieces)


def test_every_system_circle_is_essential():
    # no disc, annulus or Mobius band among the pieces, so no circle bounds one
    for G in range(5, 11):
        d = SF.max_disjoint_system(G)
        for p in d.witness.pieces:
            assert SF.euler(p) < 0


@pytest.mark.parametrize("G,expect", [(5, 4), (6, 6), (7, 7), (9, 10)])
def test_rank_values(G, expect):
    assert SF.abelian_rank(G) == expect


@pytest.mark.parametrize("G", [6, 8, 10, 12])
def test_even_genus_chain_beside_a_klein_bottle(G):
    # a (G-1)-chain whose complement is a disc plus a one-holed Klein bottle
    nu = SF.chain_neighborhood(G - 1)
    d = Decomposition((nu, N(2, 1), SF.DISC), ((0, 1, False), (0, 2, False)))
    independent_check(d, G)
    assert SF.glue(d) == N(G)
    assert SF.max_chain(G, KLEIN) == G - 1
