from pathlib import Path

import pytest

from crosscap import presentations as PR
from crosscap.words import Presentation, WordError

GOLDEN = Path(__file__).parent / "golden" / "catalog.txt"


def render_catalog() -> str:
    out = []
    for key in PR.CATALOG:
        e = PR.get(key)
        out.append(f"# {key}: {e.provenance}")
        out.append(e.presentation.dumps().rstrip())
        for name, w in e.distinguished.items():
            out.append(f"# {name} = {w}")
    return "\n".join(out) + "\n"


def test_catalog_matches_golden_file():
    assert render_catalog() == GOLDEN.read_text()


@pytest.mark.parametrize("key", list(PR.CATALOG))
def test_entries_round_trip_through_text(key):
    p = PR.get(key).presentation
    assert Presentation.loads(p.dumps(), p.name) == p


def test_unknown_key():
    with pytest.raises(KeyError, match="n31v"):
        PR.get("nope")


def test_labels_and_tags():
    e = PR.get("n31v")
    assert e.label(6) == "V^2 = C"
    assert e.tags == {5: PR.REDUNDANT}
    assert len(e.without(5).relators) == 6
    assert e.distinguished["W"] == e.word("V^-1 A3 V")


def test_redundant_relator_is_a_consequence_of_the_rest():
    e = PR.get("n31v")
    assert PR.redundancy_check(e, 5, 200_000).certified


def test_subgroup_L_generators():
    L = PR.subgroup_L()
    assert [str(g) for g in L.generators] == ["A1", "A3", "B", "V^-1 A3 V"]


def test_template_instantiation():
    t = PR.n4_boundary_template()
    w = t.instantiate(k1=1, k2=-2)
    assert str(w) == "U3 B U3 B A1''^2 A1'^-1"
    assert w.exponent_sums() == (2, 2, -1, 2)
    with pytest.raises(ValueError):
        t.instantiate(k1=1)
    assert "k1" in str(t)


def test_substitute():
    e = PR.get("n31v")
    img = {g: e.word(g) for g in e.gens}
    img["V"] = e.word("A1 V")
    assert PR.substitute(e.word("V^-1 B V"), img, e.gens) == e.word("V^-1 A1^-1 B A1 V")
    with pytest.raises(WordError):
        PR.substitute(e.word("V"), {"V": e.word("V")}, e.gens)


def test_tietze_U_to_V_passes():
    rep = PR.tietze_check(PR.get("n31u"), PR.get("n31v"), PR.U_TO_V, PR.V_TO_U, 100_000)
    assert rep.overall == "PASS", [(i.direction, i.label, i.verdict.kind) for i in rep.items]


def test_tietze_detects_a_wrong_map():
    bad = dict(PR.U_TO_V, U="V")
    rep = PR.tietze_check(PR.get("n31u"), PR.get("n31v"), bad, PR.V_TO_U, 2_000)
    assert rep.overall == "FAIL"
