import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crosscap import presentations as PR
from crosscap.consequence import (Certificate, Certified, RefutedByAbelianization, RefutedByMatrixRep,
                                  Unknown, abelianization_image, bidirectional_search, is_consequence)
from crosscap.detectors import burau, double_cover_h1
from crosscap.homology import default_assignment
from crosscap.words import Presentation, Word, WordError

from strategies import words

S3 = Presentation.from_strings("s3", ("a", "b"), ["a^2", "b^2", "a b a b a b"])
BRAID = Presentation.from_strings("b3", ("a", "b"), ["a b a b^-1 a^-1 b^-1"])


def test_trivial_word_has_empty_certificate():
    v = is_consequence(Word.identity(S3.gens), S3, 10)
    assert isinstance(v, Certified) and len(v.certificate) == 0


@pytest.mark.parametrize("text", ["b a b a b a", "a b a b^-1 a^-1 b^-1", "a b a b a b", "b a^2 b^-1"])
def test_s3_consequences_certify_and_replay(text):
    w = S3.word(text)
    v = is_consequence(w, S3, 10_000)
    assert v.certified
    assert v.certificate.replay(S3) == w


def test_abelianization_refutes_odd_exponent():
    v = is_consequence(S3.word("a"), S3, 100)
    assert isinstance(v, RefutedByAbelianization)
    assert v.invariants == (2,)


def test_representation_refutes_when_abelianization_cannot():
    class Sign:
        def refutes(self, w):  # the permutation sign sees (ab)^1 but not a b a^-1 b^-1
            return False

    class Order3:
        # a -> (0 1), b -> (1 2) in S3; the commutator has order 3
        perms = {1: (1, 0, 2), 2: (0, 2, 1)}

        def refutes(self, w):
            p = (0, 1, 2)
            for x in w.letters:
                q = self.perms[abs(x)]
                p = tuple(q[i] for i in p)
            return p != (0, 1, 2)

    v = is_consequence(S3.word("a b a^-1 b^-1"), S3, 100, representations={"sign": Sign(), "s3": Order3()})
    assert isinstance(v, RefutedByMatrixRep) and v.assignment_id == "s3"


def test_budget_exhaustion_is_unknown():
    # the commutator is nontrivial in B3 but has zero abelian image and no stored representation
    v = is_consequence(BRAID.word("a b a^-1 b^-1"), BRAID, 50)
    assert isinstance(v, Unknown) and v.spent >= 1


def test_errors():
    with pytest.raises(ValueError):
        is_consequence(S3.word("a"), S3, 0)
    with pytest.raises(WordError):
        is_consequence(Word.parse("x", ("x",)), S3, 10)


def test_certificate_replay_detects_tampering():
    w = S3.word("b a b a b a")
    cert = is_consequence(w, S3, 1000).certificate
    assert cert.replay(S3) == w
    forged = Certificate(cert.steps[:-1]) if len(cert) > 1 else Certificate(())
    assert forged.replay(S3) != w


def test_bidirectional_search_finds_short_proof():
    proof, states = bidirectional_search((1, 2, 1, 2, 1, 2), [r.letters for r in S3.relators], 1000)
    assert proof is not None and states > 0


def test_lemmas_are_spliced_back_to_base_relators():
    e = PR.get("n31v")
    v = PR.redundancy_check(e, 5, 200_000)
    assert v.certified
    assert v.certificate.replay(e.without(5)) == e.presentation.relators[5]
    assert all(st.relator < len(e.presentation.relators) - 1 for st in v.certificate.steps)


# -- soundness cross-checks -------------------------------------------------------------

N31 = PR.get("n31v")
REPS = [default_assignment("n31v"), double_cover_h1(), burau()]
twist_words = words(N31.gens, max_size=10)


@settings(max_examples=60)
@given(twist_words, twist_words, st.integers(0, 6))
def test_no_certificate_is_contradicted_by_a_representation(a, g, k):
    # conjugates of relators and their products are certified and every representation agrees
    rels = N31.presentation.relators
    w = (rels[k].conjugate(g)) * (rels[(k + 1) % 7].conjugate(a))
    v = is_consequence(w, N31.presentation, 20_000)
    if v.certified:
        assert v.certificate.replay(N31.presentation) == w
        for rep in REPS:
            assert not rep.refutes(w)


@settings(max_examples=60)
@given(twist_words)
def test_verdicts_never_flip_between_certified_and_refuted(w):
    kinds = set()
    for budget in (50, 2000):
        v = is_consequence(w, N31.presentation, budget, representations={"mod2": REPS[0]})
        if v.certified:
            kinds.add("C")
        if v.refuted:
            kinds.add("R")
    assert kinds != {"C", "R"}


@given(words(S3.gens, 12))
def test_abelian_image_is_a_homomorphism(w):
    v = w * w
    a = abelianization_image(w, S3).coordinates[0]
    assert abelianization_image(v, S3).coordinates[0] == (2 * a) % 2
