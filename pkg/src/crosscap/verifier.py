"""Checking candidate endomorphisms of catalog presentations.

An endomorphism is given by generator images.  It is a homomorphism exactly
when every relator image is trivial, which ``check_endomorphism`` tests with
:func:`is_consequence`.  For maps of Mod(N_{3,1}) fixing the twists and
sending ``V`` to ``D V``, the outer class is read off from ``D``.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Mapping, Sequence

import numpy as np

from . import presentations as PR
from .consequence import Certified, Representation, Verdict, is_consequence
from .detectors import burau, detect, double_cover_h1, validated
from .homology import default_assignment
from .words import Word, WordError


@dataclass(frozen=True)
class EndomorphismSpec:
    entry: PR.CatalogEntry
    images: Mapping[str, Word]
    name: str = "E"

    def __post_init__(self):
        gens = self.entry.gens
        missing = [g for g in gens if g not in self.images]
        extra = [g for g in self.images if g not in gens]
        if missing or extra:
            raise WordError(f"images must cover exactly {gens}; missing {missing}, unknown {extra}")
        for g, w in self.images.items():
            if w.gens != gens:
                raise WordError(f"image of {g} is not over {gens}")

    @classmethod
    def from_strings(cls, entry: PR.CatalogEntry, images: Mapping[str, str], name: str = "E"):
        return cls(entry, {g: entry.word(v) for g, v in images.items()}, name)

    @classmethod
    def identity(cls, entry: PR.CatalogEntry) -> "EndomorphismSpec":
        return cls(entry, {g: entry.word(g) for g in entry.gens}, "id")

    def apply(self, w: Word) -> Word:
        return PR.substitute(w, self.images, self.entry.gens)

    def compose(self, other: "EndomorphismSpec") -> "EndomorphismSpec":
        """``self o other``: apply ``other`` first."""
        if other.entry.key != self.entry.key:
            raise WordError("cannot compose maps of different presentations")
        return EndomorphismSpec(self.entry, {g: self.apply(w) for g, w in other.images.items()},
                                f"{self.name}o{other.name}")


def parse_map(text: str, entry: PR.CatalogEntry, name: str = "E") -> EndomorphismSpec:
    """Lines ``GEN -> word``; ``#`` starts a comment."""
    images: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        lhs, sep, rhs = line.partition("->")
        if not sep:
            raise WordError(f"line {lineno}: expected 'GEN -> word'")
        gen = lhs.strip()
        if gen in images:
            raise WordError(f"line {lineno}: second image for {gen}")
        images[gen] = rhs.strip()
    return EndomorphismSpec.from_strings(entry, images, name)


def phi(entry: PR.CatalogEntry | None = None, m: int = 1) -> EndomorphismSpec:
    """Fix A1, A3, B and send ``V`` to ``(A1 B)^(3m) V``."""
    entry = entry or PR.get("n31v")
    images = {g: g for g in entry.gens}
    images["V"] = f"{' '.join(['A1 B'] * (3 * abs(m)))} V" if m >= 0 else \
        f"{' '.join(['B^-1 A1^-1'] * (3 * -m))} V"
    return EndomorphismSpec.from_strings(entry, images, f"phi{m}")


# -- representations -------------------------------------------------------------------


def refuting_representations(entry: PR.CatalogEntry) -> dict[str, Representation]:
    """Every stored representation of ``entry`` that kills all its relators.

    A representation that fails a relator is dropped here, so no refutation
    ever rests on an unchecked matrix.
    """
    reps: dict[str, Representation] = {}
    mod2 = default_assignment(entry.key)
    if mod2 is not None and mod2.verify(entry.presentation):
        reps[mod2.name] = mod2
    if entry.key == "n31v":
        for rep in (double_cover_h1(), burau()):
            reps[rep.name] = validated(rep, entry.presentation)
    if entry.key == "s04":
        reps[SANOV.name] = SANOV
    return reps


class Sanov:
    """B -> [[1,2],[0,1]], C -> [[1,0],[2,1]]: a faithful image of the free group on B, C."""

    name = "sanov"
    _mats = {"B": np.array([[1, 2], [0, 1]], dtype=object), "C": np.array([[1, 0], [2, 1]], dtype=object)}
    _invs = {"B": np.array([[1, -2], [0, 1]], dtype=object), "C": np.array([[1, 0], [-2, 1]], dtype=object)}

    def image(self, w: Word) -> np.ndarray:
        out = np.eye(2, dtype=object)
        for g, e in w.syllables:
            m = (self._mats if e > 0 else self._invs)[w.gens[g]]
            for _ in range(abs(e)):
                out = out.dot(m)
        return out

    def refutes(self, w: Word) -> bool:
        return not np.array_equal(self.image(w), np.eye(2, dtype=object))


SANOV = Sanov()


# -- checking endomorphisms -----------------------------------------------------------------


@dataclass(frozen=True)
class RelatorCheck:
    label: str
    relator: Word
    image: Word
    verdict: Verdict

    def describe(self) -> dict:
        out = {"relator": self.label, "image": str(self.image), "verdict": self.verdict.kind}
        if isinstance(self.verdict, Certified):
            out["certificate_length"] = len(self.verdict.certificate)
            out["states"] = self.verdict.states
        elif self.verdict.refuted:
            out["witness"] = getattr(self.verdict, "assignment_id", None) or list(self.verdict.witness)
        else:
            out["states"] = self.verdict.spent
        return out


@dataclass(frozen=True)
class EndomorphismReport:
    spec: EndomorphismSpec
    checks: tuple[RelatorCheck, ...]

    @property
    def overall(self) -> str:
        if all(c.verdict.certified for c in self.checks):
            return "CERTIFIED"
        if any(c.verdict.refuted for c in self.checks):
            return "REFUTED"
        return "UNKNOWN"

    @property
    def states(self) -> int:
        return sum(getattr(c.verdict, "states", 0) or getattr(c.verdict, "spent", 0) for c in self.checks)


def check_endomorphism(E: EndomorphismSpec, budget: int,
                       representations: Mapping[str, Representation] | None = None) -> EndomorphismReport:
    reps = refuting_representations(E.entry) if representations is None else dict(representations)
    pres = E.entry.presentation
    checks = []
    for i, r in enumerate(pres.relators):
        img = E.apply(r)
        verdict = is_consequence(img, pres, budget, representations=reps,
                                 lemmas=_lemmas(E.entry, img))
        checks.append(RelatorCheck(E.entry.label(i), r, img, verdict))
    return EndomorphismReport(E, tuple(checks))


def _lemmas(entry: PR.CatalogEntry, img: Word) -> list[Word]:
    # centrality of the chain's full twist helps the search with V-images of relators
    if entry.key != "n31v":
        return []
    d = entry.distinguished["A1B3"]
    return [d * entry.word("A1") * ~d * entry.word("A1^-1"),
            d * entry.word("B") * ~d * entry.word("B^-1")]


# -- the odd invariant --------------------------------------------------------------------


class InvariantKind(enum.Enum):
    ODD = "odd"
    EVEN = "even"


class NotInCanonicalForm(ValueError):
    pass


@dataclass(frozen=True)
class OddInvariant:
    """``E(V) = C^n (A1 B)^(3m) V``; the class of ``E`` in Out is recorded by ``m``."""

    m: int
    n: int = 0
    kind = InvariantKind.ODD

    def __add__(self, o: "OddInvariant") -> "OddInvariant":
        return OddInvariant(self.m + o.m, self.n + o.n)


def canonical_word(entry: PR.CatalogEntry, n: int, m: int) -> Word:
    c, d = entry.distinguished["C"], entry.distinguished["A1B3"]
    return c ** n * d ** m


def extract_out_invariant(E: EndomorphismSpec, budget: int, window: int = 8) -> OddInvariant:
    entry = E.entry
    if entry.key != "n31v":
        raise ValueError("the odd invariant is defined for mod_n31_V maps")
    for g in ("A1", "A3", "B"):
        if E.images[g] != entry.word(g):
            raise ValueError(f"map does not fix {g}")
    v = entry.word("V")
    D = E.images["V"] * ~v
    if "V" in {D.gens[g] for g in D.generators_used()}:
        raise NotInCanonicalForm(f"E(V) V^-1 = {D} is not a twist word")
    reps = refuting_representations(entry)
    pres = entry.presentation
    found = None
    cells = sorted(((n, m) for n in range(-window, window + 1) for m in range(-window, window + 1)),
                   key=lambda p: (abs(p[0]) + abs(p[1]), p))
    for n, m in cells:
        verdict = is_consequence(D * ~canonical_word(entry, n, m), pres, budget, representations=reps)
        if verdict.certified:
            found = (n, m)
            break
    if found is None:
        raise NotInCanonicalForm(f"{D} is not C^n (A1 B)^(3m) for |n|, |m| <= {window}")
    n, m = found
    # V D V^-1 = D^-1, with C central, forces C^(2n) = 1 and hence n = 0
    rel = v * D * ~v * D
    verdict = is_consequence(rel, pres, budget, representations=reps, lemmas=_lemmas(entry, rel))
    if not verdict.certified:
        raise NotInCanonicalForm(f"could not certify V D V^-1 = D^-1 ({verdict.kind})")
    if n != 0:
        raise AssertionError(f"found C-exponent n = {n}; it must vanish")
    return OddInvariant(m, n)


def check_non_inner(E: EndomorphismSpec, budget: int) -> bool:
    """Is the class of ``E`` nontrivial in Out?"""
    entry = E.entry
    inv = extract_out_invariant(E, budget)
    if inv.m == 0:
        return False
    pres = entry.presentation
    if not detect(entry.distinguished["A1B3"] ** inv.m, pres).nontrivial:
        return False
    c, v = entry.distinguished["C"], entry.word("V")
    return is_consequence(~c * v * c * ~v, pres, budget).certified


def nontriviality_detector(w: Word) -> bool:
    return detect(w, PR.get("n31v").presentation).nontrivial


# -- the even invariant -------------------------------------------------------------------


@dataclass(frozen=True)
class EvenInvariant:
    """Exponents ``(n1, n1', n2, n2')`` of the boundary twists and a word in ``B, C``."""

    n1: int
    n1p: int
    n2: int
    n2p: int
    w: Word = field(default_factory=lambda: Word.identity(("B", "C")))
    kind = InvariantKind.EVEN

    def __post_init__(self):
        for x in (self.n1, self.n1p, self.n2, self.n2p):
            if not isinstance(x, int) or isinstance(x, bool):
                raise TypeError("exponents must be integers")
        if self.w.gens != ("B", "C"):
            raise WordError(f"w must be over (B, C), got {self.w.gens}")

    @property
    def exponents(self) -> tuple[int, int, int, int]:
        return (self.n1, self.n1p, self.n2, self.n2p)

    def compose(self, o: "EvenInvariant") -> "EvenInvariant":
        return EvenInvariant(*(a + b for a, b in zip(self.exponents, o.exponents)), self.w * o.w)

    def equals(self, o: "EvenInvariant", budget: int = 10_000) -> Verdict | bool:
        """Exponents compared exactly; the words through the four-holed sphere presentation."""
        if self.exponents != o.exponents:
            return False
        entry = PR.get("s04")
        return is_consequence(self.w * ~o.w, entry.presentation, budget,
                              representations=refuting_representations(entry))


def extract_even_invariant(exponents: Sequence[int], w: Word | str) -> EvenInvariant:
    if len(exponents) != 4:
        raise ValueError("expected four exponents (n1, n1', n2, n2')")
    if isinstance(w, str):
        w = Word.parse(w, ("B", "C"))
    return EvenInvariant(*exponents, w)
