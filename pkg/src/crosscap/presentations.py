"""Catalog of the mapping class group presentations used throughout the package.

Each entry is a :class:`CatalogEntry`: a presentation, a short provenance
note, named distinguished words, and per-relator labels and tags.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .consequence import Representation, Verdict, is_consequence
from .words import Presentation, Word, WordError

REDUNDANT = "redundant"


@dataclass(frozen=True)
class CatalogEntry:
    key: str
    presentation: Presentation
    provenance: str
    distinguished: Mapping[str, Word] = field(default_factory=dict)
    labels: tuple[str, ...] = ()
    tags: Mapping[int, str] = field(default_factory=dict)
    # lemma words that help certify a relator from the others
    hints: Mapping[int, tuple[str, ...]] = field(default_factory=dict)

    def __post_init__(self):
        gens = self.presentation.gens
        for name, w in self.distinguished.items():
            if w.gens != gens:
                raise WordError(f"distinguished word {name} is not over {gens}")
        if self.labels and len(self.labels) != len(self.presentation.relators):
            raise ValueError("one label per relator")

    @property
    def gens(self) -> tuple[str, ...]:
        return self.presentation.gens

    def word(self, text: str) -> Word:
        return self.presentation.word(text)

    def label(self, i: int) -> str:
        return self.labels[i] if self.labels else f"r{i}"

    def without(self, *indices: int) -> Presentation:
        keep = [r for i, r in enumerate(self.presentation.relators) if i not in indices]
        return self.presentation.with_relators(keep, name=f"{self.presentation.name}-minus")


@dataclass(frozen=True)
class SubgroupSpec:
    ambient: CatalogEntry
    generators: tuple[Word, ...]

    def __post_init__(self):
        for w in self.generators:
            if w.gens != self.ambient.gens:
                raise WordError(f"subgroup generator {w} is not over {self.ambient.gens}")


def _entry(key, name, gens, relators, provenance, labels, distinguished=None, tags=None,
           hints=None) -> CatalogEntry:
    pres = Presentation.from_strings(name, gens, relators)
    dist = {k: pres.word(v) for k, v in (distinguished or {}).items()}
    return CatalogEntry(key, pres, provenance, dist, tuple(labels), dict(tags or {}), dict(hints or {}))


def mod_n2() -> CatalogEntry:
    """Mod(N_2), the Klein four-group."""
    return _entry(
        "n2", "mod_n2", ["x", "u"],
        ["x^2", "u^2", "x u x^-1 u^-1"],
        "Mod(N_2) = Z/2 x Z/2",
        ["x^2", "u^2", "[x,u]"],
    )


def mod_n21() -> CatalogEntry:
    """Mod(N_{2,1}) on a crosscap slide ``y`` and the twist ``t`` (= t_a)."""
    return _entry(
        "n21", "mod_n21", ["y", "t"],
        ["y t y^-1 t"],
        "Mod(N_{2,1}): y t_a y^-1 = t_a^-1",
        ["y t y^-1 = t^-1"],
        {"t_b": "y^2"},
    )


_C = "A1^2 A3 B A1^2 A3 B A1^2 A3 B"
_DELTA2 = " ".join(["A1 B A3"] * 4)


def mod_n31_U() -> CatalogEntry:
    return _entry(
        "n31u", "mod_n31_U", ["A1", "A3", "B", "U"],
        [
            "A1 A3 A1^-1 A3^-1",
            "A1 B A1 B^-1 A1^-1 B^-1",
            "A3 B A3 B^-1 A3^-1 B^-1",
            "U A1 U^-1 A1",
            "U B U^-1 A3^-1 B A3",
            f"A3 U A3 U {_inv(_C)}",
            f"U A3 U A3 {_inv(_C)}",
        ],
        "Mod(N_{3,1}) on twists A1, A3, B and a crosscap slide U",
        ["A1 A3 = A3 A1", "A1 B A1 = B A1 B", "A3 B A3 = B A3 B",
         "U A1 U^-1 = A1^-1", "U B U^-1 = A3^-1 B^-1 A3",
         "(A3 U)^2 = C", "(U A3)^2 = C"],
        {"C": _C},
    )


def mod_n31_V() -> CatalogEntry:
    return _entry(
        "n31v", "mod_n31_V", ["A1", "A3", "B", "V"],
        [
            "A1 A3 A1^-1 A3^-1",
            "A1 B A1 B^-1 A1^-1 B^-1",
            "A3 B A3 B^-1 A3^-1 B^-1",
            "V A1 V^-1 A1",
            "V B V^-1 B",
            "V^2 A3 V^-2 A3^-1",
            f"V^2 {_inv(_C)}",
        ],
        "Mod(N_{3,1}) on twists A1, A3, B and V = A3 U",
        ["A1 A3 = A3 A1", "A1 B A1 = B A1 B", "A3 B A3 = B A3 B",
         "V A1 V^-1 = A1^-1", "V B V^-1 = B^-1",
         "V^2 A3 = A3 V^2", "V^2 = C"],
        {"C": _C, "W": "V^-1 A3 V", "A1B3": "A1 B A1 B A1 B", "Delta2": _DELTA2},
        {5: REDUNDANT},
        # C equals the Garside element squared of the A1-B-A3 braid group, which is central
        {5: (f"{_C} {_inv(_DELTA2)}", f"{_DELTA2} A3 {_inv(_DELTA2)} A3^-1")},
    )


def mod_s04() -> CatalogEntry:
    """Twists about the two interior curves of a four-holed sphere.

    Boundary twists are central and irrelevant to comparing words in B and C,
    so the catalog keeps just the free group on B and C.
    """
    return _entry(
        "s04", "mod_s04", ["B", "C"], [],
        "Mod(Sigma_{0,4}) modulo its central boundary twists (free on B, C)",
        [],
    )


def _inv(text: str) -> str:
    toks = text.split()
    out = []
    for tok in reversed(toks):
        name, _, exp = tok.partition("^")
        k = -int(exp) if exp else -1
        out.append(name if k == 1 else f"{name}^{k}")
    return " ".join(out)


@dataclass(frozen=True)
class RelatorTemplate:
    """``lhs = prod factor_i^(k_i)`` with the exponents left symbolic."""

    gens: tuple[str, ...]
    lhs: str
    factors: tuple[str, ...]
    symbols: tuple[str, ...]
    provenance: str

    def instantiate(self, **values: int) -> Word:
        missing = [s for s in self.symbols if s not in values]
        if missing:
            raise ValueError(f"no value for {', '.join(missing)}")
        lhs = Word.parse(self.lhs, self.gens)
        rhs = Word.identity(self.gens)
        for f, s in zip(self.factors, self.symbols):
            rhs = rhs * Word.parse(f, self.gens) ** values[s]
        return lhs * ~rhs

    def __str__(self) -> str:
        rhs = " ".join(f"({f})^{s}" for f, s in zip(self.factors, self.symbols))
        return f"{self.lhs} = {rhs}"


def n4_boundary_template() -> RelatorTemplate:
    """``(U3 B)^2`` in Mod(N_{2,2}) as a product of the two boundary twists."""
    return RelatorTemplate(
        ("U3", "B", "A1'", "A1''"),
        "U3 B U3 B",
        ("A1'", "A1''"),
        ("k1", "k2"),
        "Mod(N_4) relation (U3 B)^2 = 1 cut along A1; exponents not determined",
    )


CATALOG = {
    "n2": mod_n2,
    "n21": mod_n21,
    "n31u": mod_n31_U,
    "n31v": mod_n31_V,
    "s04": mod_s04,
}


def get(key: str) -> CatalogEntry:
    try:
        return CATALOG[key]()
    except KeyError:
        raise KeyError(f"unknown presentation {key!r}; known: {', '.join(CATALOG)}") from None


def subgroup_L() -> SubgroupSpec:
    """The twist subgroup <A1, A3, B, W> of Mod(N_{3,1})."""
    e = mod_n31_V()
    return SubgroupSpec(e, tuple(e.word(s) for s in ("A1", "A3", "B", "V^-1 A3 V")))


def redundancy_check(entry: CatalogEntry, i: int, budget: int) -> Verdict:
    """Is relator ``i`` a consequence of the remaining relators?"""
    rest = entry.without(i)
    lemmas = [rest.word(h) for h in entry.hints.get(i, ())]
    return is_consequence(entry.presentation.relators[i], rest, budget, lemmas=lemmas)


# -- Tietze equivalence -----------------------------------------------------------


def substitute(w: Word, images: Mapping[str, Word], target_gens: Sequence[str]) -> Word:
    """Apply a generator map to ``w``; ``images`` must cover every generator."""
    missing = [g for g in w.gens if g not in images]
    if missing:
        raise WordError(f"map has no image for {', '.join(missing)}")
    out: list[int] = []
    for g, e in w.syllables:
        img = images[w.gens[g]]
        if img.gens != tuple(target_gens):
            raise WordError(f"image of {w.gens[g]} is not over {tuple(target_gens)}")
        base = img.letters if e > 0 else (~img).letters
        out.extend(base * abs(e))
    return Word.from_letters(out, target_gens)


@dataclass(frozen=True)
class TietzeItem:
    direction: str
    label: str
    word: Word
    verdict: Verdict


@dataclass(frozen=True)
class TietzeReport:
    items: tuple[TietzeItem, ...]

    @property
    def passed(self) -> bool:
        return all(i.verdict.certified for i in self.items)

    @property
    def overall(self) -> str:
        if self.passed:
            return "PASS"
        return "FAIL" if any(i.verdict.refuted for i in self.items) else "UNKNOWN"


def _parse_map(m: Mapping[str, Word | str], src: Sequence[str], dst: Sequence[str]) -> dict[str, Word]:
    missing = [g for g in src if g not in m]
    if missing:
        raise WordError(f"map has no image for {', '.join(missing)}")
    return {g: (Word.parse(v, dst) if isinstance(v, str) else v) for g, v in m.items() if g in src}


def tietze_check(P: CatalogEntry, Q: CatalogEntry, fwd: Mapping[str, Word | str],
                 bwd: Mapping[str, Word | str], budget: int, *,
                 reps_P: Mapping[str, Representation] | None = None,
                 reps_Q: Mapping[str, Representation] | None = None) -> TietzeReport:
    """Check that ``fwd`` and ``bwd`` are mutually inverse isomorphisms."""
    f = _parse_map(fwd, P.gens, Q.gens)
    b = _parse_map(bwd, Q.gens, P.gens)
    items = []
    for i, r in enumerate(P.presentation.relators):
        img = substitute(r, f, Q.gens)
        items.append(TietzeItem("fwd", P.label(i), img, is_consequence(img, Q.presentation, budget, representations=reps_Q)))
    for i, r in enumerate(Q.presentation.relators):
        img = substitute(r, b, P.gens)
        items.append(TietzeItem("bwd", Q.label(i), img, is_consequence(img, P.presentation, budget, representations=reps_P)))
    for g in P.gens:
        gw = P.word(g)
        w = substitute(substitute(gw, f, Q.gens), b, P.gens) * ~gw
        items.append(TietzeItem("round-trip", g, w, is_consequence(w, P.presentation, budget, representations=reps_P)))
    for h in Q.gens:
        hw = Q.word(h)
        w = substitute(substitute(hw, b, P.gens), f, Q.gens) * ~hw
        items.append(TietzeItem("round-trip", h, w, is_consequence(w, Q.presentation, budget, representations=reps_Q)))
    return TietzeReport(tuple(items))


U_TO_V = {"A1": "A1", "A3": "A3", "B": "B", "U": "A3^-1 V"}
V_TO_U = {"A1": "A1", "A3": "A3", "B": "B", "V": "A3 U"}
