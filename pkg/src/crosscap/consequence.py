"""Deciding (boundedly) whether a word lies in the normal closure of relators.

``is_consequence`` tries, in order:

1. the abelianization (a nonzero class refutes),
2. any supplied representations (a nonidentity image refutes),
3. rewriting with a bounded, proof-carrying Knuth-Bendix system,
4. bidirectional breadth-first search over relator substitutions.

Every ``Certified`` verdict carries a :class:`Certificate` that is replayed
before it is returned.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Protocol, Sequence

from . import proofs as P
from .rewriting import CompletionLimits, RewritingSystem
from .snf import Abelianization, abelianize
from .words import Letters, Presentation, Word, WordError, free_reduce, invert_letters, shortlex_key

DEFAULT_LENGTH_CAP = 64


@dataclass(frozen=True)
class Step:
    """Insert ``conjugator * r^(+-1) * conjugator^-1`` at ``position`` and reduce."""

    position: int
    relator: int
    conjugator: Word
    inverted: bool


@dataclass(frozen=True)
class Certificate:
    steps: tuple[Step, ...]

    def __len__(self) -> int:
        return len(self.steps)

    def replay(self, pres: Presentation) -> Word:
        cur: Letters = ()
        for st in self.steps:
            r = pres.relators[st.relator].letters
            if st.inverted:
                r = invert_letters(r)
            c = st.conjugator.letters
            if not 0 <= st.position <= len(cur):
                raise ValueError(f"step position {st.position} outside word of length {len(cur)}")
            piece = c + r + invert_letters(c)
            cur = free_reduce(cur[:st.position] + piece + cur[st.position:])
        return Word.from_letters(cur, pres.gens)

    @classmethod
    def from_factors(cls, factors: list[P.Factor], pres: Presentation) -> "Certificate":
        steps = []
        length = 0
        cur: Letters = ()
        rel = [r.letters for r in pres.relators]
        for c, k, s in factors:
            steps.append(Step(length, k, Word.from_letters(c, pres.gens), s < 0))
            r = rel[k] if s > 0 else invert_letters(rel[k])
            cur = free_reduce(cur + c + r + invert_letters(c))
            length = len(cur)
        return cls(tuple(steps))


class Verdict:
    kind = "?"
    certified = False
    refuted = False


@dataclass(frozen=True)
class Certified(Verdict):
    certificate: Certificate
    states: int = 0
    kind = "CERTIFIED"
    certified = True


@dataclass(frozen=True)
class RefutedByAbelianization(Verdict):
    witness: tuple[int, ...]
    invariants: tuple[int, ...]
    kind = "REFUTED_ABELIANIZATION"
    refuted = True


@dataclass(frozen=True)
class RefutedByMatrixRep(Verdict):
    assignment_id: str
    kind = "REFUTED_MATRIX_REP"
    refuted = True


@dataclass(frozen=True)
class Unknown(Verdict):
    spent: int
    kind = "UNKNOWN"


class Representation(Protocol):
    def refutes(self, word: Word) -> bool: ...


# -- abelianization -----------------------------------------------------------


@dataclass(frozen=True)
class AbelianImage:
    coordinates: tuple[int, ...]
    invariants: tuple[int, ...]

    @property
    def is_zero(self) -> bool:
        return not any(self.coordinates)


@lru_cache(maxsize=64)
def _abelianization(pres: Presentation) -> Abelianization:
    rows = [list(r.exponent_sums()) for r in pres.relators]
    return abelianize(rows, len(pres.gens))


def abelianization(pres: Presentation) -> Abelianization:
    return _abelianization(pres)


def abelianization_image(w: Word, pres: Presentation) -> AbelianImage:
    _same_gens(w, pres)
    ab = _abelianization(pres)
    return AbelianImage(ab.coordinates(w.exponent_sums()), ab.invariants)


# -- rewriting engine -------------------------------------------------------------


@lru_cache(maxsize=32)
def _engine(ngens: int, relators: tuple[Letters, ...], limits: CompletionLimits) -> RewritingSystem:
    return RewritingSystem(ngens, list(relators), limits).complete()


def rewriting_engine(pres: Presentation, limits: CompletionLimits = CompletionLimits()) -> RewritingSystem:
    return _engine(len(pres.gens), tuple(r.letters for r in pres.relators), limits)


# -- bidirectional search ---------------------------------------------------------


class _Pieces:
    """All relator substitutions ``u -> v^-1`` with ``u v`` a cyclic conjugate of ``r^(+-1)``."""

    def __init__(self, relators: list[Letters]):
        self.by_first: dict[int, list[tuple[Letters, Letters, P.Proof]]] = {}
        self.insertions: list[tuple[Letters, P.Proof]] = []
        seen = set()
        for k, r in enumerate(relators):
            for s, rr in ((1, r), (-1, invert_letters(r))):
                for rot in range(len(rr)):
                    c = rr[rot:] + rr[:rot]
                    if c in seen:
                        continue
                    seen.add(c)
                    pf = P.conj(P.Leaf(k, s), invert_letters(rr[:rot]))
                    self.insertions.append((invert_letters(c), pf))
                    for i in range(1, len(c) + 1):
                        u, v = c[:i], c[i:]
                        self.by_first.setdefault(u[0], []).append((u, invert_letters(v), pf))

    def moves(self, x: Letters, insertions: bool):
        """Yield ``(x2, proof)`` with ``x == value(proof) * x2``."""
        n = len(x)
        for pos in range(n):
            for u, vinv, pf in self.by_first.get(x[pos], ()):
                if x[pos:pos + len(u)] == u:
                    yield free_reduce(x[:pos] + vinv + x[pos + len(u):]), P.conj(pf, x[:pos])
        if insertions:
            for pos in range(n + 1):
                for cinv, pf in self.insertions:
                    # x = p s -> p c^-1 s ; x = (p c p^-1) (p c^-1 s)
                    yield free_reduce(x[:pos] + cinv + x[pos:]), P.conj(pf, x[:pos])


def _trace(table: dict, x: Letters) -> list[P.Proof]:
    """Proofs along the parent chain, ordered from the root towards ``x``."""
    out = []
    while table[x] is not None:
        parent, pf = table[x]
        out.append(pf)
        x = parent
    out.reverse()
    return out


def bidirectional_search(w: Letters, relators: list[Letters], budget: int,
                         length_cap: int = DEFAULT_LENGTH_CAP,
                         insertions: bool = True) -> tuple[P.Proof | None, int]:
    """Search for a proof that ``w`` is trivial.  Returns ``(proof or None, states)``.

    Write ``w = u v^-1`` and grow breadth-first balls around ``u`` and ``v``
    until they meet.  Levels are expanded in shortlex order.
    """
    pieces = _Pieces(relators)
    h = (len(w) + 1) // 2
    u, v = w[:h], invert_letters(w[h:])
    # table: word -> (parent, proof) with parent == value(proof) * word
    sides = [{u: None}, {v: None}]
    frontiers = [[u], [v]]
    states = 2
    if u == v:
        return P.EMPTY, states
    while frontiers[0] and frontiers[1] and states < budget:
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        table, other = sides[side], sides[1 - side]
        nxt = []
        for x in sorted(frontiers[side], key=shortlex_key):
            for y, pf in pieces.moves(x, insertions):
                if y in table or len(y) > length_cap:
                    continue
                table[y] = (x, pf)
                states += 1
                if y in other:
                    a = _trace(sides[0], y)
                    b = _trace(sides[1], y)
                    # u = prod(a) * y and v = prod(b) * y, so u v^-1 = prod(a) prod(b)^-1
                    return P.cat(*a, P.inv(P.cat(*b))), states
                nxt.append(y)
                if states >= budget:
                    return None, states
        frontiers[side] = nxt
    return None, states


# -- the main entry point ---------------------------------------------------------


def _same_gens(w: Word, pres: Presentation) -> None:
    if w.gens != pres.gens:
        raise WordError(f"word over {w.gens} but presentation {pres.name} is over {pres.gens}")


def is_consequence(w: Word, pres: Presentation, budget: int, *,
                   representations: Mapping[str, Representation] | None = None,
                   lemmas: Sequence[Word] = (),
                   length_cap: int = DEFAULT_LENGTH_CAP,
                   insertions: bool = True,
                   limits: CompletionLimits = CompletionLimits()) -> Verdict:
    """Bounded test of whether ``w`` is trivial in the group presented by ``pres``.

    ``lemmas`` are hint words.  Each is first certified on its own (earlier
    lemmas may be used) and then acts as an extra relator; its certificate is
    spliced into the final one, which mentions only ``pres.relators``.
    Lemmas that do not certify within the budget are skipped.
    """
    if budget <= 0:
        raise ValueError("budget must be positive")
    _same_gens(w, pres)
    if not w:
        return Certified(Certificate(()), 0)
    img = abelianization_image(w, pres)
    if not img.is_zero:
        return RefutedByAbelianization(img.coordinates, img.invariants)
    for name, rep in (representations or {}).items():
        if rep.refutes(w):
            return RefutedByMatrixRep(name)

    spent = 0
    proven: list[tuple[Word, list[P.Factor]]] = []
    for lem in lemmas:
        _same_gens(lem, pres)
        if spent >= budget or not lem or not abelianization_image(lem, pres).is_zero:
            continue
        ext = pres.with_relators(pres.relators + tuple(x for x, _ in proven))
        factors, used = _search(lem, ext, budget - spent, length_cap, insertions, limits)
        spent += used
        if factors is not None:
            proven.append((lem, _splice(factors, len(pres.relators), [f for _, f in proven])))
    if spent >= budget:
        return Unknown(spent)
    ext = pres.with_relators(pres.relators + tuple(x for x, _ in proven))
    factors, used = _search(w, ext, budget - spent, length_cap, insertions, limits)
    spent += used
    if factors is None:
        return Unknown(spent)
    factors = _splice(factors, len(pres.relators), [f for _, f in proven])
    cert = Certificate.from_factors(factors, pres)
    if cert.replay(pres) != w:  # pragma: no cover - would be an engine bug
        raise AssertionError(f"certificate for {w} failed to replay")
    return Certified(cert, spent)


def _search(w: Word, pres: Presentation, budget: int, length_cap: int, insertions: bool,
            limits: CompletionLimits) -> tuple[list[P.Factor] | None, int]:
    rel = [r.letters for r in pres.relators]
    engine = rewriting_engine(pres, limits)
    nf, proof, spent = engine.normalize(w.letters, max_steps=budget)
    if nf:
        if spent >= budget:
            return None, spent
        tail, states = bidirectional_search(nf, rel, budget - spent, length_cap, insertions)
        spent += states
        if tail is None:
            return None, spent
        proof = P.cat(proof, tail)
    return P.expand(proof), spent


def _splice(factors: list[P.Factor], nbase: int, lemma_factors: list[list[P.Factor]]) -> list[P.Factor]:
    """Replace factors that use lemma relators (index >= nbase) by the lemma's own factors."""
    out: list[P.Factor] = []
    for c, k, s in factors:
        if k < nbase:
            out.append((c, k, s))
            continue
        sub = lemma_factors[k - nbase]
        if s < 0:
            sub = [(c2, k2, -s2) for c2, k2, s2 in reversed(sub)]
        out.extend((free_reduce(c + c2), k2, s2) for c2, k2, s2 in sub)
    return out
