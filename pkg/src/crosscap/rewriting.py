"""Bounded Knuth-Bendix completion where every rule carries a proof term.

A rule ``lhs -> rhs`` is stored with a proof whose value in the free group is
``lhs * rhs^-1``.  Rewriting a word therefore yields, alongside the normal
form, a product of conjugated relators explaining the difference, so any
"reduces to the empty word" outcome is a checkable certificate.

The completion is bounded (rule count, rule length, pair count).  The
resulting system is sound but usually not confluent; a nonempty normal form
proves nothing.
"""
from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass, field
from typing import Sequence

from . import proofs as P
from .words import Letters, invert_letters

log = logging.getLogger(__name__)


@dataclass
class Rule:
    lhs: Letters
    rhs: Letters
    proof: P.Proof
    alive: bool = True


@dataclass(frozen=True)
class CompletionLimits:
    max_rules: int = 1500
    max_length: int = 16
    max_pairs: int = 400_000


def make_order(ngens: int, weights: Sequence[int] | None = None):
    """Shortlex key over letters; ``weights`` reorders generators (larger = heavier)."""
    rank = list(range(ngens)) if weights is None else list(weights)

    def letter(x: int) -> tuple[int, int]:
        return (rank[abs(x) - 1], 0 if x > 0 else 1)

    def key(w: Letters) -> tuple:
        return (len(w), tuple(letter(x) for x in w))

    return key


@dataclass
class RewritingSystem:
    ngens: int
    relators: list[Letters]
    limits: CompletionLimits = field(default_factory=CompletionLimits)
    weights: Sequence[int] | None = None
    confluent: bool = False
    pairs_examined: int = 0
    discarded: int = 0

    def __post_init__(self):
        self.key = make_order(self.ngens, self.weights)
        self.rules: list[Rule] = []
        self.index: dict[Letters, Rule] = {}
        self.lengths: list[int] = []

    # -- reduction ---------------------------------------------------------

    def _find(self, w: Letters):
        for i in range(len(w)):
            for L in self.lengths:
                if i + L > len(w):
                    break
                rule = self.index.get(w[i:i + L])
                if rule is not None:
                    return i, rule
        return None

    def normalize(self, w: Letters, max_steps: int = 200_000) -> tuple[Letters, P.Proof, int]:
        """Return ``(nf, proof, steps)`` with ``w == value(proof) * nf`` freely."""
        parts: list[P.Proof] = []
        steps = 0
        w = tuple(w)
        while steps < max_steps:
            hit = self._find(w)
            if hit is None:
                break
            i, rule = hit
            parts.append(P.conj(rule.proof, w[:i]))
            w = w[:i] + rule.rhs + w[i + len(rule.lhs):]
            steps += 1
        return w, P.cat(*parts), steps

    # -- completion --------------------------------------------------------

    def _add(self, lhs: Letters, rhs: Letters, proof: P.Proof, pending: deque) -> Rule:
        rule = Rule(lhs, rhs, proof)
        # interreduce: retire rules whose left side contains the new one
        for other in self.rules:
            if not other.alive:
                continue
            if _contains(other.lhs, lhs):
                other.alive = False
                del self.index[other.lhs]
                pending.append((other.lhs, other.rhs, other.proof))
            elif _contains(other.rhs, lhs):
                # rhs of an existing rule becomes reducible: fix it after insertion
                pass
        self.rules.append(rule)
        self.index[lhs] = rule
        self.lengths = sorted({len(r.lhs) for r in self.rules if r.alive})
        for other in self.rules:
            if other.alive and other is not rule and _contains(other.rhs, lhs):
                nf, pf, _ = self.normalize(other.rhs)
                other.proof = P.cat(other.proof, pf)
                other.rhs = nf
        return rule

    def _orient(self, x: Letters, y: Letters, proof: P.Proof, pending: deque) -> Rule | None:
        x, fx, _ = self.normalize(x)
        y, fy, _ = self.normalize(y)
        if x == y:
            return None
        # value(x' y'^-1) = fx^-1 * (x y^-1) * fy
        pf = P.cat(P.inv(fx), proof, fy)
        if self.key(x) < self.key(y):
            x, y, pf = y, x, P.inv(pf)
        if len(x) > self.limits.max_length:
            self.discarded += 1
            return None
        return self._add(x, y, pf, pending)

    def complete(self) -> "RewritingSystem":
        pending: deque = deque()
        for g in range(1, self.ngens + 1):
            for x in (g, -g):
                pending.append(((x, -x), (), P.EMPTY))
        for k, r in enumerate(self.relators):
            for s, rr in ((1, r), (-1, invert_letters(r))):
                n = len(rr)
                for rot in range(n):
                    c = rr[rot:] + rr[:rot]
                    # c = a^-1 rr a with a = rr[:rot]
                    pf = P.conj(P.Leaf(k, s), invert_letters(rr[:rot]))
                    h = (n + 1) // 2
                    u, v = c[:h], c[h:]
                    pending.append((u, invert_letters(v), pf))
        while pending:
            self._orient(*pending.popleft(), pending)
        # critical pairs, processed in rule-creation order
        i = 0
        while i < len(self.rules):
            if len(self.rules) > self.limits.max_rules or self.pairs_examined > self.limits.max_pairs:
                log.debug("completion stopped at %d rules", len(self.rules))
                self.confluent = False
                return self
            r1 = self.rules[i]
            if r1.alive:
                for j in range(i + 1):
                    r2 = self.rules[j]
                    if not r1.alive:
                        break
                    if not r2.alive:
                        continue
                    self._overlaps(r1, r2, pending)
                    if r1 is not r2:
                        self._overlaps(r2, r1, pending)
                    while pending:
                        self._orient(*pending.popleft(), pending)
            i += 1
        # discarded equations leave the system possibly non-confluent
        self.confluent = self.discarded == 0
        return self

    def _overlaps(self, r1: Rule, r2: Rule, pending: deque) -> None:
        a, b = r1.lhs, r2.lhs
        for k in range(1, min(len(a), len(b))):
            if not (r1.alive and r2.alive):
                return
            if a[-k:] != b[:k]:
                continue
            self.pairs_examined += 1
            x, z = a[:-k], b[k:]
            # w = x y z ; w = p1 * (rhs1 z) = conj(p2, x) * (x rhs2)
            left = r1.rhs + z
            right = x + r2.rhs
            pf = P.cat(P.inv(r1.proof), P.conj(r2.proof, x))
            pending.append((left, right, pf))

    def live_rules(self) -> list[Rule]:
        return [r for r in self.rules if r.alive]


def _contains(hay: Letters, needle: Letters) -> bool:
    n = len(needle)
    if n > len(hay):
        return False
    first = needle[0]
    for i in range(len(hay) - n + 1):
        if hay[i] == first and hay[i:i + n] == needle:
            return True
    return False
