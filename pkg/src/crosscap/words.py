"""Free-group words over named generators.

Internally a word is a tuple of nonzero integer *letters*: generator ``i``
is the letter ``i + 1`` and its inverse is ``-(i + 1)``.  The public
:class:`Word` type stores syllables ``(generator_id, exponent)`` and is always
freely reduced.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

Letters = tuple[int, ...]


class WordError(ValueError):
    pass


def free_reduce(letters: Iterable[int]) -> Letters:
    out: list[int] = []
    for x in letters:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def invert_letters(letters: Sequence[int]) -> Letters:
    return tuple(-x for x in reversed(letters))


def letters_to_syllables(letters: Sequence[int]) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for x in letters:
        g, s = abs(x) - 1, (1 if x > 0 else -1)
        if out and out[-1][0] == g:
            out[-1][1] += s
            if out[-1][1] == 0:
                out.pop()
        else:
            out.append([g, s])
    return tuple((g, e) for g, e in out)


def syllables_to_letters(syllables: Iterable[tuple[int, int]]) -> Letters:
    raw: list[int] = []
    for g, e in syllables:
        x = g + 1 if e > 0 else -(g + 1)
        raw.extend([x] * abs(e))
    return free_reduce(raw)


def letter_key(x: int) -> tuple[int, int]:
    """Order letters by generator id, positive before inverse."""
    return (abs(x) - 1, 0 if x > 0 else 1)


def shortlex_key(letters: Sequence[int]) -> tuple:
    return (len(letters), tuple(letter_key(x) for x in letters))


@dataclass(frozen=True)
class Word:
    """A freely reduced word; ``gens`` names the generators it lives over."""

    syllables: tuple[tuple[int, int], ...]
    gens: tuple[str, ...] = field(compare=True)

    def __post_init__(self):
        prev = None
        for g, e in self.syllables:
            if not 0 <= g < len(self.gens):
                raise WordError(f"generator id {g} not among {self.gens}")
            if e == 0:
                raise WordError("zero exponent in syllable")
            if g == prev:
                raise WordError("adjacent syllables share a generator; reduce first")
            prev = g

    @classmethod
    def from_letters(cls, letters: Iterable[int], gens: Sequence[str]) -> "Word":
        return cls(letters_to_syllables(free_reduce(letters)), tuple(gens))

    @classmethod
    def identity(cls, gens: Sequence[str]) -> "Word":
        return cls((), tuple(gens))

    @classmethod
    def parse(cls, text: str, gens: Sequence[str]) -> "Word":
        return cls.from_letters(parse_letters(text, gens), gens)

    @cached_property
    def letters(self) -> Letters:
        return syllables_to_letters(self.syllables)

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.syllables)

    def __bool__(self) -> bool:
        return bool(self.syllables)

    def _check(self, other: "Word") -> None:
        if self.gens != other.gens:
            raise WordError(f"generator sets differ: {self.gens} vs {other.gens}")

    def __mul__(self, other: "Word") -> "Word":
        self._check(other)
        return Word.from_letters(self.letters + other.letters, self.gens)

    def __invert__(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.syllables)), self.gens)

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else ~self
        return Word.from_letters(base.letters * abs(n), self.gens)

    def conjugate(self, g: "Word") -> "Word":
        """Return ``g * self * g^-1``."""
        return g * self * ~g

    def exponent_sums(self) -> tuple[int, ...]:
        v = [0] * len(self.gens)
        for g, e in self.syllables:
            v[g] += e
        return tuple(v)

    def generators_used(self) -> set[int]:
        return {g for g, _ in self.syllables}

    def __str__(self) -> str:
        return format_syllables(self.syllables, self.gens)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"


def reduce(raw: Iterable[tuple[int, int]], gens: Sequence[str]) -> Word:
    """Freely reduce a raw syllable sequence (exponents may be zero or repeat)."""
    return Word.from_letters(syllables_to_letters((g, e) for g, e in raw if e), gens)


def multiply(u: Word, v: Word) -> Word:
    return u * v


def invert(u: Word) -> Word:
    return ~u


def conjugate(u: Word, g: Word) -> Word:
    return u.conjugate(g)


def format_syllables(syllables: Sequence[tuple[int, int]], gens: Sequence[str]) -> str:
    if not syllables:
        return "1"
    return " ".join(gens[g] if e == 1 else f"{gens[g]}^{e}" for g, e in syllables)


def format_letters(letters: Sequence[int], gens: Sequence[str]) -> str:
    return format_syllables(letters_to_syllables(letters), gens)


def parse_letters(text: str, gens: Sequence[str]) -> Letters:
    """Parse ``A1 B^-1 V^2`` style text.  ``1`` or an empty string is the identity."""
    index = {name: i for i, name in enumerate(gens)}
    raw: list[int] = []
    for tok in text.split():
        if tok == "1":
            continue
        name, sep, exp = tok.partition("^")
        if name not in index:
            raise WordError(f"unknown generator {name!r} in {text!r}")
        k = 1
        if sep:
            try:
                k = int(exp)
            except ValueError:
                raise WordError(f"bad exponent in token {tok!r}") from None
            if k == 0:
                raise WordError(f"zero exponent in token {tok!r}")
        x = index[name] + 1
        raw.extend([x if k > 0 else -x] * abs(k))
    return free_reduce(raw)


@dataclass(frozen=True)
class Presentation:
    name: str
    gens: tuple[str, ...]
    relators: tuple[Word, ...]

    def __post_init__(self):
        if len(set(self.gens)) != len(self.gens):
            raise WordError(f"duplicate generator names in {self.gens}")
        for r in self.relators:
            if r.gens != self.gens:
                raise WordError(f"relator {r} is not over {self.gens}")
            if not r:
                raise WordError("relators must be nonempty")

    @classmethod
    def from_strings(cls, name: str, gens: Sequence[str], relators: Iterable[str]) -> "Presentation":
        gens = tuple(gens)
        return cls(name, gens, tuple(Word.parse(r, gens) for r in relators))

    def word(self, text: str) -> Word:
        return Word.parse(text, self.gens)

    def with_relators(self, relators: Iterable[Word], name: str | None = None) -> "Presentation":
        return Presentation(name or self.name, self.gens, tuple(relators))

    def dumps(self) -> str:
        lines = ["generators: " + " ".join(self.gens)]
        lines += [f"relator: {r}" for r in self.relators]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str, name: str = "file") -> "Presentation":
        gens: tuple[str, ...] | None = None
        rels: list[str] = []
        for lineno, line in enumerate(text.splitlines(), 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            key, sep, rest = line.partition(":")
            if not sep:
                raise WordError(f"line {lineno}: expected 'key: value'")
            key = key.strip()
            if key == "generators":
                gens = tuple(rest.split())
            elif key == "relator":
                if gens is None:
                    raise WordError(f"line {lineno}: relator before generators header")
                rels.append(rest)
            else:
                raise WordError(f"line {lineno}: unknown key {key!r}")
        if gens is None:
            raise WordError("missing 'generators:' header")
        return cls.from_strings(name, gens, rels)
