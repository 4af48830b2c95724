"""Todd-Coxeter coset enumeration (HLT strategy).

Cosets are numbered in order of definition; after enumeration the live
cosets are renumbered in that order, so the final table depends only on the
inputs.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .words import Letters


class _Overflow(Exception):
    pass


@dataclass(frozen=True)
class CosetTable:
    index: int
    ngens: int
    # rows[c][col] with col = 2*g for generator g and 2*g+1 for its inverse
    rows: tuple[tuple[int, ...], ...]
    defined: int

    def act(self, c: int, letters: Letters) -> int:
        for x in letters:
            c = self.rows[c][_col(x)]
        return c

    def permutation(self, g: int) -> tuple[int, ...]:
        return tuple(row[2 * g] for row in self.rows)


@dataclass(frozen=True)
class Overflow:
    max_cosets: int
    defined: int
    index = None


def _col(x: int) -> int:
    return 2 * (abs(x) - 1) + (x < 0)


class _Enumerator:
    def __init__(self, ngens: int, max_cosets: int):
        self.ncols = 2 * ngens
        self.max = max_cosets
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.p = [0]
        self.defined = 1

    def live(self, c: int) -> bool:
        return self.p[c] == c

    def rep(self, c: int) -> int:
        root = c
        while self.p[root] != root:
            root = self.p[root]
        while self.p[c] != root:
            self.p[c], c = root, self.p[c]
        return root

    def define(self, c: int, col: int) -> None:
        if len(self.table) >= self.max:
            raise _Overflow
        new = len(self.table)
        self.table.append([None] * self.ncols)
        self.p.append(new)
        self.defined += 1
        self.table[c][col] = new
        self.table[new][col ^ 1] = c

    def _merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.rep(a), self.rep(b)
        if a != b:
            lo, hi = min(a, b), max(a, b)
            self.p[hi] = lo
            queue.append(hi)

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = self.table[e][x]
                if f is None:
                    continue
                self.table[f][x ^ 1] = None
                e1, f1 = self.rep(e), self.rep(f)
                if self.table[e1][x] is not None:
                    self._merge(f1, self.table[e1][x], queue)
                elif self.table[f1][x ^ 1] is not None:
                    self._merge(e1, self.table[f1][x ^ 1], queue)
                else:
                    self.table[e1][x] = f1
                    self.table[f1][x ^ 1] = e1

    def scan_and_fill(self, c: int, w: Letters) -> None:
        t = self.table
        f, b = c, c
        i, j = 0, len(w) - 1
        while True:
            while i <= j and t[f][_col(w[i])] is not None:
                f = t[f][_col(w[i])]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][_col(-w[j])] is not None:
                b = t[b][_col(-w[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][_col(w[i])] = b
                t[b][_col(-w[i])] = f
                return
            self.define(f, _col(w[i]))


def coset_enumerate(ngens: int, relators: Sequence[Letters], subgroup: Sequence[Letters],
                    max_cosets: int = 10_000) -> CosetTable | Overflow:
    """Index of ``<subgroup>`` in ``<gens | relators>``, or :class:`Overflow`."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be at least 1")
    en = _Enumerator(ngens, max_cosets)
    try:
        for w in subgroup:
            if w:
                en.scan_and_fill(0, tuple(w))
        c = 0
        while c < len(en.table):
            if en.live(c):
                for r in relators:
                    en.scan_and_fill(c, tuple(r))
                    if not en.live(c):
                        break
            if en.live(c):
                for x in range(en.ncols):
                    if en.table[c][x] is None:
                        en.define(c, x)
            c += 1
    except _Overflow:
        return Overflow(max_cosets, en.defined)
    live = [c for c in range(len(en.table)) if en.live(c)]
    num = {c: i for i, c in enumerate(live)}
    rows = tuple(tuple(num[en.table[c][x]] for x in range(en.ncols)) for c in live)
    table = CosetTable(len(live), ngens, rows, en.defined)
    verify_table(table, relators, subgroup)
    return table


def verify_table(table: CosetTable, relators: Sequence[Letters], subgroup: Sequence[Letters]) -> None:
    """Raise ``AssertionError`` unless ``table`` is a complete, consistent coset table."""
    n = table.index
    for c, row in enumerate(table.rows):
        for x, d in enumerate(row):
            _require(0 <= d < n, "undefined entry")
            _require(table.rows[d][x ^ 1] == c, "inverse columns disagree")
        for r in relators:
            _require(table.act(c, r) == c, "relator does not close")
    for w in subgroup:
        _require(table.act(0, w) == 0, "subgroup generator moves the base coset")


def _require(ok: bool, msg: str) -> None:
    if not ok:
        raise AssertionError(msg)
