"""Smith normal form over the integers, with the column transform kept.

Only Python integers are used, so entries never overflow.
"""
from __future__ import annotations

from dataclasses import dataclass


def _swap_rows(a, i, j):
    a[i], a[j] = a[j], a[i]


def _swap_cols(a, i, j):
    for row in a:
        row[i], row[j] = row[j], row[i]


def smith(matrix: list[list[int]], ncols: int) -> tuple[list[int], list[list[int]]]:
    """Diagonalize ``matrix`` (rows x ncols) by unimodular row and column moves.

    Returns ``(diag, q)`` where ``diag`` holds the nonzero invariant factors
    (each dividing the next) and ``q`` is the ncols x ncols column transform,
    so that ``U @ matrix @ q`` is diagonal for some unimodular ``U``.
    """
    a = [list(map(int, row)) for row in matrix]
    q = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    m = len(a)
    t = 0
    while t < min(m, ncols):
        pivot = None
        for i in range(t, m):
            for j in range(t, ncols):
                if a[i][j] and (pivot is None or abs(a[i][j]) < abs(a[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        _swap_rows(a, t, pivot[0])
        _swap_cols(a, t, pivot[1])
        _swap_cols(q, t, pivot[1])
        while True:
            done = True
            p = a[t][t]
            for i in range(t + 1, m):
                f = a[i][t] // p
                if f:
                    a[i] = [x - f * y for x, y in zip(a[i], a[t])]
                if a[i][t]:
                    done = False
            for j in range(t + 1, ncols):
                f = a[t][j] // p
                if f:
                    for row in a:
                        row[j] -= f * row[t]
                    for row in q:
                        row[j] -= f * row[t]
                if a[t][j]:
                    done = False
            if not done:
                # a smaller remainder now sits in row t or column t; move it to the pivot
                best = None
                for i in range(t, m):
                    if a[i][t] and (best is None or abs(a[i][t]) < abs(best[2])):
                        best = (i, t, a[i][t])
                for j in range(t, ncols):
                    if a[t][j] and (best is None or abs(a[t][j]) < abs(best[2])):
                        best = (t, j, a[t][j])
                _swap_rows(a, t, best[0])
                _swap_cols(a, t, best[1])
                _swap_cols(q, t, best[1])
                continue
            # divisibility: every remaining entry must be a multiple of the pivot
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, ncols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[bad[0]])]
        if a[t][t] < 0:
            a[t][t] = -a[t][t]
            # flipping a row sign is a row move; q is unaffected
        t += 1
    diag = [a[i][i] for i in range(t)]
    return diag, q


@dataclass(frozen=True)
class Abelianization:
    """Quotient Z^n / L with L spanned by relator exponent vectors."""

    ngens: int
    diag: tuple[int, ...]
    q: tuple[tuple[int, ...], ...]

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diag if d > 1)

    @property
    def free_rank(self) -> int:
        return self.ngens - len(self.diag)

    @property
    def invariants(self) -> tuple[int, ...]:
        """Invariant factors with 0 standing for a free Z summand."""
        return self.torsion + (0,) * self.free_rank

    def coordinates(self, vector) -> tuple[int, ...]:
        y = [sum(vector[i] * self.q[i][j] for i in range(self.ngens)) for j in range(self.ngens)]
        out = []
        for j, d in enumerate(self.diag):
            if d > 1:
                out.append(y[j] % d)
        out.extend(y[len(self.diag):])
        return tuple(out)

    def describe(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion] + ["Z"] * self.free_rank
        return " + ".join(parts) if parts else "0"


def abelianize(rows: list[list[int]], ngens: int) -> Abelianization:
    diag, q = smith(rows, ngens)
    return Abelianization(ngens, tuple(diag), tuple(tuple(r) for r in q))
