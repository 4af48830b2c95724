"""Sound nontriviality detectors for Mod(N_{3,1}) words.

Two exact representations of the group presented by ``mod_n31_V``:

* ``double_cover_h1``: integral action on H_1 of the orientation double
  cover Sigma_{2,2}.  Basis ``a', b', a'', b'', d``: a symplectic pair on each
  sheet plus the class ``d`` of the circle separating the sheets (it pairs
  trivially with everything).  A twist lifts to the same transvection on
  both sheets; ``A3`` is parallel to ``A1`` up to ``d``.  ``V`` swaps the
  sheets and reflects.
* ``burau``: reduced Burau matrices of the chain ``A1, B, A3`` over
  ``Z[s, 1/s]`` with ``t = s^3`` and each twist scaled by ``1/s``, extended
  to ``V`` as a semilinear map ``(M, s -> 1/s)``.  The scaling makes the
  image of ``C`` the identity, so ``V -> (diag(s^-6, s^-3, 1), bar)``
  squares to it.

Neither is assumed faithful.  Each checks every relator before it is used,
after which a nonidentity image proves the word is nontrivial.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Sequence

from .words import Presentation, Word, WordError

# -- Laurent polynomials over Z ---------------------------------------------------------


@dataclass(frozen=True)
class Laurent:
    """An element of Z[s, 1/s]; ``terms`` maps exponents to nonzero coefficients."""

    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def make(cls, d: dict[int, int]) -> "Laurent":
        return cls(tuple(sorted((e, c) for e, c in d.items() if c)))

    @classmethod
    def mono(cls, c: int, e: int = 0) -> "Laurent":
        return cls.make({e: c})

    def __add__(self, o: "Laurent") -> "Laurent":
        d = dict(self.terms)
        for e, c in o.terms:
            d[e] = d.get(e, 0) + c
        return Laurent.make(d)

    def __neg__(self) -> "Laurent":
        return Laurent(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, o: "Laurent") -> "Laurent":
        return self + (-o)

    def __mul__(self, o: "Laurent") -> "Laurent":
        d: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in o.terms:
                d[e1 + e2] = d.get(e1 + e2, 0) + c1 * c2
        return Laurent.make(d)

    def bar(self) -> "Laurent":
        return Laurent.make({-e: c for e, c in self.terms})

    def unit_inverse(self) -> "Laurent":
        if len(self.terms) != 1 or abs(self.terms[0][1]) != 1:
            raise ValueError(f"{self} is not a unit of Z[s, 1/s]")
        e, c = self.terms[0]
        return Laurent.mono(c, -e)

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*s^{e}" for e, c in self.terms)


ZERO, ONE = Laurent(), Laurent.mono(1)
LMatrix = tuple[tuple[Laurent, ...], ...]


def l_identity(n: int) -> LMatrix:
    return tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n))


def l_mul(a: LMatrix, b: LMatrix) -> LMatrix:
    n, k, m = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = ZERO
            for x in range(k):
                if a[i][x] and b[x][j]:
                    acc = acc + a[i][x] * b[x][j]
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def l_bar(a: LMatrix) -> LMatrix:
    return tuple(tuple(x.bar() for x in row) for row in a)


def _minor(a: LMatrix, i: int, j: int) -> LMatrix:
    return tuple(tuple(x for c, x in enumerate(row) if c != j) for r, row in enumerate(a) if r != i)


def l_det(a: LMatrix) -> Laurent:
    if len(a) == 1:
        return a[0][0]
    acc = ZERO
    for j, x in enumerate(a[0]):
        if x:
            term = x * l_det(_minor(a, 0, j))
            acc = acc + term if j % 2 == 0 else acc - term
    return acc


def l_inv(a: LMatrix) -> LMatrix:
    """Inverse via the adjugate; the determinant must be a unit."""
    n = len(a)
    dinv = l_det(a).unit_inverse()
    return tuple(
        tuple((l_det(_minor(a, j, i)) * dinv) * (ONE if (i + j) % 2 == 0 else -ONE) for j in range(n))
        for i in range(n)
    )


@dataclass(frozen=True)
class Semilinear:
    """``(M, flip)`` acting by ``v -> M * flip(v)``, where ``flip`` is ``s -> 1/s`` when set."""

    matrix: LMatrix
    flip: bool = False

    def __mul__(self, o: "Semilinear") -> "Semilinear":
        rhs = l_bar(o.matrix) if self.flip else o.matrix
        return Semilinear(l_mul(self.matrix, rhs), self.flip != o.flip)

    def inverse(self) -> "Semilinear":
        inv = l_inv(self.matrix)
        return Semilinear(l_bar(inv) if self.flip else inv, self.flip)

    def is_identity(self) -> bool:
        return not self.flip and self.matrix == l_identity(len(self.matrix))


# -- generic word evaluation ----------------------------------------------------------


class _Rep:
    """Images of generators plus identity/multiply/inverse; evaluates words."""

    name = "rep"

    def __init__(self, gens: Sequence[str], images: Sequence, identity, mul: Callable, inv: Callable,
                 is_identity: Callable):
        self.gens = tuple(gens)
        self._img = {g: x for g, x in zip(self.gens, images)}
        self._inv = {g: inv(x) for g, x in self._img.items()}
        self._id, self._mul, self._is_id = identity, mul, is_identity

    def image(self, w: Word):
        if w.gens != self.gens:
            raise WordError(f"{self.name} is defined over {self.gens}, not {w.gens}")
        out = self._id
        for g, e in w.syllables:
            x = self._img[w.gens[g]] if e > 0 else self._inv[w.gens[g]]
            for _ in range(abs(e)):
                out = self._mul(out, x)
        return out

    def refutes(self, w: Word) -> bool:
        return not self._is_id(self.image(w))

    def failing_relators(self, pres: Presentation) -> list[Word]:
        return [r for r in pres.relators if self.refutes(r)]

    def verify(self, pres: Presentation) -> bool:
        return not self.failing_relators(pres)


# -- the semilinear Burau representation ----------------------------------------------


def _reduced_burau(i: int, n: int = 4) -> LMatrix:
    """Reduced Burau matrix of ``sigma_i`` in B_n with ``t = s^3``, scaled by ``1/s``."""
    rows = []
    for r in range(n - 1):
        row = [ONE if c == r else ZERO for c in range(n - 1)]
        if r == i - 1:
            row[r] = Laurent.mono(-1, 3)
            if r > 0:
                row[r - 1] = Laurent.mono(1, 3)
            if r < n - 2:
                row[r + 1] = ONE
        rows.append(row)
    scale = Laurent.mono(1, -1)
    return tuple(tuple(x * scale for x in row) for row in rows)


N31_GENS = ("A1", "A3", "B", "V")


@lru_cache(maxsize=1)
def burau() -> _Rep:
    a1, b, a3 = (Semilinear(_reduced_burau(i)) for i in (1, 2, 3))
    v = Semilinear(((Laurent.mono(1, -6), ZERO, ZERO),
                    (ZERO, Laurent.mono(1, -3), ZERO),
                    (ZERO, ZERO, ONE)), True)
    rep = _Rep(N31_GENS, (a1, a3, b, v), Semilinear(l_identity(3)), Semilinear.__mul__,
               Semilinear.inverse, Semilinear.is_identity)
    rep.name = "burau-semilinear"
    return rep


# -- integral H_1 of the double cover ---------------------------------------------------

IMatrix = tuple[tuple[int, ...], ...]


def i_identity(n: int) -> IMatrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def i_mul(a: IMatrix, b: IMatrix) -> IMatrix:
    cols = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in cols) for row in a)


def i_inv_unimodular(a: IMatrix) -> IMatrix:
    """Exact inverse of an integer matrix with determinant +-1 (fractions-free Gauss-Jordan)."""
    from fractions import Fraction

    n = len(a)
    aug = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = tuple(tuple(x for x in row[n:]) for row in aug)
    if any(x.denominator != 1 for row in out for x in row):
        raise ValueError("matrix is not unimodular")
    return tuple(tuple(int(x) for x in row) for row in out)


# basis order: a', b', a'', b'', d
_FORM = (
    (0, 1, 0, 0, 0),
    (-1, 0, 0, 0, 0),
    (0, 0, 0, 1, 0),
    (0, 0, -1, 0, 0),
    (0, 0, 0, 0, 0),
)


def intersection(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(u[i] * _FORM[i][j] * v[j] for i in range(5) for j in range(5))


def lifted_twist(c1: Sequence[int], c2: Sequence[int]) -> IMatrix:
    """``x -> x + <x, c1> c1 + <x, c2> c2`` for disjoint lifts ``c1, c2``; columns are images."""
    if intersection(c1, c2):
        raise ValueError("lifts of a two-sided curve are disjoint")
    cols = []
    for k in range(5):
        x = [int(i == k) for i in range(5)]
        p1, p2 = intersection(x, c1), intersection(x, c2)
        cols.append([x[i] + p1 * c1[i] + p2 * c2[i] for i in range(5)])
    return tuple(tuple(cols[j][i] for j in range(5)) for i in range(5))


@lru_cache(maxsize=1)
def double_cover_h1() -> _Rep:
    a1 = lifted_twist((1, 0, 0, 0, 0), (0, 0, 1, 0, 0))
    b = lifted_twist((0, 1, 0, 0, 0), (0, 0, 0, 1, 0))
    a3 = lifted_twist((1, 0, 0, 0, 1), (0, 0, 1, 0, 1))
    # sheet swap composed with the reflection b -> -b on each sheet
    v = ((0, 0, 1, 0, 0),
         (0, 0, 0, -1, 0),
         (1, 0, 0, 0, 0),
         (0, -1, 0, 0, 0),
         (0, 0, 0, 0, 1))
    rep = _Rep(N31_GENS, (a1, a3, b, v), i_identity(5), i_mul, i_inv_unimodular,
               lambda m: m == i_identity(5))
    rep.name = "double-cover-h1"
    return rep


# -- the detector ---------------------------------------------------------------------------


class RepresentationInvalid(AssertionError):
    pass


def validated(rep: _Rep, pres: Presentation) -> _Rep:
    bad = rep.failing_relators(pres)
    if bad:
        raise RepresentationInvalid(f"{rep.name} does not kill {', '.join(map(str, bad))}")
    return rep


TWIST_GENS = ("A1", "A3", "B")


@dataclass(frozen=True)
class Detection:
    word: Word
    layers: tuple[tuple[str, bool], ...]

    @property
    def nontrivial(self) -> bool:
        return any(hit for _, hit in self.layers)


def detect(w: Word, pres: Presentation) -> Detection:
    """Evaluate ``w`` in every validated layer; a hit in any layer proves ``w != 1``."""
    if w.gens != N31_GENS:
        raise WordError(f"detector works over {N31_GENS}, got {w.gens}")
    outside = [w.gens[g] for g in w.generators_used() if w.gens[g] not in TWIST_GENS]
    if outside:
        raise WordError(f"detector covers twist words only; {', '.join(sorted(outside))} is not a twist")
    layers = []
    for rep in (double_cover_h1(), burau()):
        layers.append((rep.name, validated(rep, pres).refutes(w)))
    return Detection(w, tuple(layers))
