"""Exact arithmetic in Mod(N_{2,1}) = <y, t | y t y^-1 = t^-1>.

Every element has a unique normal form ``y^m t^n``, stored as the pair
``(m, n)``.  From ``y t = t^-1 y`` one gets the product rule
``(m, n)(p, q) = (m + p, (-1)^p n + q)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .words import Word, WordError


def _sign(p: int) -> int:
    return -1 if p % 2 else 1


@dataclass(frozen=True, order=True)
class KleinElement:
    m: int
    n: int

    def __mul__(self, other: "KleinElement") -> "KleinElement":
        return k_multiply(self, other)

    def inverse(self) -> "KleinElement":
        return KleinElement(-self.m, -_sign(self.m) * self.n)

    def __pow__(self, k: int) -> "KleinElement":
        base = self if k >= 0 else self.inverse()
        k = abs(k)
        if base.m % 2 == 0:
            return KleinElement(k * base.m, k * base.n)
        # odd m: the t-parts cancel in pairs
        return KleinElement(k * base.m, base.n if k % 2 else 0)

    def __str__(self) -> str:
        parts = []
        if self.m:
            parts.append("y" if self.m == 1 else f"y^{self.m}")
        if self.n:
            parts.append("t" if self.n == 1 else f"t^{self.n}")
        return " ".join(parts) or "1"


IDENTITY = KleinElement(0, 0)
Y = KleinElement(1, 0)
T = KleinElement(0, 1)


def k_multiply(u: KleinElement, v: KleinElement) -> KleinElement:
    return KleinElement(u.m + v.m, _sign(v.m) * u.n + v.n)


def k_conjugate(u: KleinElement, g: KleinElement) -> KleinElement:
    """``g u g^-1``."""
    return g * u * g.inverse()


def k_square(u: KleinElement) -> KleinElement:
    """Closed form for ``u * u``."""
    if u.m % 2 == 0:
        return KleinElement(2 * u.m, 2 * u.n)
    return KleinElement(2 * u.m, 0)


def k_from_word(w: Word) -> KleinElement:
    """Collect a word over generators named ``y`` and ``t`` into normal form."""
    idx = {name: i for i, name in enumerate(w.gens)}
    if set(idx) - {"y", "t"}:
        raise WordError(f"expected generators y, t; got {w.gens}")
    out = IDENTITY
    for g, e in w.syllables:
        out = out * ((Y if w.gens[g] == "y" else T) ** e)
    return out


def commutes(u: KleinElement, v: KleinElement) -> bool:
    return u * v == v * u


def k_center(window: int = 10) -> KleinElement:
    """Generator of the center, found by brute force on ``|m|, |n| <= window``."""
    central = [KleinElement(m, n)
               for m in range(-window, window + 1) for n in range(-window, window + 1)
               if commutes(KleinElement(m, n), Y) and commutes(KleinElement(m, n), T)]
    # the center is cyclic; its generator is the central element of least positive m
    positive = [c for c in central if c.m > 0 or (c.m == 0 and c.n > 0)]
    return min(positive, key=lambda c: (abs(c.m), abs(c.n)))


def in_twist_subgroup(u: KleinElement) -> bool:
    """Membership in T = <t_a, t_b> = {m even}."""
    return u.m % 2 == 0


def k_is_Y(u: KleinElement) -> bool:
    return not in_twist_subgroup(u) and k_square(u) in (KleinElement(2, 0), KleinElement(-2, 0))


def _canonical(members: list[KleinElement]) -> KleinElement:
    return min(members, key=lambda e: (abs(e.m), -e.m, abs(e.n), -e.n))


def k_Y_conjugacy_classes(bound: int) -> list[KleinElement]:
    """Representatives of the conjugacy classes of Y-elements seen in the box ``|m|,|n| <= bound``."""
    if bound < 1:
        raise ValueError("bound must be at least 1")
    elems = [KleinElement(m, n) for m in range(-bound, bound + 1) for n in range(-bound, bound + 1)]
    ys = [e for e in elems if k_is_Y(e)]
    parent = {e: e for e in ys}

    def find(e):
        while parent[e] != e:
            parent[e] = parent[parent[e]]
            e = parent[e]
        return e

    conj = [KleinElement(p, q) for p in range(-bound, bound + 1) for q in range(-bound, bound + 1)]
    for e in ys:
        for g in conj:
            f = k_conjugate(e, g)
            if f in parent:
                parent[find(f)] = find(e)
    classes: dict[KleinElement, list[KleinElement]] = {}
    for e in ys:
        classes.setdefault(find(e), []).append(e)
    return sorted((_canonical(v) for v in classes.values()), key=lambda e: (-e.m, e.n))


# -- automorphisms ------------------------------------------------------------------


@dataclass(frozen=True)
class KleinAutomorphism:
    """The endomorphism sending ``y`` and ``t`` to the given elements."""

    y_image: KleinElement
    t_image: KleinElement

    def __post_init__(self):
        a, b = self.y_image, self.t_image
        if a * b * a.inverse() * b != IDENTITY:
            raise ValueError(f"images {a}, {b} violate the relator")

    def __call__(self, u: KleinElement) -> KleinElement:
        return (self.y_image ** u.m) * (self.t_image ** u.n)

    def compose(self, other: "KleinAutomorphism") -> "KleinAutomorphism":
        """``self o other``."""
        return KleinAutomorphism(self(other.y_image), self(other.t_image))

    def __str__(self) -> str:
        return f"y -> {self.y_image}, t -> {self.t_image}"


IDENTITY_AUT = KleinAutomorphism(Y, T)


def _assignments(bound: int):
    rng = range(-bound, bound + 1)
    for a, b, c, d in itertools.product(rng, repeat=4):
        ya, tb = KleinElement(a, b), KleinElement(c, d)
        if ya * tb * ya.inverse() * tb == IDENTITY:
            yield KleinAutomorphism(ya, tb)


def inverse_within(phi: KleinAutomorphism, candidates: list[KleinAutomorphism]) -> KleinAutomorphism | None:
    for psi in candidates:
        if (phi(psi.y_image) == Y and phi(psi.t_image) == T
                and psi(phi.y_image) == Y and psi(phi.t_image) == T):
            return psi
    return None


def inner_by(phi: KleinAutomorphism) -> KleinElement | None:
    """A conjugator ``g`` with ``phi = (u -> g u g^-1)``, or None.

    Conjugating by ``y^2`` is trivial, so ``g = y^p t^q`` with ``p`` in {0, 1};
    the ``t``-exponent of ``phi(y)`` then determines ``q``.
    """
    b = phi.y_image.n
    if b % 2:
        return None
    for p in (0, 1):
        g = KleinElement(p, -b * _sign(p) // 2)
        if k_conjugate(Y, g) == phi.y_image and k_conjugate(T, g) == phi.t_image:
            return g
    return None


@dataclass(frozen=True)
class OutTable:
    bound: int
    automorphisms: int
    representatives: tuple[KleinAutomorphism, ...]
    table: tuple[tuple[int, ...], ...]

    @property
    def order(self) -> int:
        return len(self.representatives)

    def element_order(self, i: int) -> int:
        k, j = 1, i
        while j != 0:
            j = self.table[j][i]
            k += 1
        return k

    @property
    def is_klein_four(self) -> bool:
        return self.order == 4 and all(self.element_order(i) == 2 for i in range(1, 4))

    @property
    def abelian(self) -> bool:
        n = self.order
        return all(self.table[i][j] == self.table[j][i] for i in range(n) for j in range(n))


def k_out(bound: int) -> OutTable:
    """Out(Mod(N_{2,1})) from all automorphisms with image coordinates in ``[-bound, bound]``."""
    if bound < 2:
        raise ValueError("bound must be at least 2")
    endos = list(_assignments(bound))
    inverses = {}
    for phi in endos:
        psi = inverse_within(phi, endos)
        if psi is not None:
            inverses[phi] = psi
    autos = list(inverses)

    def same_class(phi, psi) -> bool:
        return inner_by(inverses[psi].compose(phi)) is not None

    reps: list[KleinAutomorphism] = [IDENTITY_AUT]
    for phi in sorted(autos, key=lambda f: (abs(f.y_image.n), f.y_image.m < 0, f.t_image.n < 0,
                                            f.y_image.n < 0, f.y_image, f.t_image)):
        if not any(same_class(phi, r) for r in reps):
            reps.append(phi)

    def classify(phi) -> int:
        for i, r in enumerate(reps):
            if inner_by(inverses[r].compose(phi)) is not None:
                return i
        raise AssertionError(f"{phi} is in no known class")

    table = tuple(tuple(classify(a.compose(b)) for b in reps) for a in reps)
    return OutTable(bound, len(autos), tuple(reps), table)


# -- the closed Klein bottle ---------------------------------------------------------


def out_mod_n2() -> tuple[int, bool]:
    """``(|Out|, abelian?)`` for Mod(N_2) = Z/2 x Z/2, by brute force over bijections.

    The group is abelian, so every inner automorphism is trivial and Out = Aut.
    """
    elems = [(a, b) for a in range(2) for b in range(2)]

    def add(u, v):
        return ((u[0] + v[0]) % 2, (u[1] + v[1]) % 2)

    autos = []
    for perm in itertools.permutations(elems):
        f = dict(zip(elems, perm))
        if all(f[add(u, v)] == add(f[u], f[v]) for u in elems for v in elems):
            autos.append(f)
    abelian = all(
        all(f[g[x]] == g[f[x]] for x in elems) for f in autos for g in autos
    )
    return len(autos), abelian
