"""Action of mapping classes on H_1(N_g; Z/2).

Classes are bit vectors over the crosscap basis mu_1..mu_g, paired by the dot
product mod 2.  A Dehn twist about a two-sided class ``a`` acts as the
transvection ``x -> x + <x, a> a``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np

from .words import Presentation, Word, WordError

Mod2Class = tuple[int, ...]


def mu(g: int, *indices: int) -> Mod2Class:
    """Sum of the crosscap classes ``mu_i`` (1-based)."""
    v = [0] * g
    for i in indices:
        v[i - 1] ^= 1
    return tuple(v)


def pairing(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a & b for a, b in zip(u, v)) & 1


def two_sided(a: Sequence[int]) -> bool:
    return pairing(a, a) == 0


def identity(g: int) -> np.ndarray:
    return np.eye(g, dtype=np.uint8)


def mat_mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return (a.astype(np.int64) @ b.astype(np.int64) % 2).astype(np.uint8)


def mat_inv(a: np.ndarray) -> np.ndarray:
    """Inverse over Z/2 by Gauss-Jordan elimination."""
    n = a.shape[0]
    aug = np.concatenate([a % 2, identity(n)], axis=1).astype(np.uint8)
    for col in range(n):
        piv = next((r for r in range(col, n) if aug[r, col]), None)
        if piv is None:
            raise ValueError("matrix is singular over Z/2")
        aug[[col, piv]] = aug[[piv, col]]
        for r in range(n):
            if r != col and aug[r, col]:
                aug[r] ^= aug[col]
    return aug[:, n:].copy()


def preserves_pairing(m: np.ndarray) -> bool:
    return bool(np.array_equal(mat_mul(m.T, m), identity(m.shape[0])))


def transvection(a: Sequence[int]) -> np.ndarray:
    a = np.array(a, dtype=np.uint8) % 2
    if not a.any():
        raise ValueError("transvection about the zero class")
    if not two_sided(a):
        raise ValueError(f"class {tuple(a)} is one-sided; Dehn twists need two-sided curves")
    return (identity(len(a)) + np.outer(a, a)) % 2


def chain_classes(g: int, k: int) -> list[Mod2Class]:
    """``c_i = mu_i + mu_(i+1)`` for ``i = 1..k``: consecutive classes pair to 1, others to 0."""
    if k < 1 or k >= g:
        raise ValueError(f"need 1 <= k <= g - 1, got k={k}, g={g}")
    return [mu(g, i, i + 1) for i in range(1, k + 1)]


def pairing_matrix(classes: Sequence[Sequence[int]]) -> list[list[int]]:
    return [[pairing(u, v) for v in classes] for u in classes]


@lru_cache(maxsize=8)
def isometries(g: int) -> tuple[np.ndarray, ...]:
    """All g x g matrices over Z/2 with ``M^T M = I``, in a fixed order.

    Columns are built one at a time; each must pair to 1 with itself and to
    0 with the earlier ones, which keeps the search exhaustive and small.
    """
    if g < 1 or g > 6:
        raise ValueError("isometry enumeration supports 1 <= g <= 6")
    odd = [v for v in itertools.product((0, 1), repeat=g) if sum(v) % 2 == 1]
    out = []

    def extend(cols):
        if len(cols) == g:
            out.append(np.array(cols, dtype=np.uint8).T.copy())
            return
        for v in odd:
            if all(pairing(v, c) == 0 for c in cols):
                extend(cols + [v])

    extend([])
    return tuple(out)


# -- assignments ------------------------------------------------------------------------


@dataclass(frozen=True)
class Mod2Assignment:
    """Matrices for every generator of a presentation; a homomorphism if ``verify`` passes."""

    name: str
    gens: tuple[str, ...]
    matrices: tuple[np.ndarray, ...]

    @property
    def g(self) -> int:
        return self.matrices[0].shape[0]

    def image(self, w: Word) -> np.ndarray:
        if tuple(w.gens) != self.gens:
            missing = [x for x in w.gens if x not in self.gens]
            if missing:
                raise WordError(f"assignment does not cover {', '.join(missing)}")
        index = {name: i for i, name in enumerate(self.gens)}
        inv = {}
        out = identity(self.g)
        for gid, e in w.syllables:
            k = index[w.gens[gid]]
            m = self.matrices[k]
            if e < 0:
                if k not in inv:
                    inv[k] = mat_inv(m)
                m = inv[k]
            for _ in range(abs(e)):
                out = mat_mul(out, m)
        return out

    def refutes(self, w: Word) -> bool:
        return not np.array_equal(self.image(w), identity(self.g))

    def verify(self, pres: Presentation) -> bool:
        return all(preserves_pairing(m) for m in self.matrices) and \
            not any(self.refutes(r) for r in pres.relators)

    def rows(self) -> dict[str, list[str]]:
        return {n: ["".join(map(str, row)) for row in m.tolist()] for n, m in zip(self.gens, self.matrices)}


def refute_by_rep(w: Word, assignment: Mod2Assignment) -> bool:
    """True when ``w`` has a nonidentity image, which proves ``w != 1``."""
    return assignment.refutes(w)


def find_assignment(pres: Presentation, twist_classes: Mapping[str, Sequence[int]], g: int,
                    name: str = "mod2") -> Mod2Assignment | None:
    """Extend the given twist classes to a full assignment killing every relator.

    Generators without a class range over :func:`isometries`; the search is
    exhaustive with relators checked as soon as their generators are fixed.
    """
    fixed: dict[str, np.ndarray] = {}
    for gen, cls in twist_classes.items():
        if gen not in pres.gens:
            raise WordError(f"{gen} is not a generator of {pres.name}")
        if len(cls) != g:
            raise ValueError(f"class for {gen} has length {len(cls)}, expected {g}")
        fixed[gen] = transvection(cls)
    free = [x for x in pres.gens if x not in fixed]
    pool = isometries(g) if free else ()
    order = list(fixed) + free
    # relators become checkable once all their generators are assigned
    checks: dict[int, list[Word]] = {}
    for r in pres.relators:
        used = {r.gens[i] for i in r.generators_used()}
        depth = max(order.index(x) for x in used) if used else 0
        checks.setdefault(max(depth, len(fixed) - 1), []).append(r)

    def partial(assign: dict[str, np.ndarray]) -> Mod2Assignment:
        mats = tuple(assign.get(x, identity(g)) for x in pres.gens)
        return Mod2Assignment(name, pres.gens, mats)

    def ok(assign, depth) -> bool:
        a = partial(assign)
        return not any(a.refutes(r) for r in checks.get(depth, ()))

    assign = dict(fixed)
    if fixed and not all(ok(assign, d) for d in range(len(fixed))):
        return None

    def search(i: int) -> bool:
        if i == len(free):
            return True
        for m in pool:
            assign[free[i]] = m
            if ok(assign, len(fixed) + i) and search(i + 1):
                return True
        del assign[free[i]]
        return False

    if not search(0):
        return None
    result = partial(assign)
    if not result.verify(pres):  # pragma: no cover - the search checks every relator
        raise AssertionError("assignment failed independent verification")
    return result


# Classes of A1, A3, B in H_1(N_3; Z/2).  A1 and A3 are disjoint, so their
# transvections must commute; B meets each once.
N31_CLASSES = {"A1": mu(3, 1, 2), "A3": mu(3, 1, 2), "B": mu(3, 2, 3)}
# A symmetric-looking alternative in which all three classes pair to 1; it
# cannot satisfy the commutation relator and is kept as a negative example.
N31_TRIANGLE_CLASSES = {"A1": mu(3, 1, 2), "A3": mu(3, 2, 3), "B": mu(3, 1, 3)}
N21_CLASSES = {"t": mu(2, 1, 2)}


@lru_cache(maxsize=8)
def default_assignment(key: str) -> Mod2Assignment | None:
    from . import presentations as PR

    entry = PR.get(key)
    if key in ("n31v", "n31u"):
        return find_assignment(entry.presentation, N31_CLASSES, 3, name=f"{key}-mod2")
    if key == "n21":
        return find_assignment(entry.presentation, N21_CLASSES, 2, name="n21-mod2")
    return None
