"""Euler characteristic calculus for compact surfaces.

A closed surface is described by a :class:`Decomposition`: a list of pieces
and a gluing graph whose edges are circles.  The glued result is determined
by additivity of the Euler characteristic together with the orientability
test (some piece is nonorientable, or the edge flags admit no consistent
choice of piece orientations).
"""
from __future__ import annotations

import enum
import itertools
import re
from dataclasses import dataclass


@dataclass(frozen=True, order=True)
class SurfaceType:
    orientable: bool
    genus: int
    boundary: int = 0

    def __post_init__(self):
        if self.genus < 0 or self.boundary < 0:
            raise ValueError("genus and boundary must be nonnegative")
        if not self.orientable and self.genus < 1:
            raise ValueError("a nonorientable surface has genus at least 1")

    @property
    def euler(self) -> int:
        return euler(self)

    def __str__(self) -> str:
        letter = "S" if self.orientable else "N"
        return f"{letter}{self.genus}" + (f",{self.boundary}" if self.boundary else "")


def S(g: int, b: int = 0) -> SurfaceType:
    return SurfaceType(True, g, b)


def N(g: int, b: int = 0) -> SurfaceType:
    return SurfaceType(False, g, b)


DISC = S(0, 1)
ANNULUS = S(0, 2)
PANTS = S(0, 3)
MOBIUS = N(1, 1)


def euler(s: SurfaceType) -> int:
    if s.orientable:
        return 2 - 2 * s.genus - s.boundary
    return 2 - s.genus - s.boundary


_LITERAL = re.compile(r"^\s*([NS])\s*(\d+)\s*(?:,\s*(\d+))?\s*$")


def parse_surface(text: str) -> SurfaceType:
    """``N7``, ``N3,1``, ``S2,2`` (S for orientable)."""
    m = _LITERAL.match(text)
    if not m:
        raise ValueError(f"bad surface literal {text!r}; expected e.g. N7, N3,1 or S2,2")
    kind, g, b = m.group(1), int(m.group(2)), int(m.group(3) or 0)
    return SurfaceType(kind == "S", g, b)


def double_cover(s: SurfaceType) -> SurfaceType:
    """Orientation double cover: N_{g,n} -> S_{g-1,2n}."""
    if s.orientable:
        raise ValueError(f"{s} is orientable; it has no orientation double cover")
    return S(s.genus - 1, 2 * s.boundary)


def chain_neighborhood(k: int) -> SurfaceType:
    """Regular neighborhood of a chain of ``k`` circles."""
    if k <= 0:
        raise ValueError("chain length must be positive")
    if k % 2:
        return S((k - 1) // 2, 2)
    return S(k // 2, 1)


# -- decompositions ---------------------------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """Pieces glued along circles; an edge ``(i, j, reversing)`` glues one boundary of each."""

    pieces: tuple[SurfaceType, ...]
    edges: tuple[tuple[int, int, bool], ...]

    @property
    def circles(self) -> int:
        return len(self.edges)

    def count(self, kind: SurfaceType) -> int:
        return sum(1 for p in self.pieces if p == kind)

    def describe(self) -> dict:
        return {"pieces": [str(p) for p in self.pieces],
                "edges": [[i, j, rev] for i, j, rev in self.edges]}


class GluingError(ValueError):
    pass


def glue(d: Decomposition) -> SurfaceType:
    """The closed surface obtained from ``d``; raises if ``d`` is not a valid closed gluing."""
    n = len(d.pieces)
    if n == 0:
        raise GluingError("no pieces")
    degree = [0] * n
    for i, j, _ in d.edges:
        if not (0 <= i < n and 0 <= j < n):
            raise GluingError(f"edge ({i}, {j}) names a missing piece")
        degree[i] += 1
        degree[j] += 1
    for p, deg in zip(d.pieces, degree):
        if deg != p.boundary:
            raise GluingError(f"piece {p} has {p.boundary} boundary circles but {deg} are glued")
    # connectivity and orientation signs in one traversal
    sign: list[int | None] = [None] * n
    adj: list[list[tuple[int, bool]]] = [[] for _ in range(n)]
    for i, j, rev in d.edges:
        adj[i].append((j, rev))
        adj[j].append((i, rev))
    consistent = True
    sign[0] = 1
    stack = [0]
    while stack:
        v = stack.pop()
        for w, rev in adj[v]:
            want = -sign[v] if rev else sign[v]
            if sign[w] is None:
                sign[w] = want
                stack.append(w)
            elif sign[w] != want:
                consistent = False
    if any(s is None for s in sign):
        raise GluingError("gluing graph is disconnected")
    chi = sum(euler(p) for p in d.pieces)
    orientable = consistent and all(p.orientable for p in d.pieces)
    if orientable:
        if chi % 2:
            raise GluingError("odd Euler characteristic for an orientable closed surface")
        return S((2 - chi) // 2)
    return N(2 - chi)


def is_bridge(d: Decomposition, e: int) -> bool:
    """Does cutting circle ``e`` disconnect the surface?"""
    n = len(d.pieces)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for k, (i, j, _) in enumerate(d.edges):
        if k != e:
            parent[find(i)] = find(j)
    return len({find(x) for x in range(n)}) > 1


def _build_gluing(pieces: list[SurfaceType], need_cycle_flip: bool) -> Decomposition | None:
    """Connected gluing of all boundary circles, or None if impossible.

    Vertices are attached in order of decreasing boundary count so the tree
    part always has a free circle to attach to; leftover circles are then
    paired in order.  If ``need_cycle_flip``, one non-tree edge is made
    orientation reversing.
    """
    order = sorted(range(len(pieces)), key=lambda i: -pieces[i].boundary)
    free: list[int] = []  # one entry per unglued circle of the connected part
    edges: list[list] = []
    first = order[0]
    free.extend([first] * pieces[first].boundary)
    for v in order[1:]:
        if not free:
            return None
        u = free.pop(0)
        edges.append([u, v, False])
        free.extend([v] * (pieces[v].boundary - 1))
    if len(free) % 2:
        return None
    tree_edges = len(edges)
    for a in range(0, len(free), 2):
        edges.append([free[a], free[a + 1], False])
    if need_cycle_flip:
        if len(edges) == tree_edges:
            return None
        edges[tree_edges][2] = True
    return Decomposition(tuple(pieces), tuple((i, j, r) for i, j, r in edges))


# -- chains -------------------------------------------------------------------------------


class Constraint(enum.Enum):
    NONE = "none"
    MUST_CONTAIN_KLEIN_BOTTLE_PIECE = "klein"


@dataclass(frozen=True)
class ChainReport:
    genus: int
    k: int
    constraint: Constraint
    feasible: bool
    witness: Decomposition | None
    enumerated: int

    def describe(self) -> dict:
        return {"genus": self.genus, "k": self.k, "constraint": self.constraint.value,
                "feasible": self.feasible, "enumerated": self.enumerated,
                "witness": self.witness.describe() if self.witness else None}


def _pieces_with(boundary: int, chi: int) -> list[SurfaceType]:
    """All surfaces with exactly this boundary count and Euler characteristic."""
    out = []
    # orientable: 2 - 2g - b = chi
    if (2 - boundary - chi) % 2 == 0 and 2 - boundary - chi >= 0:
        out.append(S((2 - boundary - chi) // 2, boundary))
    g = 2 - boundary - chi
    if g >= 1:
        out.append(N(g, boundary))
    return out


def _check_ambient(G: int) -> None:
    if G < 3:
        raise ValueError(f"N{G} is a sporadic case (sphere, projective plane or Klein bottle); need genus >= 3")


def chain_feasible(G: int, k: int, constraint: Constraint = Constraint.NONE) -> ChainReport:
    """Can a chain of ``k`` circles sit in the closed surface N_G?

    The complement of the chain neighborhood is split into pieces, one per
    boundary partition; every piece meets the neighborhood.  All piece lists
    with the right total Euler characteristic are enumerated.
    """
    _check_ambient(G)
    if k < 1:
        raise ValueError("chain length must be positive")
    nu = chain_neighborhood(k)
    chi_c = (2 - G) - euler(nu)
    enumerated = 0
    # each complement piece has at least one boundary circle, so chi <= 1 per piece
    partitions = [[nu.boundary]] + ([[1, 1]] if nu.boundary == 2 else [])
    for part in partitions:
        lo = chi_c - (len(part) - 1)  # the other pieces contribute at most 1 each
        splits = [c for c in itertools.product(range(lo, 2), repeat=len(part)) if sum(c) == chi_c]
        # balanced splits first, so witnesses use the simplest pieces
        for chis in sorted(splits, key=lambda c: (max(c) - min(c), c)):
            options = [_pieces_with(b, c) for b, c in zip(part, chis)]
            for combo in itertools.product(*options):
                enumerated += 1
                if constraint is Constraint.MUST_CONTAIN_KLEIN_BOTTLE_PIECE and \
                        not any(not p.orientable and p.genus >= 2 for p in combo):
                    continue
                pieces = (nu,) + tuple(combo)
                edges = [(0, i + 1, False) for i, p in enumerate(combo) for _ in range(p.boundary)]
                if all(p.orientable for p in combo):
                    # nonorientable only through a cycle: the piece must meet nu twice
                    cyc = next((n for n, (a, b, _) in enumerate(edges)
                                if sum(1 for e in edges if e[1] == b) > 1), None)
                    if cyc is None:
                        continue
                    edges[cyc] = (edges[cyc][0], edges[cyc][1], True)
                d = Decomposition(pieces, tuple(edges))
                if glue(d) == N(G):
                    return ChainReport(G, k, constraint, True, d, enumerated)
    return ChainReport(G, k, constraint, False, None, enumerated)


def max_chain(G: int, constraint: Constraint = Constraint.NONE) -> int:
    """Longest feasible chain in N_G."""
    _check_ambient(G)
    best = 0
    # the complement has Euler characteristic at most 2, so k <= G + 1
    for k in range(1, G + 3):
        if chain_feasible(G, k, constraint).feasible:
            best = k
    if constraint is Constraint.NONE and best % 2 == 0:
        raise AssertionError(f"maximal chain length {best} in N{G} is even")
    return best


# -- disjoint circle systems ------------------------------------------------------------

SYSTEM_PIECES = (PANTS, S(0, 4), S(1, 1), N(1, 2), N(1, 3))


@dataclass(frozen=True)
class DisjointSystem:
    genus: int
    count: int
    witness: Decomposition
    # best system whose decomposition has exactly one four-holed sphere
    with_one_s04: int | None
    s04_witness: Decomposition | None
    enumerated: int

    def describe(self) -> dict:
        return {"genus": self.genus, "count": self.count, "witness": self.witness.describe(),
                "with_one_s04": self.with_one_s04,
                "s04_witness": self.s04_witness.describe() if self.s04_witness else None,
                "enumerated": self.enumerated}


def _piece_multisets(G: int):
    """Count vectors over SYSTEM_PIECES with total Euler characteristic 2 - G."""
    target = G - 2
    weights = [-euler(p) for p in SYSTEM_PIECES]
    for counts in itertools.product(*(range(target // w + 1) for w in weights)):
        if sum(c * w for c, w in zip(counts, weights)) == target:
            yield counts


def decompose(G: int, counts) -> Decomposition | None:
    pieces = [p for p, c in zip(SYSTEM_PIECES, counts) for _ in range(c)]
    if not pieces:
        return None
    if sum(p.boundary for p in pieces) % 2:
        return None
    need_flip = all(p.orientable for p in pieces)
    d = _build_gluing(pieces, need_flip)
    if d is None:
        return None
    try:
        return d if glue(d) == N(G) else None
    except GluingError:
        return None


def max_disjoint_system(G: int) -> DisjointSystem:
    """Most pairwise disjoint, nonisotopic two-sided circles in N_G.

    Complementary pieces come from ``SYSTEM_PIECES``; none is a disc, annulus
    or Mobius band, so every circle is essential and no two are isotopic.
    """
    if G < 5:
        raise ValueError("disjoint system search needs genus >= 5")
    best: Decomposition | None = None
    best4: Decomposition | None = None
    enumerated = 0
    for counts in _piece_multisets(G):
        enumerated += 1
        d = decompose(G, counts)
        if d is None:
            continue
        if best is None or d.circles > best.circles:
            best = d
        if counts[1] == 1 and (best4 is None or d.circles > best4.circles):
            best4 = d
    if best is None:  # pragma: no cover - pants always fit for G >= 5
        raise AssertionError(f"no decomposition of N{G}")
    return DisjointSystem(G, best.circles, best, best4.circles if best4 else None, best4, enumerated)


def abelian_rank(G: int) -> int:
    """``(3G - r)/2 - 3`` with ``r = G mod 2``."""
    if G < 3:
        raise ValueError("abelian rank formula needs genus >= 3")
    r = G % 2
    return (3 * G - r) // 2 - 3
