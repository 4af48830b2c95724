"""Proof terms: lazily composed products of conjugated relators.

A proof term denotes an element of the free group that is, by construction,
a product of factors ``c * r^s * c^-1`` with ``r`` a relator.  Terms are
shared DAG nodes, so composing them is cheap; :func:`expand` flattens one
into an explicit factor list.
"""
from __future__ import annotations

from dataclasses import dataclass

from .words import Letters, free_reduce, invert_letters


class Proof:
    __slots__ = ()


@dataclass(frozen=True, eq=False)
class Leaf(Proof):
    relator: int
    sign: int
    conj: Letters = ()


@dataclass(frozen=True, eq=False)
class Cat(Proof):
    parts: tuple[Proof, ...]


@dataclass(frozen=True, eq=False)
class Conj(Proof):
    inner: Proof
    by: Letters


@dataclass(frozen=True, eq=False)
class Inv(Proof):
    inner: Proof


EMPTY = Cat(())


def cat(*parts: Proof) -> Proof:
    parts = tuple(p for p in parts if p is not EMPTY)
    if not parts:
        return EMPTY
    if len(parts) == 1:
        return parts[0]
    return Cat(parts)


def conj(p: Proof, by: Letters) -> Proof:
    if not by or p is EMPTY:
        return p
    return Conj(p, tuple(by))


def inv(p: Proof) -> Proof:
    if p is EMPTY:
        return p
    if isinstance(p, Inv):
        return p.inner
    return Inv(p)


Factor = tuple[Letters, int, int]  # (conjugator, relator index, sign)


def expand(p: Proof, limit: int | None = None) -> list[Factor]:
    """Flatten ``p`` into factors ``(c, k, s)`` meaning ``c r_k^s c^-1``, in product order."""
    out: list[Factor] = []
    # stack of (node, prefix, inverted)
    stack: list[tuple[Proof, Letters, bool]] = [(p, (), False)]
    while stack:
        node, prefix, flipped = stack.pop()
        if isinstance(node, Leaf):
            out.append((free_reduce(prefix + node.conj), node.relator, -node.sign if flipped else node.sign))
            if limit is not None and len(out) > limit:
                raise OverflowError(f"proof expands to more than {limit} factors")
        elif isinstance(node, Cat):
            # stack is LIFO: push in reverse of the desired visiting order
            order = node.parts if flipped else tuple(reversed(node.parts))
            for child in order:
                stack.append((child, prefix, flipped))
        elif isinstance(node, Conj):
            stack.append((node.inner, free_reduce(prefix + node.by), flipped))
        elif isinstance(node, Inv):
            stack.append((node.inner, prefix, not flipped))
        else:  # pragma: no cover
            raise TypeError(node)
    return out


def size(p: Proof, memo: dict[int, int] | None = None) -> int:
    """Number of factors ``expand(p)`` would produce, without expanding."""
    memo = {} if memo is None else memo
    stack = [(p, False)]
    while stack:
        node, ready = stack.pop()
        key = id(node)
        if key in memo:
            continue
        if isinstance(node, Leaf):
            memo[key] = 1
        elif isinstance(node, Cat):
            if ready:
                memo[key] = sum(memo[id(c)] for c in node.parts)
            else:
                stack.append((node, True))
                stack.extend((c, False) for c in node.parts)
        else:
            inner = node.inner
            if ready:
                memo[key] = memo[id(inner)]
            else:
                stack.append((node, True))
                stack.append((inner, False))
    return memo[id(p)]


def evaluate(factors: list[Factor], relators: list[Letters]) -> Letters:
    """Multiply out a factor list in the free group."""
    acc: list[int] = []
    for c, k, s in factors:
        r = relators[k] if s > 0 else invert_letters(relators[k])
        for x in c + r + invert_letters(c):
            if acc and acc[-1] == -x:
                acc.pop()
            else:
                acc.append(x)
    return tuple(acc)
