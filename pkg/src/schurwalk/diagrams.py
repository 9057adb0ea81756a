"""Strict partitions viewed as shifted Young diagrams.

In the shifted diagram row ``i`` (counted from 1) starts in column ``i``, so
the box in row ``i`` and column ``j`` has content ``j - i``.  The contents of
row ``i`` are therefore ``0, 1, ..., parts[i] - 1``.
"""

from __future__ import annotations

import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Iterator, Sequence

from .errors import DomainError

__all__ = [
    "StrictPartition",
    "KerovCoordinates",
    "FrobeniusDouble",
    "EMPTY",
    "enumerate_strict",
    "enumerate_up_to",
    "count_strict",
    "addable_contents",
    "removable_contents",
    "add_box",
    "remove_box",
    "kerov_coordinates",
    "from_kerov",
    "interlacing_case",
    "edge_multiplicity",
    "box_contents",
    "contains",
    "double",
]


class StrictPartition(tuple):
    """An immutable strictly decreasing tuple of positive integers."""

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()) -> "StrictPartition":
        try:
            parts = tuple(operator.index(p) for p in parts)
        except TypeError:
            raise DomainError(f"parts must be integers, got {parts!r}") from None
        for i, p in enumerate(parts):
            if p <= 0:
                raise DomainError(f"parts must be positive, got {p}")
            if i and parts[i - 1] <= p:
                raise DomainError(f"parts must be strictly decreasing: {parts}")
        return tuple.__new__(cls, parts)

    @property
    def parts(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def weight(self) -> int:
        return sum(self)

    @property
    def length(self) -> int:
        return len(self)

    def __repr__(self) -> str:
        return f"StrictPartition({list(self)})"

    def to_json(self) -> list[int]:
        return list(self)


def _trusted(parts: Iterable[int]) -> StrictPartition:
    # skips validation; callers guarantee strictness
    return tuple.__new__(StrictPartition, parts)


EMPTY = _trusted(())


def as_partition(value: Sequence[int]) -> StrictPartition:
    if isinstance(value, StrictPartition):
        return value
    return StrictPartition(value)


def _strict_below(n: int, bound: int) -> Iterator[tuple[int, ...]]:
    # strict partitions of n with all parts <= bound, lexicographically decreasing
    if n == 0:
        yield ()
        return
    for first in range(min(n, bound), 0, -1):
        # the remaining parts are < first and sum to n - first
        if first * (first - 1) // 2 < n - first:
            break
        for rest in _strict_below(n - first, first - 1):
            yield (first,) + rest


@lru_cache(maxsize=None)
def enumerate_strict(n: int) -> tuple[StrictPartition, ...]:
    """All strict partitions of ``n``, lexicographically decreasing."""
    if n < 0:
        raise DomainError(f"weight must be nonnegative, got {n}")
    return tuple(_trusted(p) for p in _strict_below(n, n))


def enumerate_up_to(m: int) -> tuple[StrictPartition, ...]:
    """All strict partitions of weight at most ``m``, ordered by weight."""
    return tuple(lam for n in range(m + 1) for lam in enumerate_strict(n))


def count_strict(n: int) -> int:
    return len(enumerate_strict(n)) if n >= 0 else 0


def addable_contents(lam: Sequence[int]) -> tuple[int, ...]:
    """Contents of the boxes that can be added to ``lam`` (ascending).

    The empty diagram has the single addable content 0.
    """
    found = []
    for i, p in enumerate(lam):
        if i == 0 or lam[i - 1] > p + 1:
            found.append(p)
    if not lam or lam[-1] >= 2:
        found.append(0)
    return tuple(sorted(found))


def removable_contents(lam: Sequence[int]) -> tuple[int, ...]:
    """Contents of the boxes that can be removed from ``lam`` (ascending)."""
    found = []
    k = len(lam)
    for i, p in enumerate(lam):
        if i == k - 1 or lam[i + 1] < p - 1:
            found.append(p - 1)
    return tuple(sorted(found))


def add_box(lam: Sequence[int], x: int) -> StrictPartition:
    """The diagram obtained by adding the box of content ``x``."""
    if x not in addable_contents(lam):
        raise DomainError(f"content {x} is not addable to {list(lam)}")
    if x == 0:
        return _trusted(tuple(lam) + (1,))
    parts = list(lam)
    parts[parts.index(x)] += 1
    return _trusted(parts)


def remove_box(lam: Sequence[int], y: int) -> StrictPartition:
    """The diagram obtained by removing the box of content ``y``."""
    if y not in removable_contents(lam):
        raise DomainError(f"content {y} is not removable from {list(lam)}")
    parts = list(lam)
    i = parts.index(y + 1)
    parts[i] -= 1
    if parts[i] == 0:
        parts.pop()
    return _trusted(parts)


@dataclass(frozen=True, slots=True)
class KerovCoordinates:
    """Interlacing contents of addable (X) and removable (Y) boxes."""

    X: tuple[int, ...]
    Y: tuple[int, ...]

    @property
    def x_prime(self) -> tuple[int, ...]:
        """Addable contents with 0 dropped."""
        return tuple(x for x in self.X if x != 0)

    def to_json(self) -> dict[str, list[int]]:
        return {"X": list(self.X), "Y": list(self.Y)}


def kerov_coordinates(lam: Sequence[int]) -> KerovCoordinates:
    return KerovCoordinates(addable_contents(lam), removable_contents(lam))


def interlacing_case(k: KerovCoordinates) -> str:
    """'a' when the diagram has a one-box row (0 in Y), 'b' when 0 is in X."""
    if k.Y and k.Y[0] == 0:
        return "a"
    return "b"


def _check_interlacing(xs: Sequence[int], ys: Sequence[int]) -> None:
    if len(xs) != len(ys):
        raise DomainError(f"|X'| = {len(xs)} differs from |Y| = {len(ys)}")
    merged = []
    for y, x in zip(ys, xs):
        merged += [y, x]
    if any(a >= b for a, b in zip(merged, merged[1:])) or (merged and merged[0] < 0):
        raise DomainError(f"contents do not interlace: X'={list(xs)}, Y={list(ys)}")


def from_kerov(k: KerovCoordinates) -> StrictPartition:
    """Rebuild the diagram from its Kerov coordinates.

    ``k.X`` may be given with or without 0; the pattern is decided by ``k.Y``.
    Each pair (y_j, x_j) contributes the run of parts x_j, x_j - 1, ..., y_j + 1.
    """
    xs = sorted(x for x in k.X if x != 0)
    ys = sorted(k.Y)
    if len(set(k.X)) != len(k.X) or len(set(ys)) != len(ys):
        raise DomainError("Kerov coordinates must not repeat")
    if ys and ys[0] == 0 and 0 in k.X:
        raise DomainError("0 cannot be both addable and removable")
    _check_interlacing(xs, ys)
    parts: list[int] = []
    for x, y in reversed(list(zip(xs, ys))):
        parts.extend(range(x, y, -1))
    return _trusted(parts)


def edge_multiplicity(mu: Sequence[int], lam: Sequence[int]) -> int:
    """Multiplicity of the edge mu -> lam in the graph of strict partitions."""
    if sum(lam) != sum(mu) + 1:
        return 0
    if len(lam) == len(mu):
        diffs = sorted(b - a for a, b in zip(mu, lam))
        return 2 if diffs == [0] * (len(diffs) - 1) + [1] else 0
    if len(lam) == len(mu) + 1 and lam[-1] == 1 and tuple(lam[:-1]) == tuple(mu):
        return 1
    return 0


def box_contents(lam: Sequence[int]) -> Iterator[int]:
    """Contents of all boxes of the shifted diagram, row by row."""
    for p in lam:
        yield from range(p)


def contains(mu: Sequence[int], lam: Sequence[int]) -> bool:
    """Whether the diagram of ``mu`` sits inside that of ``lam``."""
    return len(mu) <= len(lam) and all(a <= b for a, b in zip(mu, lam))


@dataclass(frozen=True, slots=True)
class FrobeniusDouble:
    """Modified Frobenius coordinates (a | b) of the doubled diagram.

    Half-integers are stored doubled: ``a2[i] == 2 * a[i]``.
    """

    a2: tuple[int, ...]
    b2: tuple[int, ...]

    @property
    def a(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, 2) for v in self.a2)

    @property
    def b(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(v, 2) for v in self.b2)

    def __str__(self) -> str:
        a = ", ".join(str(v) for v in self.a)
        b = ", ".join(str(v) for v in self.b)
        return f"({a} | {b})"


def double(lam: Sequence[int]) -> FrobeniusDouble:
    return FrobeniusDouble(tuple(2 * p + 1 for p in lam), tuple(2 * p - 1 for p in lam))
