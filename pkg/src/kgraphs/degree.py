"""Lattice arithmetic on multi-degrees, i.e. elements of N^k.

A Degree is an immutable tuple of non-negative integers with vector
addition/subtraction and the coordinatewise lattice operations (join,
meet, partial order).  Plain tuple comparison stays lexicographic and is
used only for deterministic iteration; the semantic order is `leq`.
"""

from __future__ import annotations

from itertools import product
from typing import Iterable, Iterator


class Degree(tuple):

    __slots__ = ()

    def __new__(cls, coords: Iterable[int]) -> "Degree":
        t = tuple(int(c) for c in coords)
        if any(c < 0 for c in t):
            raise ValueError(f"degree coordinates must be non-negative, got {t}")
        return super().__new__(cls, t)

    @classmethod
    def zero(cls, k: int) -> "Degree":
        return cls((0,) * k)

    @classmethod
    def ones(cls, k: int) -> "Degree":
        return cls((1,) * k)

    @classmethod
    def unit(cls, k: int, color: int) -> "Degree":
        """The generator e_i for a 1-based color index i."""
        if not 1 <= color <= k:
            raise ValueError(f"color {color} out of range 1..{k}")
        return cls(tuple(1 if i == color - 1 else 0 for i in range(k)))

    @property
    def k(self) -> int:
        return len(self)

    def _check_rank(self, other: "Degree") -> None:
        if len(self) != len(other):
            raise ValueError(f"rank mismatch: {self} vs {other}")

    def __add__(self, other) -> "Degree":  # type: ignore[override]
        self._check_rank(other)
        return Degree(a + b for a, b in zip(self, other))

    def __sub__(self, other) -> "Degree":
        self._check_rank(other)
        diff = tuple(a - b for a, b in zip(self, other))
        if any(c < 0 for c in diff):
            raise ValueError(f"degree subtraction {tuple(self)} - {tuple(other)} leaves N^k")
        return Degree(diff)

    def join(self, other: "Degree") -> "Degree":
        self._check_rank(other)
        return Degree(max(a, b) for a, b in zip(self, other))

    def meet(self, other: "Degree") -> "Degree":
        self._check_rank(other)
        return Degree(min(a, b) for a, b in zip(self, other))

    def leq(self, other: "Degree") -> bool:
        """Coordinatewise partial order; incomparable pairs return False both ways."""
        self._check_rank(other)
        return all(a <= b for a, b in zip(self, other))

    def total(self) -> int:
        return sum(self)

    def __repr__(self) -> str:
        return f"Degree{tuple.__repr__(self)}"


def lattice_points(n: Degree) -> Iterator[Degree]:
    """All points of the interval [0, n], in lexicographic order."""
    for coords in product(*(range(c + 1) for c in n)):
        yield Degree(coords)


def parse_degree(text: str, k: int | None = None) -> Degree:
    """Parse "n1,n2,..." into a Degree, optionally checking the rank."""
    try:
        d = Degree(int(part) for part in text.split(","))
    except ValueError as exc:
        raise ValueError(f"cannot parse degree {text!r}: {exc}") from None
    if k is not None and d.k != k:
        raise ValueError(f"degree {text!r} has rank {d.k}, expected {k}")
    return d
