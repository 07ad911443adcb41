"""Dense matrices of arbitrary-precision integers.

Everything in this package that looks numeric is exact: entries are Python
ints, never floats.  IntMatrix is immutable; all operations return new
matrices.
"""

from __future__ import annotations

from typing import Iterable, Sequence


class IntMatrix:

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in data)
        if not rows or not rows[0]:
            raise ValueError("IntMatrix must have at least one row and one column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows in IntMatrix")
        self.data = rows
        self.rows = len(rows)
        self.cols = width

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "IntMatrix":
        return cls([[0] * cols for _ in range(rows)])

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        return self.data[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, IntMatrix) and self.data == other.data

    def __hash__(self) -> int:
        return hash(self.data)

    def __repr__(self) -> str:
        return f"IntMatrix({[list(r) for r in self.data]!r})"

    def __str__(self) -> str:
        width = max((len(str(x)) for row in self.data for x in row), default=1)
        return "\n".join(" ".join(f"{x:>{width}}" for x in row) for row in self.data)

    def __add__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_shape(other)
        return IntMatrix(
            [a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)
        )

    def __sub__(self, other: "IntMatrix") -> "IntMatrix":
        self._check_shape(other)
        return IntMatrix(
            [a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.data, other.data)
        )

    def __neg__(self) -> "IntMatrix":
        return IntMatrix([-x for x in row] for row in self.data)

    def _check_shape(self, other: "IntMatrix") -> None:
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError(
                f"shape mismatch: {self.rows}x{self.cols} vs {other.rows}x{other.cols}"
            )

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        bt = other.transpose().data
        return IntMatrix(
            [sum(a * b for a, b in zip(row, col)) for col in bt] for row in self.data
        )

    def pow(self, e: int) -> "IntMatrix":
        if self.rows != self.cols:
            raise ValueError("matrix power requires a square matrix")
        if e < 0:
            raise ValueError("negative matrix power")
        out = IntMatrix.identity(self.rows)
        for _ in range(e):
            out = out @ self
        return out

    def transpose(self) -> "IntMatrix":
        return IntMatrix(zip(*self.data))

    def hstack(self, other: "IntMatrix") -> "IntMatrix":
        if self.rows != other.rows:
            raise ValueError("hstack requires equal row counts")
        return IntMatrix(ra + rb for ra, rb in zip(self.data, other.data))

    def entries(self):
        for row in self.data:
            yield from row

    def is_zero(self) -> bool:
        return all(x == 0 for x in self.entries())

    def is_zero_one(self) -> bool:
        return all(x in (0, 1) for x in self.entries())

    def total(self) -> int:
        return sum(self.entries())
