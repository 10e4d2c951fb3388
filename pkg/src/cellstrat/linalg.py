"""Exact rational linear algebra: a small dense matrix type and an incremental sparse eliminator."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError

ZERO = Fraction(0)
ONE = Fraction(1)


class RationalMatrix:
    """Dense matrix of Fractions, stored row-major."""

    __slots__ = ("rows", "ncols")

    def __init__(self, rows: Sequence[Sequence], ncols: int | None = None):
        self.rows = [[Fraction(x) for x in row] for row in rows]
        self.ncols = ncols if ncols is not None else (len(self.rows[0]) if self.rows else 0)
        if any(len(row) != self.ncols for row in self.rows):
            raise DimensionError("ragged matrix")

    @classmethod
    def zeros(cls, m: int, n: int) -> "RationalMatrix":
        return cls([[ZERO] * n for _ in range(m)], n)

    @classmethod
    def identity(cls, m: int) -> "RationalMatrix":
        out = cls.zeros(m, m)
        for i in range(m):
            out.rows[i][i] = ONE
        return out

    @classmethod
    def from_columns(cls, columns: Sequence[Mapping[int, Fraction]], nrows: int) -> "RationalMatrix":
        out = cls.zeros(nrows, len(columns))
        for j, col in enumerate(columns):
            for i, x in col.items():
                out.rows[i][j] = Fraction(x)
        return out

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), self.ncols

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return isinstance(other, RationalMatrix) and self.shape == other.shape and self.rows == other.rows

    __hash__ = None

    def __matmul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.ncols != len(other.rows):
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        out = []
        orows = other.rows
        for row in self.rows:
            acc = [ZERO] * other.ncols
            for k, x in enumerate(row):
                if x:
                    for j, y in enumerate(orows[k]):
                        if y:
                            acc[j] += x * y
            out.append(acc)
        return RationalMatrix(out, other.ncols)

    def trace(self) -> Fraction:
        if len(self.rows) != self.ncols:
            raise DimensionError("trace of a non-square matrix")
        return sum((self.rows[i][i] for i in range(self.ncols)), ZERO)

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix([list(col) for col in zip(*self.rows)], len(self.rows)) if self.rows else RationalMatrix([], 0)

    def rref(self) -> tuple["RationalMatrix", list[int]]:
        """Reduced row echelon form and the pivot columns, pivoting on the first nonzero entry."""
        rows = [list(row) for row in self.rows]
        pivots = []
        lead = 0
        for c in range(self.ncols):
            pivot = next((i for i in range(lead, len(rows)) if rows[i][c]), None)
            if pivot is None:
                continue
            rows[lead], rows[pivot] = rows[pivot], rows[lead]
            inv = 1 / rows[lead][c]
            rows[lead] = [x * inv for x in rows[lead]]
            for i in range(len(rows)):
                if i != lead and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[lead])]
            pivots.append(c)
            lead += 1
            if lead == len(rows):
                break
        return RationalMatrix(rows, self.ncols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def is_monomial_01(self) -> bool:
        """Every column has exactly one nonzero entry, equal to 1."""
        for j in range(self.ncols):
            col = [self.rows[i][j] for i in range(len(self.rows)) if self.rows[i][j]]
            if col != [ONE]:
                return False
        return True

    def __str__(self) -> str:
        return "\n".join(" ".join(str(x) for x in row) for row in self.rows)


class SparseEliminator:
    """Incremental reduced echelon form of a row space of sparse vectors.

    Each stored row has a pivot (its largest column) with coefficient 1, and no
    stored row mentions another row's pivot.  The columns never chosen as pivots
    index a basis of the quotient of the ambient space by the row space.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivot_rows: dict[int, dict[int, Fraction]] = {}
        # column -> pivots of rows having a non-pivot entry there
        self.occurs: dict[int, set[int]] = {}

    def reduce(self, vec: Mapping[int, Fraction]) -> dict[int, Fraction]:
        """Normal form of ``vec`` modulo the row space."""
        out: dict[int, Fraction] = {}
        for c, x in vec.items():
            if not x:
                continue
            row = self.pivot_rows.get(c)
            if row is None:
                out[c] = out.get(c, ZERO) + x
            else:
                for k, y in row.items():
                    if k != c:
                        out[k] = out.get(k, ZERO) - x * y
        return {c: x for c, x in out.items() if x}

    def add(self, vec: Mapping[int, Fraction]) -> bool:
        """Add a relation; returns False when it was already implied."""
        red = self.reduce(vec)
        if not red:
            return False
        p = max(red)
        inv = 1 / red[p]
        row = {c: x * inv for c, x in red.items()}
        # clear the new pivot from stored rows
        for q in self.occurs.pop(p, set()):
            other = self.pivot_rows[q]
            f = other.pop(p)
            for c, x in row.items():
                if c == p:
                    continue
                val = other.get(c, ZERO) - f * x
                if val:
                    other[c] = val
                    self.occurs.setdefault(c, set()).add(q)
                else:
                    other.pop(c, None)
                    s = self.occurs.get(c)
                    if s is not None:
                        s.discard(q)
        self.pivot_rows[p] = row
        for c in row:
            if c != p:
                self.occurs.setdefault(c, set()).add(p)
        return True

    @property
    def rank(self) -> int:
        return len(self.pivot_rows)

    def free_columns(self) -> list[int]:
        return [c for c in range(self.ncols) if c not in self.pivot_rows]


def quotient_action(
    eliminator: SparseEliminator, images: Iterable[int], free: Sequence[int] | None = None
) -> RationalMatrix:
    """Matrix on the quotient basis of the map sending symbol ``c`` to symbol ``images[c]``."""
    free = list(free) if free is not None else eliminator.free_columns()
    position = {c: i for i, c in enumerate(free)}
    images = list(images)
    columns = []
    for c in free:
        reduced = eliminator.reduce({images[c]: ONE})
        columns.append({position[k]: x for k, x in reduced.items()})
    return RationalMatrix.from_columns(columns, len(free))
