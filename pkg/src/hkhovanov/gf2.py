"""Dense GF(2) matrices with rows bit-packed into python ints.

Column j of a row is bit j.  Matrices are immutable after construction;
rank uses leading-bit echelon reduction.
"""

from __future__ import annotations

__all__ = ["GF2Matrix"]


class GF2Matrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: list[int] | None = None):
        if nrows < 0 or ncols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        self.nrows = nrows
        self.ncols = ncols
        if rows is None:
            rows = [0] * nrows
        if len(rows) != nrows:
            raise ValueError("row count mismatch")
        mask = (1 << ncols) - 1
        self.rows = [r & mask for r in rows]

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries) -> "GF2Matrix":
        rows = [0] * nrows
        for r, c in entries:
            rows[r] ^= 1 << c
        return cls(nrows, ncols, rows)

    @classmethod
    def identity(cls, n: int) -> "GF2Matrix":
        return cls(n, n, [1 << i for i in range(n)])

    def get(self, r: int, c: int) -> int:
        return (self.rows[r] >> c) & 1

    def is_zero(self) -> bool:
        return not any(self.rows)

    def rank(self) -> int:
        pivots: dict[int, int] = {}
        for row in self.rows:
            x = row
            while x:
                lead = x.bit_length() - 1
                p = pivots.get(lead)
                if p is None:
                    pivots[lead] = x
                    break
                x ^= p
        return len(pivots)

    def kernel_dim(self) -> int:
        return self.ncols - self.rank()

    def multiply(self, other: "GF2Matrix") -> "GF2Matrix":
        """self @ other, composing self after other would be other-first;
        here rows(self) x cols(other) with self.ncols == other.nrows."""
        if self.ncols != other.nrows:
            raise ValueError("dimension mismatch in GF(2) product")
        out = []
        orows = other.rows
        for row in self.rows:
            acc = 0
            x = row
            while x:
                low = x & -x
                acc ^= orows[low.bit_length() - 1]
                x ^= low
            out.append(acc)
        return GF2Matrix(self.nrows, other.ncols, out)

    def transpose(self) -> "GF2Matrix":
        cols = [0] * self.ncols
        for r, row in enumerate(self.rows):
            x = row
            while x:
                low = x & -x
                cols[low.bit_length() - 1] |= 1 << r
                x ^= low
        return GF2Matrix(self.ncols, self.nrows, cols)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GF2Matrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.nrows, self.ncols, tuple(self.rows)))

    def __repr__(self) -> str:
        return f"GF2Matrix({self.nrows}x{self.ncols})"
