"""Dense GF(2) matrices with bit-packed rows.

Each row is stored as a Python ``int`` whose bit ``j`` holds column ``j``.
Row operations are single XORs on those integers, which keeps Gaussian
elimination cheap for the matrix sizes that appear in graph-state work
(a few hundred rows at most).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "BitMatrix",
    "EliminationResult",
    "row_echelon",
    "rank",
    "trim_zero_columns",
]


@dataclass(frozen=True)
class BitMatrix:
    """Immutable ``n_rows x n_cols`` matrix over GF(2).

    Parameters
    ----------
    n_rows, n_cols : int
        Shape of the matrix. Either may be zero.
    rows : tuple of int
        Packed rows; bit ``j`` of ``rows[i]`` is entry ``(i, j)``.
    """

    n_rows: int
    n_cols: int
    rows: tuple[int, ...]

    def __post_init__(self):
        if self.n_rows < 0 or self.n_cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        if len(self.rows) != self.n_rows:
            raise ValueError(f"expected {self.n_rows} rows, got {len(self.rows)}")
        limit = 1 << self.n_cols
        for r in self.rows:
            if r < 0 or r >= limit:
                raise ValueError(f"row {r:#x} has bits beyond column {self.n_cols}")

    # -- constructors -----------------------------------------------------

    @classmethod
    def zeros(cls, n_rows: int, n_cols: int) -> "BitMatrix":
        return cls(n_rows, n_cols, (0,) * n_rows)

    @classmethod
    def identity(cls, n: int) -> "BitMatrix":
        return cls(n, n, tuple(1 << i for i in range(n)))

    @classmethod
    def from_array(cls, a) -> "BitMatrix":
        """Build from a 2-D array-like of 0/1 (any integer or bool dtype)."""
        arr = np.asarray(a)
        if arr.ndim != 2:
            raise ValueError(f"expected a 2-D array, got shape {arr.shape}")
        arr = arr.astype(np.int64) & 1
        weights = [1 << j for j in range(arr.shape[1])]
        rows = tuple(
            sum(w for w, bit in zip(weights, row) if bit) for row in arr.tolist()
        )
        return cls(arr.shape[0], arr.shape[1], rows)

    @classmethod
    def from_strings(cls, strings: Sequence[str], n_cols: int | None = None) -> "BitMatrix":
        """Build from strings such as ``["1010", "1101"]`` (column 0 first)."""
        if n_cols is None:
            n_cols = len(strings[0]) if strings else 0
        rows = []
        for s in strings:
            if len(s) != n_cols or set(s) - {"0", "1"}:
                raise ValueError(f"bad row string {s!r}")
            rows.append(sum(1 << j for j, ch in enumerate(s) if ch == "1"))
        return cls(len(rows), n_cols, tuple(rows))

    # -- views ------------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.n_rows, self.n_cols)

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if not (0 <= j < self.n_cols):
            raise IndexError(j)
        return (self.rows[i] >> j) & 1

    def to_array(self) -> np.ndarray:
        out = np.zeros((self.n_rows, self.n_cols), dtype=np.uint8)
        for i, r in enumerate(self.rows):
            for j in range(self.n_cols):
                if (r >> j) & 1:
                    out[i, j] = 1
        return out

    def row_strings(self) -> list[str]:
        return [
            "".join("1" if (r >> j) & 1 else "0" for j in range(self.n_cols))
            for r in self.rows
        ]

    def column(self, j: int) -> int:
        """Column ``j`` packed as an int whose bit ``i`` is row ``i``."""
        out = 0
        for i, r in enumerate(self.rows):
            if (r >> j) & 1:
                out |= 1 << i
        return out

    def transpose(self) -> "BitMatrix":
        return BitMatrix(
            self.n_cols, self.n_rows, tuple(self.column(j) for j in range(self.n_cols))
        )

    @property
    def T(self) -> "BitMatrix":
        return self.transpose()

    def select_rows(self, indices: Iterable[int]) -> "BitMatrix":
        picked = tuple(self.rows[i] for i in indices)
        return BitMatrix(len(picked), self.n_cols, picked)

    def select_columns(self, indices: Sequence[int]) -> "BitMatrix":
        rows = []
        for r in self.rows:
            v = 0
            for new_j, j in enumerate(indices):
                if (r >> j) & 1:
                    v |= 1 << new_j
            rows.append(v)
        return BitMatrix(self.n_rows, len(indices), tuple(rows))

    def column_range(self, start: int, stop: int) -> "BitMatrix":
        mask = (1 << (stop - start)) - 1
        return BitMatrix(
            self.n_rows, stop - start, tuple((r >> start) & mask for r in self.rows)
        )

    def hstack(self, other: "BitMatrix") -> "BitMatrix":
        if other.n_rows != self.n_rows:
            raise ValueError("row counts differ")
        shift = self.n_cols
        return BitMatrix(
            self.n_rows,
            self.n_cols + other.n_cols,
            tuple(a | (b << shift) for a, b in zip(self.rows, other.rows)),
        )

    def __matmul__(self, other: "BitMatrix") -> "BitMatrix":
        if self.n_cols != other.n_rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        out = []
        for r in self.rows:
            acc = 0
            k = 0
            while r:
                if r & 1:
                    acc ^= other.rows[k]
                r >>= 1
                k += 1
            out.append(acc)
        return BitMatrix(self.n_rows, other.n_cols, tuple(out))

    def is_zero(self) -> bool:
        return not any(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(self.row_strings())
        return f"BitMatrix({self.n_rows}x{self.n_cols}: [{body}])"


@dataclass(frozen=True)
class EliminationResult:
    """Outcome of :func:`row_echelon`.

    ``transform @ original == echelon`` holds bit-exactly, ``transform`` is
    invertible, and the zero rows of the eliminated block sit at the bottom.
    """

    echelon: BitMatrix
    rank: int
    transform: BitMatrix
    zero_row_indices: tuple[int, ...]
    pivot_columns: tuple[int, ...] = ()


def row_echelon(m: BitMatrix, active_cols: range | None = None) -> EliminationResult:
    """Row-reduce the ``active_cols`` block of ``m`` to row echelon form.

    Row operations act on whole rows, so columns outside the active block are
    carried along. Pivots are taken left to right, each time choosing the
    first row at or below the current pivot row with a set bit.
    """
    if active_cols is None:
        active_cols = range(m.n_cols)
    if active_cols.step != 1 or (
        len(active_cols) and (active_cols.start < 0 or active_cols.stop > m.n_cols)
    ):
        raise ValueError(f"active_cols {active_cols} is not a contiguous block of {m.n_cols} columns")

    rows = list(m.rows)
    trans = [1 << i for i in range(m.n_rows)]
    pivot_row = 0
    pivots = []
    for col in active_cols:
        if pivot_row == m.n_rows:
            break
        bit = 1 << col
        found = next((i for i in range(pivot_row, m.n_rows) if rows[i] & bit), None)
        if found is None:
            continue
        if found != pivot_row:
            rows[found], rows[pivot_row] = rows[pivot_row], rows[found]
            trans[found], trans[pivot_row] = trans[pivot_row], trans[found]
        prow, ptrans = rows[pivot_row], trans[pivot_row]
        for i in range(pivot_row + 1, m.n_rows):
            if rows[i] & bit:
                rows[i] ^= prow
                trans[i] ^= ptrans
        pivots.append(col)
        pivot_row += 1

    return EliminationResult(
        echelon=BitMatrix(m.n_rows, m.n_cols, tuple(rows)),
        rank=pivot_row,
        transform=BitMatrix(m.n_rows, m.n_rows, tuple(trans)),
        zero_row_indices=tuple(range(pivot_row, m.n_rows)),
        pivot_columns=tuple(pivots),
    )


def rank(m: BitMatrix) -> int:
    """GF(2) rank of ``m``."""
    rows = [r for r in m.rows if r]
    r = 0
    while rows:
        pivot = rows.pop()
        low = pivot & -pivot
        rows = [x ^ pivot if x & low else x for x in rows]
        rows = [x for x in rows if x]
        r += 1
    return r


def trim_zero_columns(m: BitMatrix) -> tuple[BitMatrix, tuple[int, ...]]:
    """Drop all-zero columns; also return the original index of each kept column."""
    support = 0
    for r in m.rows:
        support |= r
    kept = tuple(j for j in range(m.n_cols) if (support >> j) & 1)
    return m.select_columns(kept), kept
