"""Exact dense linear algebra over the scalar fields.

Rank and determinant use fraction-free (Bareiss) elimination with full
pivoting; the divisions are exact in any integral domain, which keeps
intermediate entries from blowing up the way naive cross-multiplication
does.  Kernel bases come from plain Gauss-Jordan, which is fine over a
field at these sizes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .fields import Field, FieldError, Scalar


def _common_field(entries) -> Field:
    field: Field | None = None
    for row in entries:
        for x in row:
            if field is None:
                field = x.field
            elif field != x.field:
                if x.field.is_rational:
                    continue
                if field.is_rational:
                    field = x.field
                else:
                    raise FieldError("matrix entries mix cyclotomic orders")
    if field is None:
        raise ValueError("empty matrix")
    return field


@dataclass(frozen=True)
class RankResult:
    rank: int
    pivot_rows: tuple[int, ...]  # original indices of an independent row basis
    pivot_cols: tuple[int, ...]


class Matrix:
    """Immutable matrix of Scalars sharing one field spec."""

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, entries):
        entries = tuple(tuple(row) for row in entries)
        field = _common_field(entries)
        entries = tuple(
            tuple(field.scalar(x) for x in row) for row in entries
        )
        cols = len(entries[0])
        if any(len(row) != cols for row in entries):
            raise ValueError("ragged matrix")
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "field", field)

    def __setattr__(self, *a):  # pragma: no cover
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def from_values(field: Field, values) -> "Matrix":
        return Matrix([[field.scalar(x) for x in row] for row in values])

    def __getitem__(self, idx):
        i, j = idx
        return self.entries[i][j]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.rows == other.rows
            and self.cols == other.cols
            and all(
                self.entries[i][j] == other.entries[i][j]
                for i in range(self.rows)
                for j in range(self.cols)
            )
        )

    def __hash__(self):
        return hash(self.entries)

    def transpose(self) -> "Matrix":
        return Matrix(tuple(zip(*self.entries)))

    def submatrix(self, row_idx, col_idx=None) -> "Matrix":
        if col_idx is None:
            col_idx = range(self.cols)
        return Matrix(
            [[self.entries[i][j] for j in col_idx] for i in row_idx]
        )

    # -- Bareiss ------------------------------------------------------

    def rank_result(self) -> RankResult:
        """Fraction-free elimination with full pivoting."""
        m = [list(row) for row in self.entries]
        nrows, ncols = self.rows, self.cols
        row_perm = list(range(nrows))
        col_perm = list(range(ncols))
        prev = self.field.one()
        rank = 0
        for k in range(min(nrows, ncols)):
            pivot = None
            for i in range(k, nrows):
                for j in range(k, ncols):
                    if not m[i][j].is_zero():
                        pivot = (i, j)
                        break
                if pivot:
                    break
            if pivot is None:
                break
            pi, pj = pivot
            if pi != k:
                m[k], m[pi] = m[pi], m[k]
                row_perm[k], row_perm[pi] = row_perm[pi], row_perm[k]
            if pj != k:
                for row in m:
                    row[k], row[pj] = row[pj], row[k]
                col_perm[k], col_perm[pj] = col_perm[pj], col_perm[k]
            pk = m[k][k]
            for i in range(k + 1, nrows):
                for j in range(k + 1, ncols):
                    m[i][j] = (m[i][j] * pk - m[i][k] * m[k][j]) / prev
                m[i][k] = self.field.zero()
            prev = pk
            rank += 1
        return RankResult(
            rank,
            tuple(sorted(row_perm[:rank])),
            tuple(sorted(col_perm[:rank])),
        )

    def rank(self) -> int:
        return self.rank_result().rank

    def det(self) -> Scalar:
        if self.rows != self.cols:
            raise ValueError("determinant of a non-square matrix")
        m = [list(row) for row in self.entries]
        n = self.rows
        prev = self.field.one()
        sign = 1
        for k in range(n - 1):
            if m[k][k].is_zero():
                for i in range(k + 1, n):
                    if not m[i][k].is_zero():
                        m[k], m[i] = m[i], m[k]
                        sign = -sign
                        break
                else:
                    return self.field.zero()
            pk = m[k][k]
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    m[i][j] = (m[i][j] * pk - m[i][k] * m[k][j]) / prev
            prev = pk
        value = m[n - 1][n - 1]
        return -value if sign < 0 else value

    # -- kernel ---------------------------------------------------------

    def nullspace(self) -> list[tuple[Scalar, ...]]:
        """Basis of the right kernel, echelonized (free var set to 1)."""
        m = [list(row) for row in self.entries]
        nrows, ncols = self.rows, self.cols
        pivots: list[int] = []
        r = 0
        for c in range(ncols):
            piv = None
            for i in range(r, nrows):
                if not m[i][c].is_zero():
                    piv = i
                    break
            if piv is None:
                continue
            m[r], m[piv] = m[piv], m[r]
            inv = m[r][c].inverse()
            m[r] = [x * inv for x in m[r]]
            for i in range(nrows):
                if i != r and not m[i][c].is_zero():
                    f = m[i][c]
                    m[i] = [a - f * b for a, b in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == nrows:
                break
        free = [c for c in range(ncols) if c not in pivots]
        basis = []
        zero, one = self.field.zero(), self.field.one()
        for fc in free:
            vec = [zero] * ncols
            vec[fc] = one
            for row_i, pc in enumerate(pivots):
                vec[pc] = -m[row_i][fc]
            basis.append(tuple(vec))
        return basis

    def to_json(self):
        return [[x.to_json() for x in row] for row in self.entries]

    @staticmethod
    def from_json(obj) -> "Matrix":
        return Matrix([[Scalar.from_json(x) for x in row] for row in obj])

    def __repr__(self):
        body = "\n".join(
            "  [" + ", ".join(repr(x) for x in row) + "]" for row in self.entries
        )
        return f"Matrix {self.rows}x{self.cols}\n{body}"


def matrix_rank(matrix: Matrix) -> int:
    return matrix.rank()


def identity(field: Field, n: int) -> Matrix:
    one, zero = field.one(), field.zero()
    return Matrix([[one if i == j else zero for j in range(n)] for i in range(n)])
