"""Exact linear algebra over the rationals and over the polynomial ring.

Rational matrices are dense grids of Fraction; polynomial matrices are dense
grids of Polynomial sharing one ambient ring.  Everything is immutable and
exact: kernels come from Gauss-Jordan elimination over the rationals,
polynomial determinants from fraction-free (Bareiss) elimination with a
cofactor fallback for small sizes, and symbolic rank from fraction-free
elimination with nonzero polynomial pivots.
"""

from __future__ import annotations

import itertools
import json
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, NilmapError, ShapeError
from .poly import Polynomial


class RationalMatrix:
    """Immutable dense matrix with exact rational entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence[Fraction]]):
        grid = tuple(tuple(Fraction(v) for v in row) for row in entries)
        if not grid or not grid[0]:
            raise ShapeError("matrix must have at least one row and column")
        cols = len(grid[0])
        if any(len(row) != cols for row in grid):
            raise ShapeError("ragged matrix rows")
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", grid)

    def __setattr__(self, *args):
        raise AttributeError("RationalMatrix instances are immutable")

    @classmethod
    def identity(cls, n: int) -> "RationalMatrix":
        return cls(
            [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
        )

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, RationalMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __mul__(self, other: "RationalMatrix") -> "RationalMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        return RationalMatrix(
            [
                [
                    sum(
                        (self.entries[i][k] * other.entries[k][j] for k in range(self.cols)),
                        Fraction(0),
                    )
                    for j in range(other.cols)
                ]
                for i in range(self.rows)
            ]
        )

    def apply(self, vector: Sequence[Fraction]) -> list[Fraction]:
        if len(vector) != self.cols:
            raise DimensionMismatch("vector length does not match column count")
        return [
            sum((row[j] * Fraction(vector[j]) for j in range(self.cols)), Fraction(0))
            for row in self.entries
        ]

    def transpose(self) -> "RationalMatrix":
        return RationalMatrix(
            [[self.entries[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def is_identity(self) -> bool:
        return self.rows == self.cols and self == RationalMatrix.identity(self.rows)

    def inverse(self) -> "RationalMatrix":
        """Exact inverse via Gauss-Jordan; raises on singular matrices."""
        if self.rows != self.cols:
            raise ShapeError("only square matrices can be inverted")
        n = self.rows
        work = [list(row) + [Fraction(int(i == j)) for j in range(n)]
                for i, row in enumerate(self.entries)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if work[r][col] != 0), None)
            if pivot is None:
                raise NilmapError("matrix is singular")
            work[col], work[pivot] = work[pivot], work[col]
            inv = Fraction(1) / work[col][col]
            work[col] = [v * inv for v in work[col]]
            for r in range(n):
                if r != col and work[r][col] != 0:
                    factor = work[r][col]
                    work[r] = [a - factor * b for a, b in zip(work[r], work[col])]
        return RationalMatrix([row[n:] for row in work])

    def rref(self) -> tuple["RationalMatrix", list[int]]:
        """Reduced row echelon form plus the pivot column indices."""
        work = [list(row) for row in self.entries]
        pivots: list[int] = []
        r = 0
        for col in range(self.cols):
            if r == self.rows:
                break
            pivot = next((i for i in range(r, self.rows) if work[i][col] != 0), None)
            if pivot is None:
                continue
            work[r], work[pivot] = work[pivot], work[r]
            inv = Fraction(1) / work[r][col]
            work[r] = [v * inv for v in work[r]]
            for i in range(self.rows):
                if i != r and work[i][col] != 0:
                    factor = work[i][col]
                    work[i] = [a - factor * b for a, b in zip(work[i], work[r])]
            pivots.append(col)
            r += 1
        return RationalMatrix(work), pivots

    def to_json(self) -> list[list[str]]:
        return [[str(v) for v in row] for row in self.entries]

    @classmethod
    def from_json(cls, data: Sequence[Sequence[str]]) -> "RationalMatrix":
        return cls([[Fraction(v) for v in row] for row in data])

    def __repr__(self):
        return f"RationalMatrix({json.dumps(self.to_json())})"


def kernel(m: RationalMatrix) -> list[list[Fraction]]:
    """Basis of the right null space; empty iff the matrix has full column rank."""
    _, pivots = m.rref()
    reduced = m.rref()[0]
    free = [c for c in range(m.cols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [Fraction(0)] * m.cols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = -reduced.entries[r][fc]
        basis.append(vec)
    return basis


class LinearMap:
    """Invertible rational matrix acting as x -> Mx, with cached exact inverse."""

    __slots__ = ("matrix", "inverse")

    def __init__(self, matrix: RationalMatrix, inverse: RationalMatrix | None = None):
        if matrix.rows != matrix.cols:
            raise ShapeError("linear maps must be square")
        if inverse is None:
            inverse = matrix.inverse()
        if not (matrix * inverse).is_identity():
            raise ShapeError("provided inverse is not an exact inverse")
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "inverse", inverse)

    def __setattr__(self, *args):
        raise AttributeError("LinearMap instances are immutable")

    @property
    def dimension(self) -> int:
        return self.matrix.rows

    @classmethod
    def identity(cls, n: int) -> "LinearMap":
        ident = RationalMatrix.identity(n)
        return cls(ident, ident)

    @classmethod
    def from_matrix(cls, entries) -> "LinearMap":
        return cls(RationalMatrix(entries))

    def inverted(self) -> "LinearMap":
        return LinearMap(self.inverse, self.matrix)

    def __mul__(self, other: "LinearMap") -> "LinearMap":
        return LinearMap(self.matrix * other.matrix, other.inverse * self.inverse)

    def __eq__(self, other):
        if not isinstance(other, LinearMap):
            return NotImplemented
        return self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def apply(self, vector: Sequence[Fraction]) -> list[Fraction]:
        return self.matrix.apply(vector)

    def is_identity(self) -> bool:
        return self.matrix.is_identity()

    def to_json(self) -> dict:
        return {"matrix": self.matrix.to_json()}

    def __repr__(self):
        return f"LinearMap({json.dumps(self.matrix.to_json())})"


def elementary_permutation(n: int, i: int, j: int) -> LinearMap:
    """The permutation matrix interchanging coordinates i and j (1-based)."""
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise ShapeError(f"need distinct indices in 1..{n}, got {i}, {j}")
    grid = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    grid[i - 1], grid[j - 1] = grid[j - 1], grid[i - 1]
    m = RationalMatrix(grid)
    return LinearMap(m, m)


def elementary_row_add(n: int, i: int, a, j: int) -> LinearMap:
    """The elementary matrix adding a times row i to row j (1-based, i != j)."""
    if not (1 <= i <= n and 1 <= j <= n) or i == j:
        raise ShapeError(f"need distinct indices in 1..{n}, got {i}, {j}")
    a = Fraction(a)
    fwd = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
    back = [row[:] for row in fwd]
    fwd[j - 1][i - 1] = a
    back[j - 1][i - 1] = -a
    return LinearMap(RationalMatrix(fwd), RationalMatrix(back))


class PolyMatrix:
    """Immutable dense matrix of polynomials sharing one ambient ring."""

    __slots__ = ("rows", "cols", "n", "entries")

    def __init__(self, entries: Sequence[Sequence[Polynomial]]):
        grid = tuple(tuple(row) for row in entries)
        if not grid or not grid[0]:
            raise ShapeError("matrix must have at least one row and column")
        cols = len(grid[0])
        if any(len(row) != cols for row in grid):
            raise ShapeError("ragged matrix rows")
        n = grid[0][0].n
        for row in grid:
            for p in row:
                if p.n != n:
                    raise DimensionMismatch(
                        "polynomial matrix entries live in different rings"
                    )
        object.__setattr__(self, "rows", len(grid))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "entries", grid)

    def __setattr__(self, *args):
        raise AttributeError("PolyMatrix instances are immutable")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.entries == other.entries

    def __mul__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.cols != other.rows:
            raise DimensionMismatch(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        zero = Polynomial.zero(self.n)
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + self.entries[i][k] * other.entries[k][j]
                row.append(acc)
            out.append(row)
        return PolyMatrix(out)

    def power(self, k: int) -> "PolyMatrix":
        if self.rows != self.cols:
            raise ShapeError("only square matrices can be raised to a power")
        result = self
        for _ in range(k - 1):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix(
            [[self.entries[i][j] for j in col_idx] for i in row_idx]
        )

    def to_json(self) -> list[list[str]]:
        from .parsing import format_polynomial

        return [[format_polynomial(p) for p in row] for row in self.entries]

    def __repr__(self):
        return f"PolyMatrix({json.dumps(self.to_json())})"


def _det_cofactor(m: PolyMatrix) -> Polynomial:
    n = m.rows
    if n == 1:
        return m[0, 0]
    if n == 2:
        return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]
    acc = Polynomial.zero(m.n)
    rest = list(range(1, n))
    for j in range(n):
        entry = m[0, j]
        if entry.is_zero():
            continue
        cols = [c for c in range(n) if c != j]
        minor = _det_cofactor(m.submatrix(rest, cols))
        term = entry * minor
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def _det_bareiss(m: PolyMatrix) -> Polynomial:
    # Fraction-free elimination; every division is exact in the polynomial
    # ring, which keeps intermediate entries polynomial instead of rational
    # functions.
    n = m.rows
    work = [[m[i, j] for j in range(n)] for i in range(n)]
    sign = 1
    prev = Polynomial.const(m.n, 1)
    for k in range(n - 1):
        if work[k][k].is_zero():
            pivot = next(
                (r for r in range(k + 1, n) if not work[r][k].is_zero()), None
            )
            if pivot is None:
                return Polynomial.zero(m.n)
            work[k], work[pivot] = work[pivot], work[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = work[k][k] * work[i][j] - work[i][k] * work[k][j]
                work[i][j] = num.exact_div(prev)
            work[i][k] = Polynomial.zero(m.n)
        prev = work[k][k]
    det = work[n - 1][n - 1]
    return det if sign == 1 else -det


def poly_det(m: PolyMatrix) -> Polynomial:
    """Exact determinant of a square polynomial matrix."""
    if m.rows != m.cols:
        raise ShapeError("determinant of a non-square matrix")
    if m.rows <= 4:
        return _det_cofactor(m)
    return _det_bareiss(m)


def principal_minor_sum(m: PolyMatrix, k: int) -> Polynomial:
    """Sum of all k x k principal minors (explicit enumeration)."""
    if m.rows != m.cols:
        raise ShapeError("principal minors need a square matrix")
    if not 1 <= k <= m.rows:
        raise ShapeError(f"minor size {k} out of range 1..{m.rows}")
    acc = Polynomial.zero(m.n)
    for idx in itertools.combinations(range(m.rows), k):
        acc = acc + poly_det(m.submatrix(idx, idx))
    return acc


def poly_matrix_rank(m: PolyMatrix) -> int:
    """Rank over the fraction field, by fraction-free elimination.

    Pivots are chosen as the lowest-total-degree nonzero entry in the
    current column block to limit intermediate growth; any nonzero pivot
    is mathematically valid.
    """
    work = [list(row) for row in m.entries]
    rank = 0
    row = 0
    for col in range(m.cols):
        candidates = [
            (work[r][col].total_degree(), r)
            for r in range(row, m.rows)
            if not work[r][col].is_zero()
        ]
        if not candidates:
            continue
        _, pr = min(candidates)
        work[row], work[pr] = work[pr], work[row]
        pivot = work[row][col]
        for r in range(row + 1, m.rows):
            if work[r][col].is_zero():
                continue
            factor = work[r][col]
            work[r] = [
                pivot * a - factor * b for a, b in zip(work[r], work[row])
            ]
        rank += 1
        row += 1
        if row == m.rows:
            break
    return rank
