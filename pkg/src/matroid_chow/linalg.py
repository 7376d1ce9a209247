"""Exact linear algebra over the rationals.

``Matrix`` is a small dense matrix of Fractions that keeps its shape even
when it has no rows or columns. ``SparseEchelon`` maintains an incremental
row echelon form over sparse rows; the ring construction feeds it relations.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

Vector = list  # list[Fraction]


class Matrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Iterable], ncols: int | None = None):
        self.rows = [[Fraction(x) for x in r] for r in rows]
        self.nrows = len(self.rows)
        if ncols is None:
            if not self.rows:
                raise ValueError("column count required for a matrix without rows")
            ncols = len(self.rows[0])
        self.ncols = ncols
        for r in self.rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")

    @classmethod
    def zeros(cls, m: int, n: int) -> "Matrix":
        return cls([[ZERO] * n for _ in range(m)], n)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        return cls([[columns[j][i] for j in range(len(columns))] for i in range(nrows)],
                   len(columns))

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def column(self, j: int) -> Vector:
        return [r[j] for r in self.rows]

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.ncols)]

    @property
    def T(self) -> "Matrix":
        return Matrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
                      self.nrows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append([sum((a * c[k] for k, a in nz), ZERO) for c in cols])
        return Matrix(out, other.ncols)

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.ncols:
            raise ValueError("vector length mismatch")
        nz = [(k, a) for k, a in enumerate(v) if a]
        return [sum((r[k] * a for k, a in nz), ZERO) for r in self.rows]

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)],
                      self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, c) -> "Matrix":
        c = Fraction(c)
        return Matrix([[c * a for a in r] for r in self.rows], self.ncols)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __repr__(self) -> str:
        return f"Matrix({self.nrows}x{self.ncols})"

    def _same_shape(self, other: "Matrix") -> None:
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def is_zero(self) -> bool:
        return all(not a for r in self.rows for a in r)

    def rref(self) -> tuple["Matrix", list[int]]:
        rows = [list(r) for r in self.rows]
        pivots: list[int] = []
        rank = 0
        for c in range(self.ncols):
            p = next((i for i in range(rank, len(rows)) if rows[i][c]), None)
            if p is None:
                continue
            rows[rank], rows[p] = rows[p], rows[rank]
            inv = ONE / rows[rank][c]
            rows[rank] = [a * inv for a in rows[rank]]
            piv = rows[rank]
            for i in range(len(rows)):
                if i != rank and rows[i][c]:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], piv)]
            pivots.append(c)
            rank += 1
            if rank == len(rows):
                break
        return Matrix(rows, self.ncols), pivots

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[Vector]:
        """Basis of the right kernel, one vector per free column."""
        r, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in set(pivots)]
        basis = []
        for f in free:
            v = [ZERO] * self.ncols
            v[f] = ONE
            for i, p in enumerate(pivots):
                v[p] = -r.rows[i][f]
            basis.append(v)
        return basis

    def det(self) -> Fraction:
        if self.nrows != self.ncols:
            raise ValueError("determinant of a non-square matrix")
        rows = [list(r) for r in self.rows]
        n = self.nrows
        d = ONE
        for c in range(n):
            p = next((i for i in range(c, n) if rows[i][c]), None)
            if p is None:
                return ZERO
            if p != c:
                rows[c], rows[p] = rows[p], rows[c]
                d = -d
            d *= rows[c][c]
            inv = ONE / rows[c][c]
            for i in range(c + 1, n):
                if rows[i][c]:
                    f = rows[i][c] * inv
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
        return d

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows


def span_basis(vectors: Sequence[Sequence], dim: int) -> list[Vector]:
    """Row-reduced basis of the span of ``vectors`` in Q^dim."""
    if not vectors:
        return []
    r, pivots = Matrix(vectors, dim).rref()
    return [r.rows[i] for i in range(len(pivots))]


def rank_of(vectors: Sequence[Sequence], dim: int) -> int:
    return len(span_basis(vectors, dim))


def in_span(vectors: Sequence[Sequence], v: Sequence, dim: int) -> bool:
    return rank_of(list(vectors) + [list(v)], dim) == rank_of(vectors, dim)


def same_span(u: Sequence[Sequence], v: Sequence[Sequence], dim: int) -> bool:
    return span_basis(u, dim) == span_basis(v, dim)


def congruence_diagonal(sym: Matrix) -> list[Fraction]:
    """Diagonal of a matrix congruent to ``sym``, by symmetric elimination.

    A zero diagonal with a nonzero off-diagonal entry is handled by adding
    the matching row and column first, which creates a nonzero pivot.
    """
    if sym.nrows != sym.ncols:
        raise ValueError("form is not square")
    a = [list(r) for r in sym.rows]
    for i in range(len(a)):
        for j in range(i):
            if a[i][j] != a[j][i]:
                raise ValueError("form is not symmetric")
    diag: list[Fraction] = []
    while a:
        n = len(a)
        p = next((i for i in range(n) if a[i][i]), None)
        if p is None:
            pair = next(((i, j) for i in range(n) for j in range(n) if a[i][j]), None)
            if pair is None:
                diag.extend([ZERO] * n)
                break
            i, j = pair
            # row_i += row_j, col_i += col_j
            a[i] = [x + y for x, y in zip(a[i], a[j])]
            for r in a:
                r[i] += r[j]
            p = i
        # move pivot to position 0
        a[0], a[p] = a[p], a[0]
        for r in a:
            r[0], r[p] = r[p], r[0]
        piv = a[0][0]
        diag.append(piv)
        first = a[0]
        rest = []
        for r in a[1:]:
            f = r[0] / piv
            rest.append([x - f * y for x, y in zip(r[1:], first[1:])] if f else r[1:])
        a = rest
    return diag


def signature(sym: Matrix) -> tuple[int, int, int]:
    """(positive, negative, zero) counts of a symmetric rational form."""
    d = congruence_diagonal(sym)
    return (sum(1 for x in d if x > 0), sum(1 for x in d if x < 0), sum(1 for x in d if not x))


def is_positive_definite(sym: Matrix) -> bool:
    d = congruence_diagonal(sym)
    return all(x > 0 for x in d)


def restrict_form(form: Matrix, basis: Sequence[Sequence]) -> Matrix:
    """Gram matrix of ``form`` on the span of the given coordinate vectors."""
    k = len(basis)
    if k == 0:
        return Matrix([], 0)
    b = Matrix.from_columns(basis, form.nrows)
    return b.T @ form @ b


class SparseEchelon:
    """Incremental echelon form over sparse rows ``{column: coefficient}``.

    A row's pivot is its largest column, so the columns that never become
    pivots are the smallest ones in the chosen order. Normal forms express
    any column in terms of the free columns and are computed on demand.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.pivots: dict[int, dict[int, Fraction]] = {}
        self._free: list[int] | None = None
        self._nf: dict[int, dict[int, Fraction]] = {}

    def add(self, row: dict) -> bool:
        row = {c: Fraction(v) for c, v in row.items() if v}
        pivots = self.pivots
        while row:
            lead = max(row)
            piv = pivots.get(lead)
            if piv is None:
                inv = ONE / row[lead]
                if inv != ONE:
                    row = {c: v * inv for c, v in row.items()}
                pivots[lead] = row
                self._free = None
                return True
            f = row[lead]
            for c, v in piv.items():
                nv = row.get(c, ZERO) - f * v
                if nv:
                    row[c] = nv
                else:
                    row.pop(c, None)
        return False

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def free_columns(self) -> list[int]:
        if self._free is None:
            self._free = [c for c in range(self.ncols) if c not in self.pivots]
            self._free_pos = {c: k for k, c in enumerate(self._free)}
        return self._free

    def normal_form(self, col: int) -> dict[int, Fraction]:
        """Coordinates of column ``col`` over the free columns (by position)."""
        self.free_columns()
        nf = self._nf
        if col in nf:
            return nf[col]
        stack = [col]
        while stack:
            c = stack[-1]
            if c in nf:
                stack.pop()
                continue
            if c not in self.pivots:
                nf[c] = {self._free_pos[c]: ONE}
                stack.pop()
                continue
            missing = [o for o in self.pivots[c] if o != c and o not in nf]
            if missing:
                stack.extend(missing)
                continue
            acc: dict[int, Fraction] = {}
            for o, v in self.pivots[c].items():
                if o == c:
                    continue
                for b, w in nf[o].items():
                    nv = acc.get(b, ZERO) - v * w
                    if nv:
                        acc[b] = nv
                    else:
                        acc.pop(b, None)
            nf[c] = acc
            stack.pop()
        return nf[col]
