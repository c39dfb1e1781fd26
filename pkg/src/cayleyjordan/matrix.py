"""Dense exact matrices and vectors.

Everything here is a pure function of immutable inputs.  Work that the
algorithm's efficiency claims are about (matrix-vector products, solves,
kernel computations, matrix products) is tallied on the active
:class:`OpCounter`, if one has been installed with :func:`counting`.
"""

from __future__ import annotations

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, fields
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import DimensionMismatch
from .field import ONE, ZERO, render, scalar


@dataclass
class OpCounter:
    matvec: int = 0
    matmul: int = 0
    solve: int = 0
    kernel: int = 0
    decompose: int = 0

    def snapshot(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}


_active: ContextVar[OpCounter | None] = ContextVar("cayleyjordan_counter", default=None)


@contextmanager
def counting(counter: OpCounter):
    token = _active.set(counter)
    try:
        yield counter
    finally:
        _active.reset(token)


def tally(kind: str, amount: int = 1) -> None:
    counter = _active.get()
    if counter is not None:
        setattr(counter, kind, getattr(counter, kind) + amount)


class Vector(tuple):
    """Immutable column vector of Fractions."""

    def __new__(cls, entries: Iterable = ()):
        return super().__new__(cls, (scalar(x) for x in entries))

    @classmethod
    def _from_fractions(cls, entries: tuple) -> "Vector":
        # entries must already be Fractions
        return tuple.__new__(cls, entries)

    @property
    def dim(self) -> int:
        return len(self)

    @classmethod
    def zero(cls, n: int) -> "Vector":
        return cls([ZERO] * n)

    @classmethod
    def unit(cls, n: int, k: int) -> "Vector":
        """Standard basis vector e_k, zero-based ``k``."""
        return cls(ONE if i == k else ZERO for i in range(n))

    def is_zero(self) -> bool:
        return not any(self)

    def __add__(self, other):
        _same_dim(self, other)
        return Vector(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        _same_dim(self, other)
        return Vector(a - b for a, b in zip(self, other))

    def __neg__(self):
        return Vector(-a for a in self)

    def scale(self, c) -> "Vector":
        c = scalar(c)
        return Vector(c * a for a in self)

    def __repr__(self):
        return "Vector([" + ", ".join(render(x) for x in self) + "])"


def _same_dim(u, v):
    if len(u) != len(v):
        raise DimensionMismatch(f"vector dimensions {len(u)} and {len(v)} differ")


class Matrix:
    """Immutable dense matrix, row-major."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, data: Sequence[Sequence]):
        self._data = tuple(tuple(scalar(x) for x in row) for row in data)
        self.rows = len(self._data)
        self.cols = len(self._data[0]) if self._data else 0
        if any(len(r) != self.cols for r in self._data):
            raise DimensionMismatch("ragged rows")

    @classmethod
    def _wrap(cls, data: tuple) -> "Matrix":
        # data must already be a tuple of tuples of Fractions
        m = cls.__new__(cls)
        m._data = data
        m.rows = len(data)
        m.cols = len(data[0]) if data else 0
        return m

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._wrap(tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def zero(cls, rows: int, cols: int | None = None) -> "Matrix":
        cols = rows if cols is None else cols
        return cls._wrap(tuple((ZERO,) * cols for _ in range(rows)))

    @classmethod
    def diag(cls, values) -> "Matrix":
        values = [scalar(v) for v in values]
        n = len(values)
        return cls._wrap(tuple(tuple(values[i] if i == j else ZERO for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "Matrix":
        columns = [Vector(c) for c in columns]
        if not columns:
            return cls._wrap(())
        n = len(columns[0])
        if any(len(c) != n for c in columns):
            raise DimensionMismatch("columns of unequal length")
        return cls._wrap(tuple(tuple(c[i] for c in columns) for i in range(n)))

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> Vector:
        return Vector(r[j] for r in self._data)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    def transpose(self) -> "Matrix":
        return Matrix._wrap(tuple(zip(*self._data)))

    def shifted(self, lam) -> "Matrix":
        """A - lam*I."""
        _require_square(self)
        lam = scalar(lam)
        return Matrix._wrap(
            tuple(tuple(x - lam if i == j else x for j, x in enumerate(r)) for i, r in enumerate(self._data))
        )

    def with_columns(self, start: int, new_cols: Sequence[Sequence]) -> "Matrix":
        cols = self.columns()
        cols[start:start + len(new_cols)] = [Vector(c) for c in new_cols]
        return Matrix.from_columns(cols)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            return mat_mul(self, other)
        return mat_vec(self, other)

    def __sub__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch")
        return Matrix._wrap(tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def __add__(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise DimensionMismatch("shape mismatch")
        return Matrix._wrap(tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self._data, other._data)))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self._data)

    def trace(self) -> Fraction:
        _require_square(self)
        return sum((self._data[i][i] for i in range(self.rows)), ZERO)

    def __repr__(self):
        body = "; ".join(" ".join(render(x) for x in r) for r in self._data)
        return f"Matrix([{body}])"


def _require_square(m: Matrix):
    if not m.is_square:
        raise DimensionMismatch(f"expected a square matrix, got {m.rows}x{m.cols}")


def mat_vec(m: Matrix, v: Sequence) -> Vector:
    if m.cols != len(v):
        raise DimensionMismatch(f"{m.rows}x{m.cols} matrix times vector of dim {len(v)}")
    tally("matvec")
    v = tuple(v)
    return Vector._from_fractions(tuple(sum((a * b for a, b in zip(r, v) if b), ZERO) for r in m._data))


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    if a.cols != b.rows:
        raise DimensionMismatch(f"{a.rows}x{a.cols} times {b.rows}x{b.cols}")
    tally("matmul")
    bt = tuple(zip(*b._data))
    return Matrix._wrap(
        tuple(tuple(sum((x * y for x, y in zip(r, c) if x and y), ZERO) for c in bt) for r in a._data)
    )


def apply_shifted_power(a: Matrix, lam, k: int, w: Sequence) -> Vector:
    """(A - lam*I)^k w as ``k`` successive matrix-vector products."""
    _require_square(a)
    if a.cols != len(w):
        raise DimensionMismatch(f"{a.rows}x{a.cols} matrix and vector of dim {len(w)}")
    if k < 0:
        raise ValueError("negative power")
    shifted = a.shifted(lam)
    w = Vector(w)
    for _ in range(k):
        w = mat_vec(shifted, w)
    return w


def matrix_power(m: Matrix, k: int) -> Matrix:
    _require_square(m)
    result = Matrix.identity(m.rows)
    for _ in range(k):
        result = mat_mul(result, m)
    return result


def rref(m: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns.

    Pivots are the first nonzero entry found scanning down each column; rows
    are swapped to bring it up.
    """
    a = m.tolist()
    pivots = []
    r = 0
    for c in range(m.cols):
        if r == m.rows:
            break
        p = next((i for i in range(r, m.rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        if piv != 1:
            a[r] = [x / piv for x in a[r]]
        for i in range(m.rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def kernel_basis(m: Matrix) -> list[Vector]:
    """Canonical nullspace basis: one vector per free column of the RREF,
    with that free variable set to 1 and the other free variables 0."""
    tally("kernel")
    reduced, pivots = rref(m)
    pivot_set = set(pivots)
    basis = []
    for f in range(m.cols):
        if f in pivot_set:
            continue
        v = [ZERO] * m.cols
        v[f] = ONE
        for row, pc in enumerate(pivots):
            v[pc] = -reduced[row][f]
        basis.append(Vector._from_fractions(tuple(v)))
    return basis


def _integer_rows(m: Matrix) -> list[list[int]]:
    # scaling a row by a nonzero constant changes neither rank nor (up to the
    # recorded factor) determinant
    out = []
    for r in m._data:
        d = lcm(*(x.denominator for x in r)) if r else 1
        out.append([int(x * d) for x in r])
    return out


def _bareiss(rows: list[list[int]], ncols: int) -> tuple[int, int, int]:
    """Fraction-free elimination in place.  Returns (rank, last pivot, sign)."""
    nrows = len(rows)
    prev = 1
    sign = 1
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if rows[i][c]), None)
        if p is None:
            continue
        if p != r:
            rows[r], rows[p] = rows[p], rows[r]
            sign = -sign
        piv = rows[r][c]
        for i in range(r + 1, nrows):
            ri = rows[i]
            f = ri[c]
            rows[i] = [(piv * ri[j] - f * rows[r][j]) // prev for j in range(ncols)]
        prev = piv
        r += 1
    return r, prev, sign


def rank(m: Matrix) -> int:
    """Rank by Bareiss fraction-free elimination."""
    if m.rows == 0 or m.cols == 0:
        return 0
    return _bareiss(_integer_rows(m), m.cols)[0]


def determinant(m: Matrix) -> Fraction:
    """Bareiss determinant, exact for rational entries."""
    _require_square(m)
    n = m.rows
    if n == 0:
        return ONE
    scale = 1
    rows = []
    for r in m._data:
        d = lcm(*(x.denominator for x in r))
        scale *= d
        rows.append([int(x * d) for x in r])
    rk, last, sign = _bareiss(rows, n)
    if rk < n:
        return ZERO
    return Fraction(sign * last, scale)


def independent_of(candidates: Sequence[Sequence], existing: Sequence[Sequence]) -> bool:
    """True iff ``candidates`` add ``len(candidates)`` dimensions to ``existing``.

    ``existing`` is taken to be independent already; that is asserted when
    running without ``-O``.
    """
    vecs = [tuple(v) for v in existing] + [tuple(v) for v in candidates]
    if not vecs:
        return True
    n = len(vecs[0])
    if any(len(v) != n for v in vecs):
        raise DimensionMismatch("vectors of unequal dimension")
    if existing:
        assert rank(Matrix.from_columns(existing)) == len(existing), "existing vectors are dependent"
    if len(vecs) > n:
        return False
    return rank(Matrix.from_columns(vecs)) == len(vecs)
