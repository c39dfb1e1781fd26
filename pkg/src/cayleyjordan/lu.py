"""Exact PLU factorization that can be resumed part-way through.

Factorization proceeds one column at a time (left-looking): column ``k`` is
permuted, forward-substituted through the multipliers of the first ``k``
steps, and then pivoted.  Because step ``k`` only ever reads columns
``0..k``, the state after ``k`` steps is a function of those columns alone.
Replacing columns ``c..`` therefore only needs the state after ``c`` steps,
which is recovered from the saved factors by undoing the row swaps of the
later steps.  A fresh factorization of the modified matrix gives exactly the
same ``L``, ``U`` and permutation.

Pivot rule: the first nonzero entry at or below the diagonal, looking first
at rows whose original index is in ``prefer`` and then at all rows.  With an
empty ``prefer`` this is plain first-nonzero pivoting.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DimensionMismatch, SingularMatrix
from .field import ONE, ZERO
from .matrix import Matrix, Vector, tally


@dataclass(frozen=True)
class LUFactors:
    """``lower @ upper == row_perm`` applied to the factored columns.

    ``row_perm[i]`` is the original index of the row sitting at position
    ``i``.  ``pivots[k]`` is the position swapped with ``k`` at step ``k``.
    Only the first ``settled_cols`` columns are factored; beyond them
    ``lower`` is the identity and ``upper`` is zero.
    """

    n: int
    columns: tuple
    lower: Matrix
    upper: Matrix
    row_perm: tuple
    pivots: tuple
    prefer: frozenset = frozenset()

    @property
    def settled_cols(self) -> int:
        return len(self.columns)

    @property
    def complete(self) -> bool:
        return self.settled_cols == self.n

    @property
    def matrix(self) -> Matrix:
        """The factored matrix (n x settled_cols)."""
        return Matrix.from_columns(self.columns)

    def lower_by_original_row(self) -> Matrix:
        """``lower`` with row ``i`` moved to original row ``row_perm[i]``.

        Its first ``c`` columns hold the multipliers of the first ``c``
        elimination steps keyed by original row, so they are left untouched
        by any later row swap.
        """
        rows = [None] * self.n
        for pos, orig in enumerate(self.row_perm):
            rows[orig] = self.lower.row(pos)
        return Matrix._wrap(tuple(rows))


class _State:
    """Mutable working copy used while factoring."""

    def __init__(self, n: int, prefer=frozenset()):
        self.n = n
        self.lower = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
        self.ucols: list[list[Fraction]] = []
        self.perm = list(range(n))
        self.pivots: list[int] = []
        self.columns: list[Vector] = []
        self.prefer = frozenset(prefer)

    @classmethod
    def rewound(cls, f: LUFactors, steps: int) -> "_State":
        """State after only the first ``steps`` steps of ``f``."""
        st = cls(f.n, f.prefer)
        lower = [list(f.lower.row(i)) for i in range(f.n)]
        perm = list(f.row_perm)
        for k in range(f.settled_cols - 1, steps - 1, -1):
            p = f.pivots[k]
            if p != k:
                lower[k][:steps], lower[p][:steps] = lower[p][:steps], lower[k][:steps]
                perm[k], perm[p] = perm[p], perm[k]
        for i in range(f.n):
            for j in range(steps, f.n):
                lower[i][j] = ONE if i == j else ZERO
        st.lower = lower
        st.perm = perm
        st.pivots = list(f.pivots[:steps])
        st.columns = list(f.columns[:steps])
        st.ucols = [[f.upper[i, j] for i in range(f.n)] for j in range(steps)]
        return st

    def push(self, col: Sequence) -> None:
        n = self.n
        k = len(self.columns)
        if k >= n:
            raise DimensionMismatch("matrix already has n columns")
        if len(col) != n:
            raise DimensionMismatch(f"column of length {len(col)}, expected {n}")
        col = Vector(col)
        z = [col[self.perm[i]] for i in range(n)]
        low = self.lower
        for i in range(1, n):
            acc = z[i]
            row = low[i]
            for t in range(min(i, k)):
                if row[t] and z[t]:
                    acc -= row[t] * z[t]
            z[i] = acc
        p = next((i for i in range(k, n) if z[i] and self.perm[i] in self.prefer), None)
        if p is None:
            p = next((i for i in range(k, n) if z[i]), None)
        if p is None:
            raise SingularMatrix(f"no nonzero pivot in column {k}")
        if p != k:
            z[k], z[p] = z[p], z[k]
            self.perm[k], self.perm[p] = self.perm[p], self.perm[k]
            low[k][:k], low[p][:k] = low[p][:k], low[k][:k]
        piv = z[k]
        for i in range(k + 1, n):
            low[i][k] = z[i] / piv if z[i] else ZERO
        self.ucols.append(z[: k + 1] + [ZERO] * (n - k - 1))
        self.pivots.append(p)
        self.columns.append(col)

    def freeze(self) -> LUFactors:
        n = self.n
        ucols = self.ucols + [[ZERO] * n for _ in range(n - len(self.ucols))]
        upper = Matrix._wrap(tuple(tuple(ucols[j][i] for j in range(n)) for i in range(n)))
        lower = Matrix._wrap(tuple(tuple(r) for r in self.lower))
        return LUFactors(
            n=n,
            columns=tuple(self.columns),
            lower=lower,
            upper=upper,
            row_perm=tuple(self.perm),
            pivots=tuple(self.pivots),
            prefer=self.prefer,
        )


def lu_factor_columns(columns: Sequence[Sequence], n: int | None = None, prefer=()) -> LUFactors:
    """Factor the leading ``len(columns)`` columns of an n x n matrix."""
    columns = list(columns)
    if n is None:
        if not columns:
            raise ValueError("need n when there are no columns")
        n = len(columns[0])
    tally("decompose")
    st = _State(n, prefer)
    for c in columns:
        st.push(c)
    return st.freeze()


def lu_decompose(m: Matrix, prefer=()) -> LUFactors:
    if not m.is_square:
        raise DimensionMismatch(f"LU of a {m.rows}x{m.cols} matrix")
    return lu_factor_columns(m.columns(), m.rows, prefer)


def lu_update_columns(
    f: LUFactors, start_col: int, new_cols: Sequence[Sequence], keep_tail: bool = True
) -> LUFactors:
    """Factors of ``f``'s matrix with columns ``start_col..`` replaced by ``new_cols``.

    Steps before ``start_col`` are reused as they are.  With ``keep_tail``
    the old columns after the replaced ones are carried over; otherwise the
    result stops at ``start_col + len(new_cols)`` settled columns and can be
    finished with :func:`complete_unit_tail`.
    """
    if not 0 <= start_col <= f.settled_cols:
        raise ValueError(f"start_col {start_col} outside 0..{f.settled_cols}")
    st = _State.rewound(f, start_col)
    for c in new_cols:
        st.push(c)
    if keep_tail:
        for c in f.columns[start_col + len(new_cols):]:
            st.push(c)
    return st.freeze()


def complete_unit_tail(f: LUFactors) -> LUFactors:
    """Fill the unfactored columns with the standard basis vectors of the
    rows that have not been used as pivots, in their current order.

    Each such column reduces to a unit vector already on the diagonal, so
    the result is nonsingular and the tail of ``upper`` is the identity.
    """
    if f.complete:
        return f
    st = _State.rewound(f, f.settled_cols)
    for k in range(f.settled_cols, f.n):
        st.push(Vector.unit(f.n, st.perm[k]))
    return st.freeze()


def tail_indices(f: LUFactors, start: int) -> tuple:
    """Original row indices of positions ``start..n-1``."""
    return tuple(f.row_perm[start:])


def lu_solve(f: LUFactors, b: Sequence) -> Vector:
    """Solve ``M x = b`` for the factored square matrix ``M``."""
    if not f.complete:
        raise ValueError("factorization is incomplete")
    n = f.n
    if len(b) != n:
        raise DimensionMismatch(f"right-hand side of length {len(b)}, expected {n}")
    tally("solve")
    b = Vector(b)
    z = [b[f.row_perm[i]] for i in range(n)]
    low, up = f.lower, f.upper
    for i in range(n):
        acc = z[i]
        row = low.row(i)
        for t in range(i):
            if row[t] and z[t]:
                acc -= row[t] * z[t]
        z[i] = acc
    x = [ZERO] * n
    for i in range(n - 1, -1, -1):
        row = up.row(i)
        acc = z[i]
        for t in range(i + 1, n):
            if row[t] and x[t]:
                acc -= row[t] * x[t]
        x[i] = acc / row[i]
    return Vector._from_fractions(tuple(x))


def invert(f: LUFactors) -> Matrix:
    """Inverse by one triangular solve per standard basis vector."""
    return Matrix.from_columns([lu_solve(f, Vector.unit(f.n, k)) for k in range(f.n)])


def permutation_matrix(perm: Sequence[int]) -> Matrix:
    """Matrix that moves original row ``perm[i]`` to position ``i``."""
    n = len(perm)
    return Matrix._wrap(tuple(tuple(ONE if j == perm[i] else ZERO for j in range(n)) for i in range(n)))
