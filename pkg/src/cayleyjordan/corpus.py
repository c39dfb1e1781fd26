"""Test matrices with a prescribed Jordan structure.

``A = Q J Q^-1`` where ``Q`` is a product of random integer row operations,
so ``det Q = +-1`` and ``Q^-1`` is an integer matrix built alongside it.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .field import ONE, ZERO, scalar
from .matrix import Matrix


@dataclass(frozen=True)
class StructureSpec:
    blocks: tuple  # ((eigenvalue, (size, ...)), ...)
    prng_seed: int = 0
    entry_bound: int = 3

    def __post_init__(self):
        blocks = tuple((scalar(lam), tuple(int(s) for s in sizes)) for lam, sizes in self.blocks)
        lams = [lam for lam, _ in blocks]
        if len(set(lams)) != len(lams):
            raise ValueError("eigenvalues must be distinct")
        if any(s < 1 for _, sizes in blocks for s in sizes) or any(not sizes for _, sizes in blocks):
            raise ValueError("block sizes must be positive")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self) -> int:
        return sum(sum(sizes) for _, sizes in self.blocks)

    def structure(self) -> dict:
        return {lam: sorted(sizes, reverse=True) for lam, sizes in self.blocks}

    def spectrum_factors(self) -> tuple:
        return tuple((lam, sum(sizes)) for lam, sizes in self.blocks)


def jordan_matrix(blocks) -> Matrix:
    layout = [(scalar(lam), s) for lam, sizes in blocks for s in sizes]
    n = sum(s for _, s in layout)
    rows = [[ZERO] * n for _ in range(n)]
    pos = 0
    for lam, s in layout:
        for i in range(s):
            rows[pos + i][pos + i] = lam
            if i:
                rows[pos + i - 1][pos + i] = ONE
        pos += s
    return Matrix(rows)


def block_starts(blocks) -> list[tuple[Fraction, int, int]]:
    """(eigenvalue, first column, size) for every block of ``jordan_matrix(blocks)``."""
    out = []
    pos = 0
    for lam, sizes in blocks:
        for s in sizes:
            out.append((scalar(lam), pos, s))
            pos += s
    return out


def _unimodular(n: int, rng: random.Random, bound: int, ops: int, fixed: int | None = None):
    """Random ``Q`` and its inverse from ``ops`` row operations.

    With ``fixed`` set, no operation uses that row as its source, so column
    ``fixed`` of ``Q`` stays equal to the corresponding unit vector.
    """
    q = [[int(i == j) for j in range(n)] for i in range(n)]
    qinv = [[int(i == j) for j in range(n)] for i in range(n)]
    if n < 2:
        return q, qinv
    done = 0
    while done < ops:
        i, j = rng.sample(range(n), 2)
        if j == fixed:
            continue
        m = rng.randint(-bound, bound)
        if m == 0:
            continue
        # Q <- (I + m e_i e_j^T) Q ; Q^-1 <- Q^-1 (I - m e_i e_j^T)
        q[i] = [a + m * b for a, b in zip(q[i], q[j])]
        for row in qinv:
            row[j] -= m * row[i]
        done += 1
    return q, qinv


def _similar(q, j: Matrix, qinv) -> Matrix:
    qm, qi = Matrix(q), Matrix(qinv)
    return qm @ j @ qi


def generate(spec: StructureSpec) -> tuple[Matrix, Matrix, Matrix]:
    """``(A, Q, J)`` with ``A = Q J Q^-1``; deterministic in ``spec.prng_seed``."""
    n = spec.n
    rng = random.Random(spec.prng_seed)
    j = jordan_matrix(spec.blocks)
    q, qinv = _unimodular(n, rng, spec.entry_bound, 3 * n)
    return _similar(q, j, qinv), Matrix(q), j


def plant_standard_basis_eigenvector(
    spec: StructureSpec, index: int, block: int = 0
) -> tuple[Matrix, Matrix, Matrix]:
    """Like :func:`generate` but ``e_index`` is an eigenvector of ``A``.

    ``Q`` sends the eigenvector column of the ``block``-th Jordan block to
    ``e_index``: row operations that leave that column alone, followed by a
    row swap.
    """
    n = spec.n
    if not 0 <= index < n:
        raise ValueError(f"index {index} outside 0..{n - 1}")
    rng = random.Random(spec.prng_seed)
    j = jordan_matrix(spec.blocks)
    col = block_starts(spec.blocks)[block][1]
    q, qinv = _unimodular(n, rng, spec.entry_bound, 3 * n, fixed=col)
    # swapping rows col and index of Q (columns of Q^-1) keeps det = +-1
    q[col], q[index] = q[index], q[col]
    for row in qinv:
        row[col], row[index] = row[index], row[col]
    return _similar(q, j, qinv), Matrix(q), j


def random_structure(n: int, rng: random.Random, eigen_range=(-4, 4), max_distinct: int = 3) -> tuple:
    """Random rational-spectrum Jordan structure on ``n`` columns."""
    k = rng.randint(1, min(max_distinct, n))
    lams = rng.sample(range(eigen_range[0], eigen_range[1] + 1), k)
    # split n into k positive parts, then each part into blocks
    cuts = sorted(rng.sample(range(1, n), k - 1))
    parts = [b - a for a, b in zip([0] + cuts, cuts + [n])]
    blocks = []
    for lam, m in zip(lams, parts):
        sizes = []
        left = m
        while left:
            s = rng.randint(1, left)
            sizes.append(s)
            left -= s
        blocks.append((lam, tuple(sorted(sizes, reverse=True))))
    return tuple(blocks)


def corpus(count: int = 200, seed: int = 2024, sizes=range(2, 9)) -> list[StructureSpec]:
    """Deterministic list of random structure specs."""
    rng = random.Random(seed)
    sizes = list(sizes)
    out = []
    for i in range(count):
        n = sizes[i % len(sizes)]
        out.append(StructureSpec(random_structure(n, rng), prng_seed=rng.randrange(2**32)))
    return out
