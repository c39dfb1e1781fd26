"""Reference Jordan structure by kernel filtration, and an exact certificate
checker for claimed decompositions.

Nothing here shares code with the chain or completion phases beyond the
matrix primitives: ranks come from Bareiss elimination on explicit matrix
powers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .charpoly import Spectrum
from .errors import InconsistentSpectrum
from .field import render, scalar
from .matrix import Matrix, mat_mul, rank


@dataclass(frozen=True)
class JordanStructure:
    """Block sizes per eigenvalue, largest first."""

    blocks: dict

    def __post_init__(self):
        object.__setattr__(
            self,
            "blocks",
            {scalar(lam): tuple(sorted(sizes, reverse=True)) for lam, sizes in self.blocks.items()},
        )

    @property
    def size(self) -> int:
        return sum(sum(s) for s in self.blocks.values())

    def weyr(self, lam) -> tuple:
        """Number of blocks of size >= s, for s = 1, 2, ..."""
        sizes = self.blocks[scalar(lam)]
        top = max(sizes, default=0)
        return tuple(sum(1 for b in sizes if b >= s) for s in range(1, top + 1))

    def largest(self, lam) -> int:
        return max(self.blocks[scalar(lam)])

    def as_text(self) -> dict:
        return {render(lam): list(sizes) for lam, sizes in self.blocks.items()}


def segre_from_weyr(deltas) -> list[int]:
    """Block sizes from the counts of blocks of size >= s."""
    deltas = list(deltas) + [0]
    sizes = []
    for s in range(1, len(deltas)):
        sizes.extend([s] * (deltas[s - 1] - deltas[s]))
    return sorted(sizes, reverse=True)


def kernel_dimensions(a: Matrix, lam, upto: int) -> list[int]:
    """dim ker (A - lam I)^s for s = 0..upto."""
    n = a.rows
    shifted = a.shifted(lam)
    dims = [0]
    power = Matrix.identity(n)
    for _ in range(upto):
        power = mat_mul(power, shifted)
        dims.append(n - rank(power))
        if dims[-1] == dims[-2]:
            break
    return dims


def structure_by_filtration(a: Matrix, spectrum: Spectrum) -> JordanStructure:
    blocks = {}
    for lam, mult in spectrum:
        dims = kernel_dimensions(a, lam, mult + 1)
        while len(dims) > 1 and dims[-1] == dims[-2]:
            dims.pop()
        if dims[-1] != mult:
            raise InconsistentSpectrum(
                f"generalized eigenspace of {render(lam)} has dimension {dims[-1]}, expected {mult}"
            )
        deltas = [dims[s] - dims[s - 1] for s in range(1, len(dims))]
        blocks[lam] = segre_from_weyr(deltas)
    return JordanStructure(blocks)


def jordan_blocks(j: Matrix) -> list[tuple[Fraction, int]] | None:
    """``(eigenvalue, size)`` in column order, or None if ``j`` is not a
    direct sum of Jordan blocks."""
    if not j.is_square:
        return None
    n = j.rows
    for i in range(n):
        for k in range(n):
            if k != i and k != i + 1 and j[i, k] != 0:
                return None
    out = []
    size = 1
    for i in range(n - 1):
        sup = j[i, i + 1]
        if sup == 1 and j[i, i] == j[i + 1, i + 1]:
            size += 1
        elif sup == 0:
            out.append((j[i, i], size))
            size = 1
        else:
            return None
    if n:
        out.append((j[n - 1, n - 1], size))
    return out


def structure_of_jordan_matrix(j: Matrix) -> JordanStructure:
    blocks = jordan_blocks(j)
    if blocks is None:
        raise ValueError("not a Jordan matrix")
    grouped: dict = {}
    for lam, size in blocks:
        grouped.setdefault(lam, []).append(size)
    return JordanStructure(grouped)


def structures_equal(x: JordanStructure, y: JordanStructure) -> bool:
    return x.blocks == y.blocks


@dataclass
class VerificationReport:
    jordan_form: bool
    similarity: bool
    nonsingular: bool
    notes: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.jordan_form and self.similarity and self.nonsingular

    def as_dict(self) -> dict:
        return {
            "passed": self.passed,
            "jordan_form": self.jordan_form,
            "similarity": self.similarity,
            "nonsingular": self.nonsingular,
            "notes": list(self.notes),
        }


def verify_decomposition(a: Matrix, p: Matrix, j: Matrix) -> VerificationReport:
    """Check exactly that J is a Jordan matrix, A P = P J and P is invertible."""
    shapes = {(m.rows, m.cols) for m in (a, p, j)}
    if len(shapes) != 1 or not a.is_square:
        return VerificationReport(False, False, False, ["matrices are not all n x n"])
    notes = []
    jordan_form = jordan_blocks(j) is not None
    if not jordan_form:
        notes.append("J is not a direct sum of Jordan blocks")
    similarity = mat_mul(a, p) == mat_mul(p, j)
    if not similarity:
        notes.append("A P != P J")
    nonsingular = rank(p) == p.rows
    if not nonsingular:
        notes.append("P is singular")
    return VerificationReport(jordan_form, similarity, nonsingular, notes)
