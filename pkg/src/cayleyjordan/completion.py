"""Complete a partial Jordan basis one block at a time.

The accepted chain vectors fill the leading columns of ``P``; the rest of
``P`` is standard basis vectors.  ``J = P^-1 A P`` then has Jordan blocks in
its leading columns and solved columns ``u_k = P^-1 a_k`` on the right.
Kernels are taken of powers of ``J - lam I`` rather than of ``A - lam I``;
a generalized eigenvector ``y`` of ``J`` gives the generalized eigenvector
``P y`` of ``A``.

In ``J`` coordinates every accepted basis vector is a standard basis
vector, so independence from the accepted vectors of an eigenvalue is a
support test.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .chains import JordanChain, ensure_chain
from .charpoly import Spectrum
from .errors import ExhaustedEigenvalue, IncompleteBasis
from .field import ONE, ZERO, render
from .lu import (
    LUFactors,
    complete_unit_tail,
    invert,
    lu_factor_columns,
    lu_solve,
    lu_update_columns,
    tail_indices,
)
from .matrix import Matrix, Vector, kernel_basis, mat_mul, mat_vec


@dataclass(frozen=True)
class Block:
    eigenvalue: Fraction
    start: int
    size: int


@dataclass(frozen=True)
class PartialDecomposition:
    p_matrix: Matrix
    j_matrix: Matrix
    lu: LUFactors
    blocks: tuple
    tail_indices: tuple
    remaining: tuple  # (eigenvalue, missing vector count) in spectrum order
    avoid: frozenset = frozenset()

    @property
    def r(self) -> int:
        return sum(b.size for b in self.blocks)

    @property
    def n(self) -> int:
        return self.p_matrix.rows

    def missing(self, lam) -> int:
        return dict(self.remaining)[lam]

    @property
    def done(self) -> bool:
        return all(m == 0 for _, m in self.remaining)


def master_invariant_holds(a: Matrix, pd: PartialDecomposition) -> bool:
    return mat_mul(a, pd.p_matrix) == mat_mul(pd.p_matrix, pd.j_matrix)


def _ensure_master_invariant(a: Matrix, pd: PartialDecomposition) -> PartialDecomposition:
    if not master_invariant_holds(a, pd):
        raise AssertionError("A P != P J for the partial decomposition")
    return pd


def _assemble(a: Matrix, lu: LUFactors, blocks, remaining, avoid) -> PartialDecomposition:
    n = a.rows
    r = sum(b.size for b in blocks)
    tail = tail_indices(lu, r)
    cols: list[list[Fraction]] = []
    for b in blocks:
        for i in range(b.size):
            col = [ZERO] * n
            col[b.start + i] = b.eigenvalue
            if i:
                col[b.start + i - 1] = ONE
            cols.append(col)
    # column k of A P is A e_t = a_t, so the matching J column solves P u = a_t
    for t in tail:
        cols.append(list(lu_solve(lu, a.column(t))))
    j_matrix = Matrix.from_columns(cols)
    return PartialDecomposition(
        p_matrix=lu.matrix,
        j_matrix=j_matrix,
        lu=lu,
        blocks=tuple(blocks),
        tail_indices=tail,
        remaining=tuple(remaining),
        avoid=avoid,
    )


def init_partial(
    a: Matrix,
    chains: Sequence[JordanChain],
    spectrum: Spectrum,
    screen: Sequence[tuple] = (),
) -> PartialDecomposition:
    """First intermediate pair: chains in the leading columns, standard basis
    vectors after them.

    The tail vectors are the standard basis vectors of the rows not used as
    pivots when factoring the chain columns.  Rows listed in ``screen``
    (standard basis eigenvectors) are preferred as pivots, which keeps them
    out of the tail whenever the chain vectors allow it.
    """
    n = a.rows
    avoid = frozenset(k for k, _ in screen)
    columns = [v for c in chains for v in c.vectors]
    blocks = []
    start = 0
    for c in chains:
        blocks.append(Block(c.eigenvalue, start, len(c)))
        start += len(c)
    found = {}
    for c in chains:
        found[c.eigenvalue] = found.get(c.eigenvalue, 0) + len(c)
    remaining = [(lam, mult - found.get(lam, 0)) for lam, mult in spectrum]
    lu = complete_unit_tail(lu_factor_columns(columns, n, prefer=avoid))
    return _ensure_master_invariant(a, _assemble(a, lu, blocks, remaining, avoid))


def _depths(pd: PartialDecomposition, lam) -> list[tuple[int, int]]:
    """(column, depth) for every accepted column of ``lam``; eigenvectors have depth 1."""
    out = []
    for b in pd.blocks:
        if b.eigenvalue == lam:
            out.extend((b.start + i, i + 1) for i in range(b.size))
    return out


def choose_eigenvalue(pd: PartialDecomposition):
    """Eigenvalue with the fewest missing vectors; ties go to spectrum order."""
    pending = [(m, i, lam) for i, (lam, m) in enumerate(pd.remaining) if m > 0]
    if not pending:
        raise ValueError("nothing left to complete")
    return min(pending)[2]


def next_block(
    pd: PartialDecomposition,
    spectrum: Spectrum,
    a: Matrix | None = None,
    log: list | None = None,
) -> JordanChain:
    """Largest remaining Jordan chain for the chosen eigenvalue, in A coordinates.

    Kernels of ``(J - lam I)^s`` are computed for ``s = 1, 2, ...`` until
    the kernel, less the accepted columns of depth at most ``s``, has as many
    dimensions as there are missing vectors.  That ``s`` is the size of the
    largest remaining block, and a kernel vector ``y`` whose
    ``(J - lam I)^(s-1)`` image leaves the accepted columns generates it.

    ``A`` is only used, when given, to check the returned chain.
    """
    lam = choose_eigenvalue(pd)
    missing = pd.missing(lam)
    depths = _depths(pd, lam)
    accepted = {col for col, _ in depths}
    shifted = pd.j_matrix.shifted(lam)
    n = pd.n

    prev_power = Matrix.identity(n)
    power = shifted
    record = {"eigenvalue": lam, "kernel_dims": []}
    kernel = None
    for s in range(1, spectrum.multiplicity(lam) + 1):
        if s > 1:
            prev_power, power = power, mat_mul(power, shifted)
        kernel = kernel_basis(power)
        record["kernel_dims"].append(len(kernel))
        new = len(kernel) - sum(1 for _, d in depths if d <= s)
        if new == missing:
            break
    else:
        raise ExhaustedEigenvalue(
            f"kernels of (J - {render(lam)}I)^s never reach the {missing} missing vectors", lam
        )

    y = None
    for v in kernel:
        image = mat_vec(prev_power, v)
        if any(x for i, x in enumerate(image) if i not in accepted):
            y = v
            break
    if y is None:
        raise ExhaustedEigenvalue(f"no new kernel vector for eigenvalue {render(lam)}", lam)

    j_chain = [y]
    for _ in range(s - 1):
        j_chain.append(mat_vec(shifted, j_chain[-1]))
    chain = JordanChain(lam, tuple(mat_vec(pd.p_matrix, v) for v in reversed(j_chain)))
    record["power"] = s
    record["block_size"] = s
    if log is not None:
        log.append(record)
    if a is not None:
        ensure_chain(a, chain)
    return chain


def absorb_block(pd: PartialDecomposition, chain: JordanChain, a: Matrix) -> PartialDecomposition:
    """Put ``chain`` in the leftmost tail columns and re-solve the rest of J."""
    r = pd.r
    lu = lu_update_columns(pd.lu, r, chain.vectors, keep_tail=False)
    lu = complete_unit_tail(lu)
    blocks = list(pd.blocks) + [Block(chain.eigenvalue, r, len(chain))]
    remaining = [
        (lam, m - len(chain) if lam == chain.eigenvalue else m) for lam, m in pd.remaining
    ]
    if any(m < 0 for _, m in remaining):
        raise ExhaustedEigenvalue(
            f"too many vectors for eigenvalue {render(chain.eigenvalue)}", chain.eigenvalue
        )
    return _ensure_master_invariant(a, _assemble(a, lu, blocks, remaining, pd.avoid))


def finalize(pd: PartialDecomposition) -> tuple[Matrix, Matrix, Matrix]:
    """``(P, J, P^-1)`` once every basis vector has been found."""
    if not pd.done or pd.r != pd.n:
        raise IncompleteBasis(f"{pd.n - pd.r} basis vectors still missing")
    return pd.p_matrix, pd.j_matrix, invert(pd.lu)


def complete(
    a: Matrix,
    chains: Sequence[JordanChain],
    spectrum: Spectrum,
    screen: Sequence[tuple] = (),
    log: list | None = None,
    history: list | None = None,
    fallback: bool = True,
) -> tuple[Matrix, Matrix, Matrix]:
    """Run the whole completion phase.

    A seeded chain that is shorter than the largest block of its eigenvalue
    can leave no room for the remaining blocks; the kernel search then finds
    nothing new.  With ``fallback`` the seeded chains of that eigenvalue are
    dropped and the completion restarts, finding all of its blocks from
    kernels.  ``history`` collects every intermediate
    :class:`PartialDecomposition`, abandoned ones included.
    """
    chains = list(chains)
    while True:
        pd = init_partial(a, chains, spectrum, screen)
        if history is not None:
            history.append(pd)
        try:
            while not pd.done:
                chain = next_block(pd, spectrum, a=a, log=log)
                pd = absorb_block(pd, chain, a)
                if history is not None:
                    history.append(pd)
        except ExhaustedEigenvalue as exc:
            lam = exc.eigenvalue
            if not fallback or not any(c.eigenvalue == lam for c in chains):
                raise
            chains = [c for c in chains if c.eigenvalue != lam]
            if log is not None:
                log.append({"eigenvalue": lam, "restart": True, "reason": str(exc)})
            continue
        return finalize(pd)
