from dataclasses import dataclass
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cayleyjordan.charpoly import Spectrum, compute_spectrum
from cayleyjordan.chains import (
    JordanChain,
    SeedPolicy,
    ensure_chain,
    grow_chain,
    harvest_all,
    harvest_maximal_chains,
    project_onto_eigenspace,
    screen_standard_basis,
)
from cayleyjordan.corpus import StructureSpec, block_starts, corpus, generate, jordan_matrix
from cayleyjordan.errors import CapExceeded, SeedExhaustion, ZeroProjection
from cayleyjordan.matrix import Matrix, OpCounter, Vector, apply_shifted_power, counting, mat_vec
from cayleyjordan.oracle import structure_by_filtration

from strategies import jordan_structures

EXAMPLE_SPECTRUM = Spectrum(((3, 6), (2, 4)))


def depth(a: Matrix, lam, v) -> int:
    """Minimal t with (A - lam I)^t v = 0."""
    t = 0
    shifted = a.shifted(lam)
    v = Vector(v)
    while not v.is_zero():
        v = mat_vec(shifted, v)
        t += 1
    return t


def test_project_examples(example_matrix):
    s = project_onto_eigenspace(Matrix.diag([2, 3]), Spectrum(((2, 1), (3, 1))), 3, (1, 1))
    assert s[0] == 0 and s[1] != 0
    j2 = jordan_matrix([(5, (2,))])
    assert project_onto_eigenspace(j2, Spectrum(((5, 2),)), 5, (3, -1)) == Vector((3, -1))
    g0 = project_onto_eigenspace(example_matrix, EXAMPLE_SPECTRUM, 3, [1] * 10)
    assert depth(example_matrix, 3, g0) == 4


def test_project_zero_raises():
    with pytest.raises(ZeroProjection):
        project_onto_eigenspace(Matrix.diag([2, 3]), Spectrum(((2, 1), (3, 1))), 3, (1, 0))


def test_grow_chain_examples(example_matrix):
    j3 = jordan_matrix([(2, (3,))])
    chain = grow_chain(j3, 2, Vector.unit(3, 2), cap=3)
    assert chain.vectors == tuple(Vector.unit(3, k) for k in range(3))
    assert len(grow_chain(j3, 2, Vector.unit(3, 0), cap=3)) == 1
    g0 = project_onto_eigenspace(example_matrix, EXAMPLE_SPECTRUM, 3, [1] * 10)
    chain = grow_chain(example_matrix, 3, g0, cap=6)
    assert len(chain) == 4 and chain.top == g0 and chain.is_valid(example_matrix)


def test_grow_chain_cap():
    with pytest.raises(CapExceeded):
        grow_chain(jordan_matrix([(2, (3,))]), 2, Vector.unit(3, 2), cap=2)


def test_invalid_chain_is_rejected():
    j3 = jordan_matrix([(2, (3,))])
    bad = JordanChain(Fraction(2), (Vector.unit(3, 1), Vector.unit(3, 2)))
    assert not bad.is_valid(j3)
    with pytest.raises(AssertionError):
        ensure_chain(j3, bad)


def test_harvest_single_block():
    a, _, _ = generate(StructureSpec(((3, (4,)),), prng_seed=11))
    log = []
    chains = harvest_maximal_chains(a, Spectrum(((3, 4),)), 3, log=log)
    assert [len(c) for c in chains] == [4]
    assert [e["probe"] for e in log] == [0]


def test_harvest_example_needs_no_probe(example_matrix):
    log = []
    chains = harvest_maximal_chains(example_matrix, EXAMPLE_SPECTRUM, 3, log=log)
    assert [len(c) for c in chains] == [4]
    assert [e["probe"] for e in log] == [0]
    assert log[0]["seed"] == Vector([1] * 10)


def test_harvest_two_maximal_chains():
    spec = StructureSpec(((5, (2, 2, 1)),), prng_seed=3)
    a, _, _ = generate(spec)
    spectrum = Spectrum(((5, 5),))
    assert structure_by_filtration(a, spectrum).blocks == {5: (2, 2, 1)}
    log = []
    chains = harvest_maximal_chains(a, spectrum, 5, log=log)
    assert [len(c) for c in chains] == [2, 2]
    assert [e["outcome"] for e in log] == ["accepted", "accepted"]


def test_harvest_uses_only_matvecs(example_matrix):
    c = OpCounter()
    with counting(c):
        harvest_all(example_matrix, EXAMPLE_SPECTRUM)
    assert c.solve == c.kernel == c.matmul == c.decompose == 0
    assert c.matvec > 0


def test_seed_exhaustion():
    @dataclass(frozen=True)
    class Stubborn(SeedPolicy):
        def stream(self, n, salt=""):
            while True:
                yield Vector.unit(n, 0)

    with pytest.raises(SeedExhaustion):
        harvest_maximal_chains(Matrix.diag([2, 3]), Spectrum(((2, 1), (3, 1))), 3, Stubborn())


def test_seed_stream_is_reproducible():
    a = SeedPolicy(prng_seed=4).stream(5, "x")
    b = SeedPolicy(prng_seed=4).stream(5, "x")
    first = [next(a) for _ in range(6)]
    assert first == [next(b) for _ in range(6)]
    assert first[0] == Vector([1] * 5) and first[1] == Vector([1, -1, 1, -1, 1])
    assert all(not v.is_zero() for v in first)


def test_screen_examples(example_matrix):
    assert screen_standard_basis(Matrix.diag([2, 3]), Spectrum(((2, 1), (3, 1)))) == [(0, 2), (1, 3)]
    assert screen_standard_basis(example_matrix, EXAMPLE_SPECTRUM) == []
    assert screen_standard_basis(Matrix([[2, 1], [0, 3]]), Spectrum(((2, 1), (3, 1)))) == [(0, 2)]


def _component_vector(spec, q, coeffs, keep=None):
    """Q c restricted to the columns of eigenvalue ``keep`` (all columns if None)."""
    n = spec.n
    c = [0] * n
    for lam, start, size in block_starts(spec.blocks):
        if keep is None or lam == keep:
            c[start : start + size] = coeffs[start : start + size]
    return mat_vec(q, c)


def _planted_depth(spec, coeffs, lam) -> int:
    best = 0
    for mu, start, size in block_starts(spec.blocks):
        if mu == lam:
            for i in range(size):
                if coeffs[start + i]:
                    best = max(best, i + 1)
    return best


@given(jordan_structures(max_n=7), st.integers(0, 2**32 - 1), st.data())
def test_projection_preserves_component_depth(blocks, seed, data):
    spec = StructureSpec(blocks, prng_seed=seed)
    a, q, _ = generate(spec)
    spectrum = Spectrum(spec.spectrum_factors())
    coeffs = data.draw(st.lists(st.integers(-2, 2), min_size=spec.n, max_size=spec.n))
    w = mat_vec(q, coeffs)
    for lam, _ in spectrum:
        planted = _planted_depth(spec, coeffs, lam)
        if planted == 0:
            with pytest.raises(ZeroProjection):
                project_onto_eigenspace(a, spectrum, lam, w)
            continue
        s = project_onto_eigenspace(a, spectrum, lam, w)
        assert depth(a, lam, s) == planted
        assert depth(a, lam, _component_vector(spec, q, coeffs, lam)) == planted


@given(jordan_structures(max_n=7), st.integers(0, 2**32 - 1), st.integers(0, 4), st.data())
def test_other_shifts_preserve_depth(blocks, seed, r, data):
    spec = StructureSpec(blocks, prng_seed=seed)
    if len(spec.blocks) < 2:
        return
    a, q, _ = generate(spec)
    (lam, _), (mu, _) = data.draw(st.permutations(spec.blocks))[:2]
    coeffs = data.draw(st.lists(st.integers(-2, 2), min_size=spec.n, max_size=spec.n))
    v = _component_vector(spec, q, coeffs, lam)
    t = depth(a, lam, v)
    assert depth(a, lam, apply_shifted_power(a, mu, r, v)) == t


def test_harvested_chains_are_maximal_on_corpus():
    policy = SeedPolicy(confirm=True)
    for spec in corpus(60, seed=99):
        a, _, _ = generate(spec)
        spectrum = compute_spectrum(a)
        structure = structure_by_filtration(a, spectrum)
        result = harvest_all(a, spectrum, policy)
        for chain in result.chains:
            assert chain.is_valid(a)
            assert len(chain) == structure.largest(chain.eigenvalue)
