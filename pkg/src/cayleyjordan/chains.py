"""Maximal Jordan chains from matrix-vector products alone.

For an eigenvalue ``lam`` a seed ``w`` is pushed into the generalized
eigenspace of ``lam`` by applying ``(A - mu I)^p`` for every other eigenvalue
``mu``.  By Cayley-Hamilton this kills every other eigencomponent while
leaving the depth of the ``lam`` component untouched, so repeatedly
applying ``(A - lam I)`` to the result walks down a chain whose length is the
depth of the seed's ``lam`` component.  A seed with a nonzero coefficient on
the deepest level of the eigenspace therefore gives a chain of maximal
length without solving any linear system.

Vectors are indexed from 0 everywhere: ``e_0`` is the first standard basis
vector.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Sequence

from .charpoly import Spectrum
from .errors import CapExceeded, SeedExhaustion, ZeroProjection
from .field import render, scalar
from .matrix import Matrix, Vector, apply_shifted_power, independent_of, mat_vec


@dataclass(frozen=True)
class JordanChain:
    """One Jordan chain, eigenvector first (the order its columns take in P)."""

    eigenvalue: Fraction
    vectors: tuple

    def __len__(self):
        return len(self.vectors)

    @property
    def eigenvector(self) -> Vector:
        return self.vectors[0]

    @property
    def top(self) -> Vector:
        """The generating vector, deepest in the chain."""
        return self.vectors[-1]

    def is_valid(self, a: Matrix) -> bool:
        """Head is a nonzero eigenvector, each vector maps onto its predecessor,
        and the vectors are independent."""
        if not self.vectors or any(v.is_zero() for v in self.vectors):
            return False
        shifted = a.shifted(self.eigenvalue)
        if not mat_vec(shifted, self.vectors[0]).is_zero():
            return False
        for prev, cur in zip(self.vectors, self.vectors[1:]):
            if mat_vec(shifted, cur) != prev:
                return False
        return independent_of(self.vectors, [])


def ensure_chain(a: Matrix, chain: JordanChain) -> JordanChain:
    if not chain.is_valid(a):
        raise AssertionError(f"invalid Jordan chain for eigenvalue {render(chain.eigenvalue)}")
    return chain


@dataclass(frozen=True)
class SeedPolicy:
    """All-ones, then alternating signs, then uniform integer vectors.

    The pseudorandom part is seeded from ``prng_seed`` and a per-stream salt,
    so every stream is reproducible.  ``confirm`` asks for one extra probe
    when a chain is shorter than the multiplicity but no probe for a second
    maximal chain is due; it only costs matrix-vector products and catches
    an unlucky first seed.
    """

    prng_seed: int = 0
    low: int = -10
    high: int = 10
    confirm: bool = False

    def max_attempts(self, n: int) -> int:
        return n + 4

    def stream(self, n: int, salt: str = "") -> Iterator[Vector]:
        yield Vector([1] * n)
        yield Vector([(-1) ** i for i in range(n)])
        rng = random.Random(f"{self.prng_seed}:{salt}")
        while True:
            v = [rng.randint(self.low, self.high) for _ in range(n)]
            if any(v):
                yield Vector(v)


def project_onto_eigenspace(
    a: Matrix,
    spectrum: Spectrum,
    target,
    w: Sequence,
    exponent_overrides: dict | None = None,
) -> Vector:
    """Apply the product of ``(A - mu I)^p`` over every eigenvalue ``mu != target``.

    ``p`` is the algebraic multiplicity of ``mu`` unless ``exponent_overrides``
    supplies a smaller known-sufficient exponent (the maximal chain length
    already found for ``mu``).
    """
    target = scalar(target)
    if target not in spectrum:
        raise KeyError(f"{render(target)} is not an eigenvalue")
    overrides = exponent_overrides or {}
    v = Vector(w)
    for mu, mult in spectrum:
        if mu == target:
            continue
        v = apply_shifted_power(a, mu, overrides.get(mu, mult), v)
    if v.is_zero():
        raise ZeroProjection(f"seed has no component for eigenvalue {render(target)}")
    return v


def grow_chain(a: Matrix, lam, seed: Sequence, cap: int) -> JordanChain:
    """Walk ``seed, (A - lam I) seed, ...`` until the next product vanishes."""
    lam = scalar(lam)
    shifted = a.shifted(lam)
    vecs = [Vector(seed)]
    for _ in range(cap):
        nxt = mat_vec(shifted, vecs[-1])
        if nxt.is_zero():
            return JordanChain(lam, tuple(reversed(vecs)))
        vecs.append(nxt)
    raise CapExceeded(
        f"(A - {render(lam)}I)^{cap} does not annihilate the seed; "
        "the spectrum is wrong or the seed lies outside the eigenspace"
    )


@dataclass
class _Draw:
    seed: Vector
    chain: JordanChain
    attempts: int
    refit: bool = False


def _draw_chain(a, spectrum, lam, seeds, budget, overrides, log, probe) -> _Draw:
    cap = spectrum.multiplicity(lam)
    for attempt in range(1, budget + 1):
        w = next(seeds)
        try:
            s = project_onto_eigenspace(a, spectrum, lam, w, overrides)
        except ZeroProjection:
            log.append({"eigenvalue": lam, "probe": probe, "seed": w, "outcome": "zero projection"})
            continue
        try:
            return _Draw(w, grow_chain(a, lam, s, cap), attempt)
        except CapExceeded:
            if not overrides:
                raise
        # an override was too small: fall back to full multiplicities
        s = project_onto_eigenspace(a, spectrum, lam, w)
        return _Draw(w, grow_chain(a, lam, s, cap), attempt, refit=True)
    raise SeedExhaustion(
        f"{budget} consecutive seeds gave no usable vector for eigenvalue {render(lam)}"
    )


def harvest_maximal_chains(
    a: Matrix,
    spectrum: Spectrum,
    lam,
    policy: SeedPolicy | None = None,
    found_so_far: Sequence[JordanChain] = (),
    exponent_overrides: dict | None = None,
    log: list | None = None,
) -> list[JordanChain]:
    """Every maximal-length chain for ``lam`` that seeding can find.

    After the first chain, further chains of the same length are probed while
    the eigenvalue still has room for one (multiplicity minus vectors found is
    at least the chain length).  A probe chain is kept only if all of its
    vectors are independent of every vector already accepted.  Two failed
    probes in a row end the search; anything left over is the completion
    phase's job.  A probe that turns up a longer chain means the earlier ones
    were not maximal, and it replaces them.  If no probe was due the policy
    may still run one confirmation probe.

    ``log`` receives one dict per seed tried.
    """
    lam = scalar(lam)
    policy = policy or SeedPolicy()
    log = [] if log is None else log
    n = a.rows
    mult = spectrum.multiplicity(lam)
    budget = policy.max_attempts(n)
    seeds = policy.stream(n, salt=render(lam))

    accepted = list(found_so_far)
    probe = 0
    if not accepted:
        d = _draw_chain(a, spectrum, lam, seeds, budget, exponent_overrides, log, probe)
        accepted.append(ensure_chain(a, d.chain))
        log.append(_event(lam, probe, d, "accepted"))
    longest = max(len(c) for c in accepted)

    failures = 0
    confirmed = not policy.confirm
    while failures < 2:
        room = mult - sum(len(c) for c in accepted) >= longest
        if not room:
            if confirmed or probe > 0 or longest == mult:
                break
            failures = 1  # a single confirmation probe
        confirmed = True
        probe += 1
        d = _draw_chain(a, spectrum, lam, seeds, budget, exponent_overrides, log, probe)
        chain = ensure_chain(a, d.chain)
        if len(chain) > longest:
            accepted = [chain]
            longest = len(chain)
            failures = 0
            log.append(_event(lam, probe, d, "longer, replaces earlier chains"))
            continue
        existing = [v for c in accepted for v in c.vectors]
        if len(chain) == longest and independent_of(chain.vectors, existing):
            accepted.append(chain)
            failures = 0
            log.append(_event(lam, probe, d, "accepted"))
        else:
            failures += 1
            outcome = "dependent" if len(chain) == longest else "shorter"
            log.append(_event(lam, probe, d, outcome))
    return accepted


def _event(lam, probe, d: _Draw, outcome: str) -> dict:
    return {
        "eigenvalue": lam,
        "probe": probe,
        "seed": d.seed,
        "length": len(d.chain),
        "attempts": d.attempts,
        "refit": d.refit,
        "outcome": outcome,
    }


def screen_standard_basis(a: Matrix, spectrum: Spectrum) -> list[tuple[int, Fraction]]:
    """``(k, lam)`` for every standard basis vector ``e_k`` that is an
    eigenvector of ``A`` for ``lam``: column ``k`` of A is ``lam * e_k``."""
    hits = []
    for k in range(a.cols):
        col = a.column(k)
        if any(x for i, x in enumerate(col) if i != k):
            continue
        if col[k] in spectrum:
            hits.append((k, col[k]))
    return hits


@dataclass
class HarvestResult:
    chains: list = field(default_factory=list)
    log: list = field(default_factory=list)
    overrides: dict = field(default_factory=dict)


def harvest_all(a: Matrix, spectrum: Spectrum, policy: SeedPolicy | None = None) -> HarvestResult:
    """Maximal chains for every eigenvalue, in spectrum order.

    Once an eigenvalue's maximal chain length is known it replaces that
    eigenvalue's multiplicity as the exponent in later projections.
    """
    result = HarvestResult()
    for lam, _ in spectrum:
        chains = harvest_maximal_chains(
            a, spectrum, lam, policy, exponent_overrides=dict(result.overrides), log=result.log
        )
        result.chains.extend(chains)
        result.overrides[lam] = max(len(c) for c in chains)
    return result
