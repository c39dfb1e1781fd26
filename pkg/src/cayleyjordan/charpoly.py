"""Characteristic polynomial and its factorization over the rationals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm

from .errors import DimensionMismatch, InconsistentSpectrum, NotFullyFactorableOverRationals
from .field import ONE, ZERO, render, scalar
from .matrix import Matrix, determinant


@dataclass(frozen=True)
class Polynomial:
    """Monic polynomial, coefficients lowest degree first."""

    coefficients: tuple

    def __post_init__(self):
        coeffs = tuple(scalar(c) for c in self.coefficients)
        while len(coeffs) > 1 and coeffs[-1] == 0:
            coeffs = coeffs[:-1]
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_monic(self) -> bool:
        return self.coefficients[-1] == 1

    def __call__(self, x):
        acc = ZERO
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def evaluate_matrix(self, a: Matrix) -> Matrix:
        """Horner evaluation at a square matrix."""
        n = a.rows
        acc = Matrix.zero(n)
        for c in reversed(self.coefficients):
            acc = acc @ a + Matrix.diag([c] * n)
        return acc

    @classmethod
    def from_roots(cls, factors) -> "Polynomial":
        coeffs = [ONE]
        for lam, mult in factors:
            for _ in range(mult):
                coeffs = _times_linear(coeffs, scalar(lam))
        return cls(tuple(coeffs))

    def __str__(self):
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and c in (1, -1):
                text = mono
            else:
                text = render(abs(c)) + mono
            terms.append(("-" if c < 0 else "+", text))
        if not terms:
            return "0"
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, text in terms[1:]:
            out += f" {sign} {text}"
        return out


def _times_linear(coeffs: list, lam: Fraction) -> list:
    # (x - lam) * p(x)
    out = [ZERO] * (len(coeffs) + 1)
    for k, c in enumerate(coeffs):
        out[k + 1] += c
        out[k] -= lam * c
    return out


@dataclass(frozen=True)
class Spectrum:
    """Distinct eigenvalues with algebraic multiplicities, in processing order."""

    factors: tuple

    def __post_init__(self):
        factors = tuple((scalar(lam), int(m)) for lam, m in self.factors)
        lams = [lam for lam, _ in factors]
        if len(set(lams)) != len(lams):
            raise InconsistentSpectrum("eigenvalues listed more than once")
        if any(m < 1 for _, m in factors):
            raise InconsistentSpectrum("multiplicities must be positive")
        object.__setattr__(self, "factors", factors)

    @property
    def eigenvalues(self) -> list[Fraction]:
        return [lam for lam, _ in self.factors]

    @property
    def size(self) -> int:
        return sum(m for _, m in self.factors)

    def multiplicity(self, lam) -> int:
        lam = scalar(lam)
        for mu, m in self.factors:
            if mu == lam:
                return m
        raise KeyError(lam)

    def __contains__(self, lam):
        return scalar(lam) in self.eigenvalues

    def __iter__(self):
        return iter(self.factors)

    def __len__(self):
        return len(self.factors)

    def as_dict(self) -> dict:
        return dict(self.factors)

    def __str__(self):
        return ", ".join(f"{render(lam)}:{m}" for lam, m in self.factors)


def characteristic_polynomial(a: Matrix) -> Polynomial:
    """det(xI - A), interpolated from exact determinants at x = 0, 1, ..., n."""
    if not a.is_square:
        raise DimensionMismatch("characteristic polynomial of a non-square matrix")
    n = a.rows
    xs = list(range(n + 1))
    ys = [determinant(Matrix.diag([x] * n) - a) for x in xs]
    coeffs = _newton_to_monomial(xs, ys)
    poly = Polynomial(tuple(coeffs))
    assert poly.degree == n and poly.is_monic
    return poly


def _newton_to_monomial(xs: list[int], ys: list[Fraction]) -> list[Fraction]:
    # divided differences, then expand the Newton form
    m = len(xs)
    dd = list(ys)
    for level in range(1, m):
        for i in range(m - 1, level - 1, -1):
            dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level])
    coeffs = [dd[-1]]
    for i in range(m - 2, -1, -1):
        # coeffs * (x - xs[i]) + dd[i]
        coeffs = _times_linear(coeffs, Fraction(xs[i]))
        coeffs[0] += dd[i]
    return coeffs


def _divisors(k: int) -> list[int]:
    k = abs(k)
    small, large = [], []
    for d in range(1, isqrt(k) + 1):
        if k % d == 0:
            small.append(d)
            if d != k // d:
                large.append(k // d)
    return small + large[::-1]


def _synthetic_divide(coeffs: list[Fraction], r: Fraction) -> tuple[list[Fraction], Fraction]:
    """Divide by (x - r); returns quotient (lowest first) and remainder."""
    n = len(coeffs) - 1
    q = [ZERO] * n
    acc = ZERO
    for k in range(n, 0, -1):
        acc = acc * r + coeffs[k]
        q[k - 1] = acc
    remainder = acc * r + coeffs[0]
    return q, remainder


def factor_spectrum(p: Polynomial) -> Spectrum:
    """Split a monic polynomial into rational linear factors.

    Candidate roots come from the rational root theorem applied to the
    integer-scaled polynomial; each multiplicity is found by repeated
    synthetic division.  Factors are ordered by decreasing multiplicity,
    then increasing eigenvalue.
    """
    if not p.is_monic:
        raise ValueError("polynomial must be monic")
    coeffs = list(p.coefficients)
    found: dict[Fraction, int] = {}

    zeros = 0
    while len(coeffs) > 1 and coeffs[0] == 0:
        coeffs = coeffs[1:]
        zeros += 1
    if zeros:
        found[ZERO] = zeros

    while len(coeffs) > 1:
        scale = lcm(*(c.denominator for c in coeffs))
        ints = [int(c * scale) for c in coeffs]
        root = None
        for q in _divisors(ints[-1]):
            for pnum in _divisors(ints[0]):
                for cand in (Fraction(pnum, q), Fraction(-pnum, q)):
                    if _synthetic_divide(coeffs, cand)[1] == 0:
                        root = cand
                        break
                if root is not None:
                    break
            if root is not None:
                break
        if root is None:
            raise NotFullyFactorableOverRationals(
                f"degree {len(coeffs) - 1} factor has no rational root; "
                "the matrix has irrational or complex eigenvalues"
            )
        while len(coeffs) > 1:
            quotient, rem = _synthetic_divide(coeffs, root)
            if rem != 0:
                break
            coeffs = quotient
            found[root] = found.get(root, 0) + 1

    ordered = sorted(found.items(), key=lambda kv: (-kv[1], kv[0]))
    return Spectrum(tuple(ordered))


def compute_spectrum(a: Matrix) -> Spectrum:
    return factor_spectrum(characteristic_polynomial(a))


def check_spectrum(a: Matrix, spectrum: Spectrum) -> Spectrum:
    """Validate a user-supplied spectrum against det(xI - A).  Returns it unchanged."""
    if spectrum.size != a.rows:
        raise InconsistentSpectrum(
            f"multiplicities sum to {spectrum.size}, matrix dimension is {a.rows}"
        )
    if Polynomial.from_roots(spectrum.factors) != characteristic_polynomial(a):
        raise InconsistentSpectrum("supplied spectrum does not match the characteristic polynomial")
    return spectrum
