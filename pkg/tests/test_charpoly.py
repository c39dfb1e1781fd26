from fractions import Fraction
import random

import pytest
import sympy
from hypothesis import given
from hypothesis import strategies as st

from cayleyjordan.charpoly import (
    Polynomial,
    Spectrum,
    characteristic_polynomial,
    check_spectrum,
    factor_spectrum,
)
from cayleyjordan.corpus import _unimodular
from cayleyjordan.errors import InconsistentSpectrum, NotFullyFactorableOverRationals
from cayleyjordan.matrix import Matrix

from strategies import square_matrices


def poly(*coeffs):
    return Polynomial(tuple(Fraction(c) for c in coeffs))


def test_charpoly_examples(example_matrix):
    assert characteristic_polynomial(Matrix.identity(2)) == poly(1, -2, 1)
    assert characteristic_polynomial(Matrix.diag([2, 3])) == poly(6, -5, 1)
    assert characteristic_polynomial(example_matrix) == Polynomial.from_roots([(2, 4), (3, 6)])


def test_charpoly_of_example_against_sympy(example_matrix):
    x = sympy.symbols("x")
    expected = sympy.Poly(sympy.expand((x - 2) ** 4 * (x - 3) ** 6), x).all_coeffs()[::-1]
    assert characteristic_polynomial(example_matrix).coefficients == tuple(Fraction(int(c)) for c in expected)


def test_factor_examples():
    spec = factor_spectrum(Polynomial.from_roots([(2, 4), (3, 6)]))
    assert spec.as_dict() == {2: 4, 3: 6}
    # larger multiplicity first
    assert spec.factors == ((3, 6), (2, 4))
    assert factor_spectrum(poly(-5, 1)).factors == ((5, 1),)
    with pytest.raises(NotFullyFactorableOverRationals):
        factor_spectrum(poly(-2, 0, 1))


def test_factor_fractional_and_zero_roots():
    p = Polynomial.from_roots([(Fraction(-1, 2), 2), (0, 1), (Fraction(7, 3), 1)])
    assert factor_spectrum(p).as_dict() == {Fraction(-1, 2): 2, 0: 1, Fraction(7, 3): 1}


def test_factor_rejects_complex_roots():
    # (x^2 + 1)(x - 1)
    with pytest.raises(NotFullyFactorableOverRationals):
        factor_spectrum(poly(-1, 1, -1, 1))


@given(square_matrices(max_n=6))
def test_cayley_hamilton(a):
    assert characteristic_polynomial(a).evaluate_matrix(a).is_zero()


@given(
    st.lists(
        st.tuples(st.fractions(min_value=-6, max_value=6, max_denominator=3), st.integers(1, 3)),
        min_size=1,
        max_size=4,
        unique_by=lambda t: t[0],
    )
)
def test_factor_then_expand_round_trip(factors):
    p = Polynomial.from_roots(factors)
    assert Polynomial.from_roots(factor_spectrum(p).factors) == p


@given(square_matrices(max_n=5), st.integers(0, 2**31))
def test_similarity_invariance(a, seed):
    q, qinv = _unimodular(a.rows, random.Random(seed), 3, 3 * a.rows)
    b = Matrix(q) @ a @ Matrix(qinv)
    assert characteristic_polynomial(b) == characteristic_polynomial(a)


def test_check_spectrum(example_matrix):
    good = Spectrum(((3, 6), (2, 4)))
    assert check_spectrum(example_matrix, good) is good
    with pytest.raises(InconsistentSpectrum):
        check_spectrum(example_matrix, Spectrum(((3, 5), (2, 4))))
    with pytest.raises(InconsistentSpectrum):
        check_spectrum(example_matrix, Spectrum(((3, 4), (2, 6))))


def test_spectrum_validation():
    with pytest.raises(InconsistentSpectrum):
        Spectrum(((1, 2), (1, 1)))
    with pytest.raises(InconsistentSpectrum):
        Spectrum(((1, 0),))
    s = Spectrum(((3, 6), (2, 4)))
    assert str(s) == "3:6, 2:4" and s.size == 10 and 2 in s and 5 not in s


def test_polynomial_str():
    assert str(poly(6, -5, 1)) == "x^2 - 5x + 6"
