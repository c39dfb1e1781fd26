from fractions import Fraction

import pytest
from hypothesis import given

from cayleyjordan.errors import DimensionError, ParseError
from cayleyjordan.matrix import Matrix
from cayleyjordan.textio import (
    matrix_from_strings,
    matrix_to_strings,
    parse_blocks,
    parse_matrix,
    parse_spectrum,
    render_matrix,
)

from strategies import matrices, square_matrices
from hypothesis import strategies as st


def test_parse_examples():
    assert parse_matrix("1\n5") == Matrix([[5]])
    assert parse_matrix("2\n1 0\n0 1") == Matrix.identity(2)
    assert parse_matrix("2\n1/2 0\n0 -3/4") == Matrix.diag([Fraction(1, 2), Fraction(-3, 4)])


def test_comments_and_blank_lines():
    text = "# header\n\n2   # size\n1 2 # first\n\n3 4\n"
    assert parse_matrix(text) == Matrix([[1, 2], [3, 4]])


def test_parse_errors_carry_position():
    with pytest.raises(ParseError) as exc:
        parse_matrix("2\n1 x\n0 1")
    assert (exc.value.line, exc.value.column) == (2, 3)
    with pytest.raises(DimensionError):
        parse_matrix("2\n1 0 0\n0 1")
    with pytest.raises(DimensionError):
        parse_matrix("3\n1 0 0\n0 1 0")
    with pytest.raises(ParseError):
        parse_matrix("")
    with pytest.raises(ParseError):
        parse_matrix("two\n1")


@given(square_matrices(max_n=5, entries=st.fractions(min_value=-9, max_value=9, max_denominator=7)))
def test_render_round_trip(m):
    assert parse_matrix(render_matrix(m)) == m
    assert matrix_from_strings(matrix_to_strings(m)) == m


def test_spectrum_grammar():
    s = parse_spectrum("3:6,2:4")
    assert s.factors == ((3, 6), (2, 4))
    assert parse_spectrum(" -1/2:2 , 0:1 ").factors == ((Fraction(-1, 2), 2), (0, 1))
    for bad in ("", "3", "3:x", "3:1:2", "a:1"):
        with pytest.raises(ParseError):
            parse_spectrum(bad)


def test_blocks_grammar():
    assert parse_blocks("3=4,2;2=3,1") == ((3, (4, 2)), (2, (3, 1)))
    for bad in ("", "3", "3=a"):
        with pytest.raises(ParseError):
            parse_blocks(bad)
