from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dunklmvp import Polynomial, PolynomialSyntaxError, format_poly, parse_poly
from dunklmvp.polyalg import (eval_poly, laplacian, partial_derivative, reflect,
                              reflect_diff_quotient, shift_binomial, substitute)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def polys(d: int, max_deg: int = 5, max_terms: int = 6):
    exps = st.tuples(*[st.integers(0, max_deg) for _ in range(d)])
    return st.dictionaries(exps, rationals, max_size=max_terms).map(lambda t: Polynomial(d, t))


dims = st.integers(1, 3)
poly_pairs = dims.flatmap(lambda d: st.tuples(polys(d), polys(d), polys(d)))


def test_parse_reads_the_grammar():
    p = parse_poly("3/2 x1^2 x2 + -1 x2", 2)
    assert p.terms == {(2, 1): Fraction(3, 2), (0, 1): Fraction(-1)}
    assert str(p) == "3/2 x1^2 x2 + -1 x2"


def test_repeated_variables_and_like_terms_combine():
    assert parse_poly("2 x1 x1 + 1 x1^2 + -3 x1^2", 1) == Polynomial.zero(1)
    assert parse_poly("1 x1 x2 x1", 2).terms == {(2, 1): 1}


def test_zero_prints_as_zero():
    assert str(Polynomial.zero(3)) == "0"
    assert parse_poly("0", 3) == Polynomial.zero(3)


@pytest.mark.parametrize("text,pos", [
    ("3/ x1", 1), ("x1", 0), ("1 x1^", 4), ("1 x1 ++ 2", 6), ("1 y1", 2), ("1/0 x1", 0),
])
def test_syntax_errors_report_position(text, pos):
    with pytest.raises(PolynomialSyntaxError) as exc:
        parse_poly(text, 2)
    assert exc.value.position == pos


def test_variable_index_beyond_dimension():
    with pytest.raises(PolynomialSyntaxError, match="exceeds dimension"):
        parse_poly("1 x3", 2)
    with pytest.raises(PolynomialSyntaxError, match="start at 1"):
        parse_poly("1 x0", 2)


def test_grlex_printing_order():
    p = Polynomial(2, {(0, 0): 1, (1, 0): 1, (0, 1): 1, (2, 0): 1, (1, 1): 1, (0, 2): 1})
    assert str(p) == "1 x1^2 + 1 x1 x2 + 1 x2^2 + 1 x1 + 1 x2 + 1"


def test_exact_evaluation():
    p = parse_poly("1/3 x1^2 + -1 x2", 2)
    assert eval_poly(p, [Fraction(1, 2), 2]) == Fraction(1, 12) - 2
    assert isinstance(p(Fraction(1, 2), Fraction(1)), Fraction)
    assert p([0.5, 2.0]) == pytest.approx(1 / 12 - 2)


@given(dims.flatmap(polys))
def test_print_parse_round_trip(p):
    assert parse_poly(format_poly(p), p.dim) == p


@given(poly_pairs)
def test_ring_axioms(triple):
    p, q, r = triple
    assert p + q == q + p
    assert p * q == q * p
    assert (p * q) * r == p * (q * r)
    assert p * (q + r) == p * q + p * r
    assert p - p == Polynomial.zero(p.dim)


@given(poly_pairs)
def test_derivative_is_a_derivation(triple):
    p, q, _ = triple
    for i in range(1, p.dim + 1):
        assert partial_derivative(p * q, i) == partial_derivative(p, i) * q + p * partial_derivative(q, i)


@given(dims.flatmap(polys))
def test_reflection_difference_quotient(p):
    for i in range(1, p.dim + 1):
        xi = Polynomial.variable(p.dim, i)
        assert reflect(reflect(p, i), i) == p
        assert xi * reflect_diff_quotient(p, i) == p - reflect(p, i)


@given(dims.flatmap(polys))
def test_laplacian_is_sum_of_second_derivatives(p):
    expect = Polynomial.zero(p.dim)
    for i in range(1, p.dim + 1):
        expect = expect + partial_derivative(partial_derivative(p, i), i)
    assert laplacian(p) == expect


@given(st.tuples(st.integers(0, 4), st.integers(0, 4)))
def test_shift_binomial_expands_a_shifted_monomial(nu):
    # (z + η)^ν evaluated at z = (1, 2), η = (3, -1)
    total = sum(c * 1 ** a[0] * 2 ** a[1] * 3 ** b[0] * (-1) ** b[1] for a, b, c in shift_binomial(nu))
    assert total == 4 ** nu[0] * 1 ** nu[1]


def test_substitute_and_degree():
    p = parse_poly("1 x1^2 x2 + 2 x2", 2)
    assert p.degree == 3 and not p.is_homogeneous()
    assert substitute(p, {2: Fraction(1, 2)}) == parse_poly("1/2 x1^2 + 1", 2)
    assert Polynomial.zero(2).degree == -1


def test_parity():
    assert parse_poly("1 x1^2 x2 + 3 x2", 2).parity(1) == 0
    assert parse_poly("1 x1^2 x2 + 3 x2", 2).parity(2) == 1
    assert parse_poly("1 x1 + 1", 1).parity(1) is None


@settings(max_examples=30)
@given(dims.flatmap(polys), st.integers(0, 3))
def test_power_matches_repeated_product(p, n):
    expect = Polynomial.constant(p.dim, 1)
    for _ in range(n):
        expect = expect * p
    assert p**n == expect
