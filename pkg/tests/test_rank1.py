import dataclasses
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dunklmvp import (BlackBoxFunction, DunklError, Polynomial, bump, bump_profile, indicator, make_config,
                      parse_poly, spherical_mean_1d, translate_1d, translate_poly, weight)
from dunklmvp.quadrature import adaptive_quad
from dunklmvp.rank1 import Rank1Kernel

ks = [Fraction(3, 4), Fraction(1), Fraction(3, 2), Fraction(5, 2)]


@pytest.mark.parametrize("k", ks)
def test_kernel_rule_has_mass_one_and_first_moment(k):
    kern = Rank1Kernel.for_config(make_config(1, [k]))
    t, w = kern.rule(12, breaks=[-0.3, 0.5])
    assert w.sum() == pytest.approx(1.0, rel=1e-13)
    assert np.dot(w, t) == pytest.approx(1 / (2 * float(k) + 1), rel=1e-12)


def test_kernel_needs_rank_one_and_large_multiplicity():
    with pytest.raises(DunklError):
        Rank1Kernel.for_config(make_config(2, [1, 1]))
    with pytest.raises(DunklError, match="k > 1/2"):
        Rank1Kernel.for_config(dataclasses.replace(make_config(1, [1]), k=(Fraction(1, 2),)))


@settings(max_examples=25)
@given(st.sampled_from(ks), st.floats(-3, 3), st.floats(-3, 3),
       st.lists(st.fractions(-2, 2, max_denominator=8), min_size=1, max_size=9))
def test_matches_exact_polynomial_translation(k, x, y, coeffs):
    cfg = make_config(1, [k])
    p = Polynomial(1, {(n,): c for n, c in enumerate(coeffs)})
    exact = float(translate_poly(cfg, p)([Fraction(x), Fraction(y)]))
    assert translate_1d(cfg, BlackBoxFunction.from_polynomial(p), x, y) == pytest.approx(exact, abs=1e-9)


def test_zero_arguments():
    cfg = make_config(1, [1])
    f = bump(0.4, 1.0)
    assert translate_1d(cfg, f, 0.0, 0.7) == pytest.approx(float(f(0.7)), rel=1e-15)
    assert translate_1d(cfg, f, -0.6, 0.0) == pytest.approx(float(f(-0.6)), rel=1e-15)


@pytest.mark.parametrize("k", ks)
def test_symmetry_for_a_bump(k):
    cfg = make_config(1, [k])
    f = bump(0.5, 1.2)
    for x, y in [(0.3, 1.1), (-0.8, 0.4), (1.5, -0.2)]:
        assert translate_1d(cfg, f, x, y) == pytest.approx(translate_1d(cfg, f, y, x), abs=1e-12)


def test_translation_preserves_the_weighted_integral():
    cfg = make_config(1, [Fraction(3, 2)])
    f = bump(0.5, 1.0)
    x = 0.8
    total, _ = adaptive_quad(lambda y: float(f(y)) * weight(cfg, [y]), -0.5, 1.5, rel_tol=1e-12)
    moved, _ = adaptive_quad(lambda y: translate_1d(cfg, f, x, y) * weight(cfg, [y]), -2.5, 2.5,
                             rel_tol=1e-10, points=[-1.3, -0.3, 0.0, 0.3, 1.3])
    assert moved == pytest.approx(total, rel=1e-8)


def test_translation_is_positive_on_even_functions_only():
    cfg = make_config(1, [1])
    even = bump_profile(1.5).as_function(1)
    for x in (-1.0, 0.4, 2.0):
        for y in np.linspace(-3, 3, 13):
            assert translate_1d(cfg, even, x, y) >= -1e-14
    # the kernel is signed: a non-negative, non-even function can translate negative
    assert translate_1d(cfg, indicator(0.5, 1.5), -1.0, -2.0) < 0


def test_mean_of_square():
    cfg = make_config(1, [Fraction(3, 2)])
    f = BlackBoxFunction.from_polynomial(parse_poly("1 x1^2", 1))
    assert spherical_mean_1d(cfg, f, 1.2, 0.5) == pytest.approx(1.44 + 0.25, rel=1e-13)


@pytest.mark.parametrize("x", [2.0, 3.0])
def test_mass_on_the_mirror_side(x):
    # σ_{x,u} puts mass u²/(6x²) on (-∞, 0) when k = 1 and u < |x|
    cfg = make_config(1, [1])
    neg = indicator(-10.0, 0.0)
    for u in (0.1, 0.3, 0.45):
        assert spherical_mean_1d(cfg, neg, x, u) == pytest.approx(u * u / (6 * x * x), rel=1e-10)


def test_radius_must_be_positive():
    with pytest.raises(DunklError):
        spherical_mean_1d(make_config(1, [1]), bump(), 0.5, 0.0)
