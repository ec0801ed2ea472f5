import random
from fractions import Fraction

import pytest

from dunklmvp import Polynomial

# criterion number -> (title, passed, detail); filled by test_acceptance.py
ACCEPTANCE: dict = {}


def random_rational(rng: random.Random, num: int = 9, den: int = 9) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_poly(rng: random.Random, d: int, max_degree: int, density: float = 0.6) -> Polynomial:
    terms = {}
    for nu in _exponents(d, max_degree):
        if rng.random() < density:
            terms[nu] = random_rational(rng)
    return Polynomial(d, terms)


def _exponents(d: int, max_degree: int):
    if d == 0:
        yield ()
        return
    for e in range(max_degree + 1):
        for rest in _exponents(d - 1, max_degree - e):
            yield (e,) + rest


def random_multiplicity(rng: random.Random, d: int) -> list:
    """Random positive rationals with d/2 - 1 + sum(k) > 0."""
    while True:
        k = [Fraction(rng.randint(1, 12), rng.randint(1, 6)) for _ in range(d)]
        if sum(k) + Fraction(d, 2) - 1 > 0:
            return k


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for num in sorted(ACCEPTANCE):
        title, passed, detail = ACCEPTANCE[num]
        terminalreporter.write_line(
            f"criterion {num:2d} {'PASS' if passed else 'FAIL'}  {title}: {detail}"
        )


@pytest.fixture(scope="session")
def counterexample_report():
    """The k = 1, U = (1, 3), x = 2, r = 1/2 construction (about half a minute)."""
    from dunklmvp import build_counterexample, make_config

    return build_counterexample(make_config(1, [1]), (1, 3), 2, 0.5)
