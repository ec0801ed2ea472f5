"""Exact sparse multivariate polynomials with rational coefficients.

Coefficients are :class:`fractions.Fraction` (arbitrary precision), terms are
keyed by exponent tuples.  Coordinates are numbered from 1 in the public
functions so that ``i`` matches the variable name ``x<i>``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from math import comb
from numbers import Rational
from typing import Iterable, Mapping, Sequence

from .errors import DunklError, PolynomialSyntaxError

Monomial = tuple  # tuple[int, ...]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, (int, Rational)):
        return Fraction(c)
    if isinstance(c, float):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot use {type(c).__name__} as an exact coefficient")


class Polynomial:
    """Immutable polynomial in ``dim`` variables over the rationals."""

    __slots__ = ("dim", "_terms", "_hash")

    def __init__(self, dim: int, terms: Mapping[Monomial, object] | None = None):
        if dim < 1:
            raise DunklError(f"dimension must be >= 1, got {dim}")
        clean = {}
        for nu, c in (terms or {}).items():
            nu = tuple(int(e) for e in nu)
            if len(nu) != dim or any(e < 0 for e in nu):
                raise DunklError(f"bad exponent {nu} for dimension {dim}")
            c = _as_fraction(c)
            if c:
                clean[nu] = clean.get(nu, 0) + c
                if not clean[nu]:
                    del clean[nu]
        self.dim = dim
        self._terms = clean
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, dim: int) -> "Polynomial":
        return cls(dim)

    @classmethod
    def constant(cls, dim: int, c) -> "Polynomial":
        return cls(dim, {(0,) * dim: c})

    @classmethod
    def monomial(cls, nu: Sequence[int], c=1) -> "Polynomial":
        return cls(len(nu), {tuple(nu): c})

    @classmethod
    def variable(cls, dim: int, i: int) -> "Polynomial":
        _check_coord(dim, i)
        nu = [0] * dim
        nu[i - 1] = 1
        return cls(dim, {tuple(nu): 1})

    @classmethod
    def _raw(cls, dim: int, terms: dict) -> "Polynomial":
        # terms already canonical (Fractions, no zeros)
        p = object.__new__(cls)
        p.dim = dim
        p._terms = terms
        p._hash = None
        return p

    # inspection

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(nu) for nu in self._terms)

    def coefficient(self, nu: Sequence[int]) -> Fraction:
        return self._terms.get(tuple(nu), Fraction(0))

    def is_homogeneous(self) -> bool:
        return len({sum(nu) for nu in self._terms}) <= 1

    def parity(self, i: int) -> int | None:
        """0 if even in x_i, 1 if odd, None if mixed (or zero polynomial)."""
        _check_coord(self.dim, i)
        parities = {nu[i - 1] % 2 for nu in self._terms}
        return parities.pop() if len(parities) == 1 else None

    # arithmetic

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.dim != self.dim:
                raise DunklError(f"dimension mismatch: {self.dim} vs {other.dim}")
            return other
        return Polynomial.constant(self.dim, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for nu, c in other._terms.items():
            s = out.get(nu, 0) + c
            if s:
                out[nu] = s
            else:
                out.pop(nu, None)
        return Polynomial._raw(self.dim, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.dim, {nu: -c for nu, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            c = _as_fraction(other)
            if not c:
                return Polynomial.zero(self.dim)
            return Polynomial._raw(self.dim, {nu: c * v for nu, v in self._terms.items()})
        other = self._coerce(other)
        out: dict = {}
        for nu, a in self._terms.items():
            for mu, b in other._terms.items():
                key = tuple(x + y for x, y in zip(nu, mu))
                out[key] = out.get(key, 0) + a * b
        return Polynomial(self.dim, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return self * (1 / _as_fraction(other))

    def __pow__(self, n: int):
        if n < 0:
            raise DunklError("negative powers are not polynomials")
        result = Polynomial.constant(self.dim, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.dim == other.dim and self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == Polynomial.constant(self.dim, other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.dim, frozenset(self._terms.items())))
        return self._hash

    def map_coefficients(self, fn) -> "Polynomial":
        """Return the polynomial with coefficient ``c`` of ``x^nu`` replaced by ``fn(nu, c)``."""
        return Polynomial(self.dim, {nu: fn(nu, c) for nu, c in self._terms.items()})

    def __call__(self, *point):
        if len(point) == 1 and hasattr(point[0], "__len__"):
            point = point[0]
        return eval_poly(self, point)

    def __repr__(self):
        return f"Polynomial({self.dim}, {str(self)!r})"

    def __str__(self):
        return format_poly(self)


def _check_coord(dim: int, i: int) -> None:
    if not 1 <= i <= dim:
        raise DunklError(f"coordinate index {i} out of range 1..{dim}")


def grlex_key(nu: Monomial):
    """Sort key putting higher total degree first, then lexicographically larger exponents."""
    return (-sum(nu), tuple(-e for e in nu))


def format_poly(p: Polynomial) -> str:
    if not p._terms:
        return "0"
    parts = []
    for nu in sorted(p._terms, key=grlex_key):
        c = p._terms[nu]
        factors = [str(c)]
        for idx, e in enumerate(nu, start=1):
            if e == 1:
                factors.append(f"x{idx}")
            elif e > 1:
                factors.append(f"x{idx}^{e}")
        parts.append(" ".join(factors))
    return " + ".join(parts)


_TOKEN = re.compile(
    r"\s*(?:(?P<plus>\+)|(?P<rat>-?\d+(?:/\d+)?)|(?P<var>x(?P<idx>\d+)(?:\^(?P<exp>\d+))?))"
)


def parse_poly(text: str, d: int) -> Polynomial:
    """Parse ``term ('+' term)*`` where a term is a rational followed by variable factors.

    >>> str(parse_poly("3/2 x1^2 x2 + -1 x2", 2))
    '3/2 x1^2 x2 + -1 x2'
    """
    if d < 1:
        raise DunklError(f"dimension must be >= 1, got {d}")
    pos = 0
    n = len(text)
    terms: dict = {}
    expect_term = True
    coeff = None
    nu = None

    def finish():
        if coeff is not None:
            key = tuple(nu)
            terms[key] = terms.get(key, 0) + coeff

    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start(m.lastgroup)
        if m.group("plus"):
            if expect_term:
                raise PolynomialSyntaxError("expected a term before '+'", start)
            finish()
            coeff, nu = None, None
            expect_term = True
        elif m.group("rat") is not None:
            if not expect_term:
                raise PolynomialSyntaxError("expected '+' or a variable", start)
            num = m.group("rat")
            if "/" in num and int(num.split("/")[1]) == 0:
                raise PolynomialSyntaxError("zero denominator", start)
            coeff = Fraction(num)
            nu = [0] * d
            expect_term = False
        else:
            if expect_term:
                raise PolynomialSyntaxError("a term must start with a rational coefficient", start)
            idx = int(m.group("idx"))
            if not 1 <= idx <= d:
                msg = f"variable x{idx} exceeds dimension {d}" if idx > d else "variable indices start at 1"
                raise PolynomialSyntaxError(msg, start)
            nu[idx - 1] += int(m.group("exp") or 1)
        pos = m.end()
    if expect_term:
        raise PolynomialSyntaxError("unexpected end of input", n)
    finish()
    return Polynomial(d, terms)


def eval_poly(p: Polynomial, point: Sequence):
    """Evaluate ``p`` at ``point``.

    Exact (a ``Fraction``) when every coordinate is an int or ``Fraction``,
    floating point otherwise.
    """
    if len(point) != p.dim:
        raise DunklError(f"point has {len(point)} coordinates, polynomial has {p.dim}")
    exact = all(isinstance(v, (int, Fraction)) for v in point)
    if exact:
        point = [Fraction(v) for v in point]
        total = Fraction(0)
    else:
        point = [float(v) for v in point]
        total = 0.0
    for nu, c in p._terms.items():
        term = c if exact else float(c)
        for v, e in zip(point, nu):
            if e:
                term *= v**e
        total += term
    return total


def partial_derivative(p: Polynomial, i: int) -> Polynomial:
    _check_coord(p.dim, i)
    j = i - 1
    out = {}
    for nu, c in p._terms.items():
        e = nu[j]
        if e:
            mu = nu[:j] + (e - 1,) + nu[j + 1 :]
            out[mu] = c * e
    return Polynomial._raw(p.dim, out)


def reflect(p: Polynomial, i: int) -> Polynomial:
    """Compose with the sign flip of coordinate ``i``."""
    _check_coord(p.dim, i)
    j = i - 1
    return Polynomial._raw(
        p.dim, {nu: (-c if nu[j] % 2 else c) for nu, c in p._terms.items()}
    )


def reflect_diff_quotient(p: Polynomial, i: int) -> Polynomial:
    """``(p - p∘σ_i) / x_i``; only the odd-in-``x_i`` monomials survive, each doubled."""
    _check_coord(p.dim, i)
    j = i - 1
    out = {}
    for nu, c in p._terms.items():
        if nu[j] % 2:
            mu = nu[:j] + (nu[j] - 1,) + nu[j + 1 :]
            out[mu] = 2 * c
    return Polynomial._raw(p.dim, out)


def substitute(p: Polynomial, values: Mapping[int, object]) -> Polynomial:
    """Fix the coordinates in ``values`` (1-based index -> rational value), keeping the dimension."""
    vals = {i - 1: _as_fraction(v) for i, v in values.items()}
    out: dict = {}
    for nu, c in p._terms.items():
        mu = list(nu)
        for j, v in vals.items():
            if mu[j]:
                c = c * v ** mu[j]
                mu[j] = 0
        if c:
            key = tuple(mu)
            out[key] = out.get(key, 0) + c
    return Polynomial(p.dim, out)


def restrict(p: Polynomial, keep: Sequence[int]) -> Polynomial:
    """Drop to the variables listed in ``keep`` (1-based); the others must not occur."""
    idx = [i - 1 for i in keep]
    out = {}
    for nu, c in p._terms.items():
        if any(e for j, e in enumerate(nu) if j not in idx):
            raise DunklError("cannot restrict: dropped variable occurs in polynomial")
        out[tuple(nu[j] for j in idx)] = c
    return Polynomial._raw(len(idx), out)


def shift_binomial(nu: Sequence[int]) -> Iterable[tuple[tuple, tuple, int]]:
    """Expand ``(z+η)^nu`` into ``(a, b, coefficient)`` triples with ``a + b = nu``."""
    ranges = [range(e + 1) for e in nu]
    # iterative product keeps memory small for modest degree
    stack = [((), ())]
    for e, rng in zip(nu, ranges):
        stack = [(a + (ai,), b + (e - ai,)) for a, b in stack for ai in rng]
    for a, b in stack:
        c = 1
        for ai, e in zip(a, nu):
            c *= comb(e, ai)
        yield a, b, c


def laplacian(p: Polynomial) -> Polynomial:
    out = Polynomial.zero(p.dim)
    for i in range(1, p.dim + 1):
        out = out + partial_derivative(partial_derivative(p, i), i)
    return out
