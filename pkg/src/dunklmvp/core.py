"""Root system Z_2^d, the weight w_k, and Dunkl operators.

The roots are ``±√2 e_i``, so the reflection for root ``i`` flips the sign of
coordinate ``i`` and one multiplicity ``k_i`` is attached to each coordinate.
With this normalisation

    T_i f(x) = ∂_i f(x) + k_i (f(x) - f(σ_i x)) / x_i,
    w_k(x)   = Π_i 2^{k_i} |x_i|^{2 k_i}.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import ConfigError, DunklError, SingularityError
from .polyalg import Polynomial, partial_derivative, reflect_diff_quotient
from .quadrature import adaptive_quad

SQRT_PI = math.sqrt(math.pi)


def gamma_rational(q) -> float:
    """Γ(q) for a positive rational; exact recursion at integers and half-integers."""
    q = Fraction(q)
    if q <= 0:
        raise DunklError(f"gamma_rational needs a positive argument, got {q}")
    if q.denominator == 1:
        return float(math.factorial(q.numerator - 1))
    if q.denominator == 2:
        n = (q.numerator - 1) // 2  # q = n + 1/2
        return float(Fraction(math.factorial(2 * n), 4**n * math.factorial(n))) * SQRT_PI
    return math.gamma(float(q))


def pochhammer(a, n: int) -> Fraction:
    a = Fraction(a)
    out = Fraction(1)
    for j in range(n):
        out *= a + j
    return out


@dataclass(frozen=True)
class RootSystemConfig:
    """Z_2^d root system with per-coordinate multiplicities and derived constants."""

    d: int
    k: tuple
    gamma: Fraction
    lam: Fraction
    c_k: float
    d_k: float
    quad_rel_tol: float = 1e-10
    quad_max_depth: int = 40
    gamma_precision: float = 1e-13

    @property
    def positive_roots(self) -> list:
        s = math.sqrt(2.0)
        return [tuple(s if j == i else 0.0 for j in range(self.d)) for i in range(self.d)]

    def reflect(self, x, i: int):
        """σ_i x: flip the sign of coordinate ``i`` (1-based)."""
        x = list(x)
        x[i - 1] = -x[i - 1]
        return x

    def group_orbit(self, x) -> list:
        """All sign flips of ``x`` (the W-orbit, with repetitions removed)."""
        orbit = {tuple(x)}
        for i in range(1, self.d + 1):
            orbit |= {tuple(self.reflect(y, i)) for y in orbit}
        return sorted(orbit)


def make_config(d: int, k: Sequence, *, quad_rel_tol: float = 1e-10,
                quad_max_depth: int = 40, gamma_precision: float = 1e-13) -> RootSystemConfig:
    """Build a configuration, rejecting ``λ = γ + d/2 - 1 <= 0``."""
    if d < 1:
        raise ConfigError(f"dimension must be >= 1, got {d}")
    k = tuple(Fraction(v) for v in k)
    if len(k) != d:
        raise ConfigError(f"need {d} multiplicities, got {len(k)}")
    if any(v < 0 for v in k):
        raise ConfigError("multiplicities must be non-negative")
    gamma = sum(k, Fraction(0))
    lam = gamma + Fraction(d, 2) - 1
    if lam <= 0:
        raise ConfigError(
            f"lambda = gamma + d/2 - 1 = {lam} violates the standing assumption lambda > 0"
        )
    inv_ck = 1.0
    prod_gamma = 1.0
    for ki in k:
        g = gamma_rational(ki + Fraction(1, 2))
        prod_gamma *= g
        inv_ck *= 2.0 ** float(ki) * 2.0 ** float(ki + Fraction(1, 2)) * g
    c_k = 1.0 / inv_ck
    g_lam1 = gamma_rational(lam + 1)
    d_k = 2.0 ** float(gamma) * 2.0 * prod_gamma / g_lam1
    d_k_alt = 1.0 / (c_k * 2.0 ** float(lam) * g_lam1)
    if abs(d_k - d_k_alt) > 1e-12 * d_k:
        raise ConfigError(f"inconsistent d_k: {d_k} vs {d_k_alt}")
    return RootSystemConfig(d, k, gamma, lam, c_k, d_k, quad_rel_tol,
                            quad_max_depth, gamma_precision)


def config_from_mapping(data: dict) -> RootSystemConfig:
    try:
        d = int(data["d"])
        k = [Fraction(str(v)) for v in data["k"]]
    except KeyError as exc:
        raise ConfigError(f"config is missing key {exc.args[0]!r}") from None
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"malformed config value: {exc}") from None
    return make_config(
        d, k,
        quad_rel_tol=float(data.get("quad_rel_tol", 1e-10)),
        quad_max_depth=int(data.get("quad_max_depth", 40)),
        gamma_precision=float(data.get("gamma_precision", 1e-13)),
    )


def load_config(path) -> RootSystemConfig:
    """Read a TOML config with keys ``d``, ``k``, ``gamma_precision``, ``quad_rel_tol``, ``quad_max_depth``."""
    try:
        import tomllib
    except ModuleNotFoundError:  # Python < 3.11
        import tomli as tomllib
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except (OSError, tomllib.TOMLDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    return config_from_mapping(data)


def weight(cfg: RootSystemConfig, x) -> float:
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape[0] != cfg.d:
        raise DunklError(f"point has {x.shape[0]} coordinates, config has d={cfg.d}")
    out = 1.0
    for xi, ki in zip(x, cfg.k):
        if ki:
            out = out * 2.0 ** float(ki) * np.abs(xi) ** (2 * float(ki))
    return out


# exact operators on polynomials


def dunkl_op(cfg: RootSystemConfig, i: int, p: Polynomial) -> Polynomial:
    """T_i p = ∂_i p + k_i (p - p∘σ_i)/x_i, exactly."""
    if p.dim != cfg.d:
        raise DunklError(f"polynomial dimension {p.dim} != config dimension {cfg.d}")
    out = partial_derivative(p, i)
    ki = cfg.k[i - 1]
    if ki:
        out = out + reflect_diff_quotient(p, i) * ki
    return out


def dunkl_laplacian_poly(cfg: RootSystemConfig, p: Polynomial) -> Polynomial:
    out = Polynomial.zero(cfg.d)
    for i in range(1, cfg.d + 1):
        out = out + dunkl_op(cfg, i, dunkl_op(cfg, i, p))
    return out


# black-box functions


@dataclass(frozen=True)
class BlackBoxFunction:
    """A numerically evaluated function on R^d.

    In d = 1 callbacks take a float (or a 1-D array when ``vectorized``);
    for d >= 2 they take a length-d array.  ``second`` is the second
    derivative, used only in d = 1.  ``breakpoints`` lists radii where the
    function is not smooth, so quadrature can split there.
    """

    dim: int
    func: Callable
    grad: Callable | None = None
    second: Callable | None = None
    smoothness: str = "C^inf"
    support_radius: float | None = None
    breakpoints: tuple = ()
    vectorized: bool = False

    def __call__(self, x):
        return self.func(x)

    def values(self, xs: np.ndarray) -> np.ndarray:
        """Evaluate on an array of d = 1 points."""
        xs = np.asarray(xs, dtype=float)
        if self.vectorized:
            return np.asarray(self.func(xs), dtype=float) * np.ones_like(xs)
        return np.array([self.func(float(v)) for v in xs.ravel()]).reshape(xs.shape)

    def derivative(self, x: float, h: float = 1e-5) -> float:
        if self.grad is not None:
            return float(self.grad(x))
        return (self.func(x + h) - self.func(x - h)) / (2 * h)

    def second_derivative(self, x: float, h: float = 1e-4) -> float:
        if self.second is not None:
            return float(self.second(x))
        if self.grad is not None:
            return (self.grad(x + h) - self.grad(x - h)) / (2 * h)
        return (self.func(x + h) - 2 * self.func(x) + self.func(x - h)) / h**2

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "BlackBoxFunction":
        grad = second = None
        if p.dim == 1:
            dp = partial_derivative(p, 1)
            grad = _poly_func(dp)
            second = _poly_func(partial_derivative(dp, 1))
        return cls(p.dim, _poly_func(p), grad=grad, second=second, vectorized=True)


def _poly_func(p: Polynomial) -> Callable:
    terms = [(tuple(int(e) for e in nu), float(c)) for nu, c in p.items()]

    def func(x):
        x = np.asarray(x, dtype=float)
        if p.dim == 1:
            return sum((c * x ** nu[0] for nu, c in terms), 0.0 * x)
        total = 0.0 * x[0]
        for nu, c in terms:
            term = c
            for j, e in enumerate(nu):
                if e:
                    term = term * x[j] ** e
            total = total + term
        return total

    return func


def dunkl_laplacian_numeric(cfg: RootSystemConfig, f: BlackBoxFunction, x, h: float = 1e-4) -> float:
    """Δ_k f(x) with central differences for Δ and ∇, exact reflection terms.

    Requires ``|x_i| > 10 h`` for every coordinate.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if x.shape[0] != cfg.d:
        raise DunklError(f"point has {x.shape[0]} coordinates, config has d={cfg.d}")
    for i, xi in enumerate(x, start=1):
        if abs(xi) <= 10 * h:
            raise SingularityError(
                f"coordinate x{i} = {xi:g} is within 10*h = {10 * h:g} of the reflecting hyperplane"
            )

    def ev(y):
        return float(f(y[0]) if cfg.d == 1 else f(y))

    f0 = ev(x)
    out = 0.0
    for j in range(cfg.d):
        e = np.zeros(cfg.d)
        e[j] = h
        fp, fm = ev(x + e), ev(x - e)
        out += (fp - 2 * f0 + fm) / h**2
        kj = float(cfg.k[j])
        if kj:
            if f.grad is not None:
                g = f.grad(x[0]) if cfg.d == 1 else np.asarray(f.grad(x))[j]
            else:
                g = (fp - fm) / (2 * h)
            xs = x.copy()
            xs[j] = -xs[j]
            out += kj * (2 * g / x[j] - (f0 - ev(xs)) / x[j] ** 2)
    return out


def rank1_laplacian(k: float, f: BlackBoxFunction, y: float) -> float:
    """Δ_k f(y) in d = 1 from first and second derivatives: f'' + 2k f'/y - k (f(y) - f(-y))/y²."""
    return (f.second_derivative(y) + 2 * k * f.derivative(y) / y
            - k * (f(y) - f(-y)) / y**2)


def green_check(cfg: RootSystemConfig, f: BlackBoxFunction, t: float) -> dict:
    """Residual of ∫_{-t}^{t} Δ_k f w_k dy = f'(t) w_k(t) - f'(-t) w_k(-t) in d = 1.

    The left side is integrated over (0, t) as the symmetric pair
    ``y, -y``, which cancels the odd singular part at the origin.
    """
    if cfg.d != 1:
        raise DunklError("green_check is implemented for d = 1 only")
    if t <= 0:
        raise DunklError("radius t must be positive")
    k = float(cfg.k[0])
    wk = lambda y: 2.0**k * abs(y) ** (2 * k)

    def pair(y):
        if y == 0.0:
            return 0.0
        return (rank1_laplacian(k, f, y) + rank1_laplacian(k, f, -y)) * wk(y)

    rhs = f.derivative(t) * wk(t) - f.derivative(-t) * wk(-t)
    # both sides may vanish (odd f): tolerate roundoff on the scale of the boundary term
    pts = [b for b in f.breakpoints if 0 < b < t]
    lhs, err = adaptive_quad(pair, 0.0, t, rel_tol=cfg.quad_rel_tol,
                             abs_tol=1e-12 * max(1.0, abs(rhs)),
                             limit=max(50, 5 * cfg.quad_max_depth), points=pts)
    return {"lhs": lhs, "rhs": rhs, "residual": lhs - rhs, "err_est": err}
