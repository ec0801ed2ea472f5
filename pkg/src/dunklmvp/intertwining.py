"""Intertwining operator V_k, Dunkl translation of polynomials, Dunkl kernel.

For Z_2^d the intertwining operator acts diagonally on monomials,

    V_k x^ν = (Π_i a_{ν_i}(k_i)) x^ν,

with the rank-one coefficients

    a_{2m}(k)   = (1/2)_m / (k + 1/2)_m,
    a_{2m+1}(k) = (3/2)_m / ((k + 3/2)_m (2k + 1)).

These are also the monomial moments of the representing measures μ_x^k.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .core import RootSystemConfig, pochhammer
from .errors import DunklError
from .polyalg import Polynomial, shift_binomial

HALF = Fraction(1, 2)


def vk_coefficient_closed_form(n: int, k) -> Fraction:
    k = Fraction(k)
    m, odd = divmod(n, 2)
    if odd:
        return pochhammer(Fraction(3, 2), m) / (pochhammer(k + Fraction(3, 2), m) * (2 * k + 1))
    return pochhammer(HALF, m) / pochhammer(k + HALF, m)


class VkCoefficientTable:
    """Append-only cache of a_n(k) for one multiplicity ``k``."""

    def __init__(self, k, n_max: int = 64):
        self.k = Fraction(k)
        self._coeffs: list[Fraction] = []
        self._lock = threading.Lock()
        self.grow(n_max)

    def grow(self, n_max: int) -> None:
        with self._lock:
            for n in range(len(self._coeffs), n_max + 1):
                self._coeffs.append(vk_coefficient_closed_form(n, self.k))

    def __getitem__(self, n: int) -> Fraction:
        if n >= len(self._coeffs):
            self.grow(max(n, 2 * len(self._coeffs)))
        return self._coeffs[n]

    def __len__(self) -> int:
        return len(self._coeffs)


_TABLES: dict = {}
_TABLES_LOCK = threading.Lock()


def coefficient_table(k) -> VkCoefficientTable:
    k = Fraction(k)
    with _TABLES_LOCK:
        table = _TABLES.get(k)
        if table is None:
            table = _TABLES[k] = VkCoefficientTable(k)
    return table


def vk_monomial_factor(k: Sequence, nu: Sequence[int]) -> Fraction:
    out = Fraction(1)
    for ki, e in zip(k, nu):
        if e:
            out *= coefficient_table(ki)[e]
    return out


def _check_dim(cfg: RootSystemConfig, p: Polynomial) -> None:
    if p.dim != cfg.d:
        raise DunklError(f"polynomial dimension {p.dim} != config dimension {cfg.d}")


def vk_poly(cfg: RootSystemConfig, p: Polynomial) -> Polynomial:
    _check_dim(cfg, p)
    return p.map_coefficients(lambda nu, c: c * vk_monomial_factor(cfg.k, nu))


def vk_inverse_poly(cfg: RootSystemConfig, p: Polynomial) -> Polynomial:
    _check_dim(cfg, p)
    return p.map_coefficients(lambda nu, c: c / vk_monomial_factor(cfg.k, nu))


def sphere_moment(cfg: RootSystemConfig, nu: Sequence[int]) -> Fraction:
    """(1/d_k) ∫_{S^{d-1}} y^ν w_k(y) dσ(y) = Π_i (k_i+1/2)_{ν_i/2} / (λ+1)_{|ν|/2}, zero for odd ν_i."""
    if len(nu) != cfg.d:
        raise DunklError(f"multi-index has {len(nu)} entries, config has d={cfg.d}")
    if any(e % 2 for e in nu):
        return Fraction(0)
    num = Fraction(1)
    for ki, e in zip(cfg.k, nu):
        num *= pochhammer(ki + HALF, e // 2)
    return num / pochhammer(cfg.lam + 1, sum(nu) // 2)


@lru_cache(maxsize=512)
def _translate_cached(k: tuple, p: Polynomial) -> Polynomial:
    d = p.dim
    out: dict = {}
    for nu, c in p.items():
        q = c / vk_monomial_factor(k, nu)
        for a, b, binom in shift_binomial(nu):
            key = a + b
            val = q * binom * vk_monomial_factor(k, a) * vk_monomial_factor(k, b)
            out[key] = out.get(key, 0) + val
    return Polynomial(2 * d, out)


def translate_poly(cfg: RootSystemConfig, p: Polynomial) -> Polynomial:
    """u(x, y) = τ_x p(y) as a polynomial in 2d variables (x_1..x_d, then y_1..y_d).

    Built from V_k^{-1} p evaluated at z + η, with z^a ↦ V_k[z^a](x) and
    η^b ↦ V_k[η^b](y).
    """
    _check_dim(cfg, p)
    return _translate_cached(cfg.k, p)


def translate_poly_at(cfg: RootSystemConfig, p: Polynomial, x, y):
    """Evaluate τ_x p(y); exact when x and y are rational."""
    return translate_poly(cfg, p)(_seq(x) + _seq(y))


def _seq(v) -> list:
    if isinstance(v, (list, tuple)):
        return list(v)
    if isinstance(v, np.ndarray):
        return [float(c) for c in v.ravel()]
    return [v]


def swap_blocks(u: Polynomial) -> Polynomial:
    """Exchange the x-block and y-block of a 2d-variable polynomial."""
    d = u.dim // 2
    return Polynomial(u.dim, {nu[d:] + nu[:d]: c for nu, c in u.items()})


def dunkl_kernel(cfg: RootSystemConfig, x, y, tol: float = 1e-12) -> float:
    """E_k(x, y) for real x, y via the series Σ_n V_k[⟨·, y⟩^n / n!](x).

    The n-th term is the Cauchy product of the per-coordinate series
    a_m(k_i) (x_i y_i)^m / m!.  Since 0 < a_m <= 1 it is bounded by
    (|x||y|)^n / n!, which gives the stopping rule.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    y = np.atleast_1d(np.asarray(y, dtype=float))
    if x.shape != (cfg.d,) or y.shape != (cfg.d,):
        raise DunklError("kernel arguments must have d coordinates")
    s = float(np.linalg.norm(x) * np.linalg.norm(y))
    tables = [coefficient_table(ki) for ki in cfg.k]
    prods = x * y
    # per-coordinate series c_i[m]
    series = [[1.0] for _ in range(cfg.d)]
    total = 1.0
    n = 0
    bound_term = 1.0  # s^n / n!
    while True:
        n += 1
        bound_term *= s / n
        for i in range(cfg.d):
            series[i].append(series[i][-1] * prods[i] / n)
        # term_n = Σ_{|ν| = n} Π_i a_{ν_i} c_i[ν_i]
        conv = np.array([float(tables[0][m]) * series[0][m] for m in range(n + 1)])
        for i in range(1, cfg.d):
            ci = np.array([float(tables[i][m]) * series[i][m] for m in range(n + 1)])
            conv = np.convolve(conv, ci)[: n + 1]
        total += conv[n]
        # tail Σ_{m>n} s^m/m! <= 2 s^{n+1}/(n+1)! once n + 2 > 2 s
        if n + 2 > 2 * s and 2 * bound_term * s / (n + 1) < tol:
            return total
        if n > 10_000:
            raise DunklError("kernel series did not reach the requested tolerance")
