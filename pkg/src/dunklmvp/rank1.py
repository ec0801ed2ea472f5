"""Explicit Dunkl translation and spherical means in dimension one.

For multiplicity k > 1/2 the translation of a bounded Borel function is

    τ_x f(y) = ∫_{-1}^{1} [f_e(A) + f_o(A) (x + y)/A] ν_k(t) dt,
    A = sqrt(x² + y² + 2xyt),
    ν_k(t) = b_k (1 + t)(1 - t²)^{k-1},  b_k = Γ(k + 1/2) / (√π Γ(k)),

with f_e, f_o the even and odd parts of f.  Equivalently
(1/2)∫ [f(A)(1 + (x+y)/A) + f(-A)(1 - (x+y)/A)] ν_k(t) dt.  This sign
convention is the one that reproduces the exact polynomial translation
(`intertwining.translate_poly`); the variant with ``x - y`` and
``-2xyt`` computes τ_x f(-y) instead.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .core import BlackBoxFunction, RootSystemConfig, gamma_rational
from .errors import DunklError, QuadratureError
from .quadrature import jacobi_panel_rule


@dataclass(frozen=True)
class Rank1Kernel:
    k: Fraction
    b_k: float

    @classmethod
    def for_config(cls, cfg: RootSystemConfig) -> "Rank1Kernel":
        if cfg.d != 1:
            raise DunklError("the explicit translation kernel is rank one (d = 1)")
        k = cfg.k[0]
        if k <= Fraction(1, 2):
            raise DunklError(f"rank-one translation needs k > 1/2 (lambda > 0), got k = {k}")
        b_k = gamma_rational(k + Fraction(1, 2)) / (math.sqrt(math.pi) * gamma_rational(k))
        return cls(k, b_k)

    def density(self, t):
        t = np.asarray(t, dtype=float)
        return self.b_k * (1 + t) * (1 - t * t) ** (float(self.k) - 1)

    def rule(self, n: int, breaks=()):
        """Nodes and weights for ∫ g(t) ν_k(t) dt, split at ``breaks``."""
        kf = float(self.k)
        t, w = jacobi_panel_rule(breaks, n, kf, kf - 1.0)
        return t, self.b_k * w


def _kernel_breaks(f: BlackBoxFunction, x: float, y: float) -> list:
    radii = [abs(b) for b in f.breakpoints]
    if f.support_radius is not None:
        radii.append(f.support_radius)
    out = []
    xy2 = 2 * x * y
    for b in radii:
        t = (b * b - x * x - y * y) / xy2
        if -1 < t < 1:
            out.append(t)
    return sorted(set(out))


def translate_1d(cfg: RootSystemConfig, f: BlackBoxFunction, x: float, y: float, *,
                 rel_tol: float | None = None, abs_tol: float = 1e-16, n_start: int = 8,
                 n_max: int = 2048, full_output: bool = False):
    """τ_x f(y) by Gauss-Jacobi quadrature, doubling nodes until two passes agree.

    With ``full_output`` returns ``(value, error_estimate)``.
    """
    kernel = Rank1Kernel.for_config(cfg)
    rel_tol = cfg.quad_rel_tol * 1e-2 if rel_tol is None else rel_tol
    x, y = float(x), float(y)
    s = x + y
    if x == 0.0 or y == 0.0:
        # A = |x + y| for every t; the kernel has mass one
        a = abs(s)
        if a == 0.0:
            val = float(f.values(np.array([0.0]))[0])
        else:
            fa, fma = f.values(np.array([a, -a]))
            val = 0.5 * (fa + fma) + 0.5 * (fa - fma) * s / a
        return (val, 0.0) if full_output else val

    breaks = _kernel_breaks(f, x, y)

    def integrate(n):
        t, w = kernel.rule(n, breaks)
        a = np.sqrt(np.maximum(x * x + y * y + 2 * x * y * t, 0.0))
        both = f.values(np.concatenate([a, -a]))
        fa, fma = both[: len(a)], both[len(a):]
        with np.errstate(divide="ignore", invalid="ignore"):
            odd = np.where(a > 0, 0.5 * (fa - fma) * s / a, 0.0)
        g = 0.5 * (fa + fma) + odd
        return float(np.dot(w, g)), float(np.dot(w, np.abs(g)))

    n = n_start
    prev, scale = integrate(n)
    while n < n_max:
        n *= 2
        val, scale = integrate(n)
        err = abs(val - prev)
        if err <= rel_tol * scale + abs_tol:
            return (val, err) if full_output else val
        prev = val
    raise QuadratureError(f"translate_1d did not converge at x={x}, y={y}", err)


def spherical_mean_1d(cfg: RootSystemConfig, f: BlackBoxFunction, x: float, r: float, *,
                      rel_tol: float | None = None, full_output: bool = False):
    """M_{x,r}(f) = (τ_x f(r) + τ_x f(-r)) / 2 (the unit sphere of R is {±1})."""
    if r <= 0:
        raise DunklError("radius must be positive")
    a, ea = translate_1d(cfg, f, x, r, rel_tol=rel_tol, full_output=True)
    b, eb = translate_1d(cfg, f, x, -r, rel_tol=rel_tol, full_output=True)
    val = 0.5 * (a + b)
    return (val, 0.5 * (ea + eb)) if full_output else val
