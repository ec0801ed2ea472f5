"""Test functions: smooth bumps, plateaus, indicators and radial profiles."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

import numpy as np

from .core import BlackBoxFunction


def _bump_parts(s):
    s = np.asarray(s, dtype=float)
    inside = np.abs(s) < 1
    q = np.where(inside, 1 - s * s, 1.0)
    e = np.where(inside, np.exp(-1 / q), 0.0)
    g1 = -2 * s / q**2
    g2 = -2 / q**2 - 8 * s * s / q**3
    return e, np.where(inside, g1, 0.0), np.where(inside, g2, 0.0)


def bump(center: float = 0.0, radius: float = 1.0, height: float = 1.0) -> BlackBoxFunction:
    """``height * exp(-1/(1-s²))`` with ``s = (y - center)/radius``, on R, with exact derivatives."""

    def f(y):
        e, _, _ = _bump_parts((np.asarray(y, dtype=float) - center) / radius)
        return height * e

    def df(y):
        e, g1, _ = _bump_parts((np.asarray(y, dtype=float) - center) / radius)
        return height * e * g1 / radius

    def d2f(y):
        e, g1, g2 = _bump_parts((np.asarray(y, dtype=float) - center) / radius)
        return height * e * (g1 * g1 + g2) / radius**2

    return BlackBoxFunction(
        1, f, grad=df, second=d2f,
        support_radius=abs(center) + radius,
        breakpoints=(center - radius, center + radius),
        vectorized=True,
    )


def smooth_step(u):
    """0 for u <= 0, 1 for u >= 1, C^∞ in between."""
    u = np.asarray(u, dtype=float)
    a = np.where(u > 0, np.exp(-1 / np.where(u > 0, u, 1.0)), 0.0)
    v = 1 - u
    b = np.where(v > 0, np.exp(-1 / np.where(v > 0, v, 1.0)), 0.0)
    return a / (a + b)


def plateau(a: float, b: float, width: float, value: float = 1.0) -> BlackBoxFunction:
    """Equal to ``value`` on [a, b], zero outside (a - width, b + width), smooth."""
    if not (a <= b and width > 0):
        raise ValueError("need a <= b and width > 0")

    def f(y):
        y = np.asarray(y, dtype=float)
        return value * smooth_step((y - (a - width)) / width) * smooth_step(((b + width) - y) / width)

    return BlackBoxFunction(
        1, f,
        support_radius=max(abs(a - width), abs(b + width)),
        breakpoints=(a - width, a, b, b + width),
        vectorized=True,
    )


def indicator(a: float, b: float) -> BlackBoxFunction:
    """Indicator of the closed interval [a, b]."""

    def f(y):
        y = np.asarray(y, dtype=float)
        return ((y >= a) & (y <= b)).astype(float)

    return BlackBoxFunction(
        1, f, smoothness="bounded Borel",
        support_radius=max(abs(a), abs(b)), breakpoints=(a, b), vectorized=True,
    )


@dataclass(frozen=True)
class RadialProfile:
    """t ↦ φ(t) for t >= 0, extended radially to R^d."""

    func: Callable
    support_radius: float | None = None
    breakpoints: tuple = ()
    smoothness: str = "C^inf"

    def __call__(self, t):
        return self.func(t)

    def as_function(self, d: int = 1) -> BlackBoxFunction:
        if d == 1:
            return BlackBoxFunction(
                1, lambda y: self.func(np.abs(np.asarray(y, dtype=float))),
                support_radius=self.support_radius,
                breakpoints=tuple(self.breakpoints) + tuple(-b for b in self.breakpoints),
                vectorized=True,
            )
        return BlackBoxFunction(d, lambda y: self.func(np.linalg.norm(np.asarray(y, dtype=float), axis=0)),
                                support_radius=self.support_radius, vectorized=True)


def gaussian_profile() -> RadialProfile:
    return RadialProfile(lambda t: np.exp(-0.5 * np.asarray(t, dtype=float) ** 2))


def bump_profile(radius: float) -> RadialProfile:
    """exp(-1/(1 - (t/radius)²)) on [0, radius)."""
    return RadialProfile(lambda t: _bump_parts(np.asarray(t, dtype=float) / radius)[0],
                         support_radius=radius, breakpoints=(radius,))
