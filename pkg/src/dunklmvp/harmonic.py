"""Dunkl-harmonic polynomials, the fundamental solution, potentials in d = 1,
and the counterexample on domains that are not W-invariant."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np
from numpy.polynomial import chebyshev as C

from .core import (BlackBoxFunction, RootSystemConfig, dunkl_laplacian_numeric,
                   dunkl_laplacian_poly, gamma_rational, rank1_laplacian)
from .errors import DunklError, GeometryError
from .functions import plateau
from .intertwining import vk_poly
from .polyalg import Polynomial, partial_derivative
from .quadrature import adaptive_quad
from .rank1 import spherical_mean_1d, translate_1d
from .serialize import dumps


def classical_harmonics(d: int, degree: int) -> list:
    """Basis of the harmonic polynomials of the given degree.

    Each basis element is determined by a monomial p in x_1..x_{d-1}
    times x_d^c, c in {0, 1}:

        h = Σ_j (-1)^j c!/(2j+c)! x_d^{2j+c} Δ'^j p,

    Δ' being the Laplacian in the first d - 1 variables.  In d = 2 these
    are Re (x1 + i x2)^n and Im (x1 + i x2)^n / n.
    """
    if degree < 0:
        raise DunklError("degree must be >= 0")
    out = []
    for c in (0, 1):
        m = degree - c
        if m < 0:
            continue
        for head in _compositions(m, d - 1):
            p = Polynomial.monomial(head + (0,))
            h = Polynomial.zero(d)
            j = 0
            while p:
                e = 2 * j + c
                xd = Polynomial.monomial((0,) * (d - 1) + (e,))
                h = h + p * xd * Fraction((-1) ** j * math.factorial(c), math.factorial(e))
                p = sum((partial_derivative(partial_derivative(p, i), i) for i in range(1, d)),
                        Polynomial.zero(d))
                j += 1
            out.append(h)
    return out


def _compositions(total: int, parts: int):
    if parts == 0:
        if total == 0:
            yield ()
        return
    for first in range(total, -1, -1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def gen_dunkl_harmonic(cfg: RootSystemConfig, degree: int) -> list:
    """V_k applied to a classical harmonic basis; every element has Δ_k = 0 exactly."""
    out = []
    for h in classical_harmonics(cfg.d, degree):
        g = vk_poly(cfg, h)
        if dunkl_laplacian_poly(cfg, g):
            raise AssertionError(f"generated polynomial {g} is not Dunkl-harmonic")
        out.append(g)
    return out


@dataclass(frozen=True)
class FundamentalSolution:
    """g_k(y) = c_k Γ(λ) 2^{λ-1} |y|^{-2λ}."""

    cfg: RootSystemConfig
    constant: float

    @classmethod
    def for_config(cls, cfg: RootSystemConfig) -> "FundamentalSolution":
        lam = cfg.lam
        return cls(cfg, cfg.c_k * gamma_rational(lam) * 2.0 ** float(lam - 1))

    def __call__(self, y) -> float:
        r = float(np.linalg.norm(np.atleast_1d(np.asarray(y, dtype=float))))
        return self.constant * r ** (-2 * float(self.cfg.lam))


def _require_rank1(cfg: RootSystemConfig) -> None:
    if cfg.d != 1:
        raise DunklError("this operation is implemented for d = 1")
    if cfg.k[0] <= Fraction(1, 2):
        raise DunklError("need k > 1/2 so that lambda > 0")


def fundamental_check(cfg: RootSystemConfig, phi: BlackBoxFunction) -> dict:
    """Residual of ∫ g_k Δ_k φ w_k dy = -φ(0) for a compactly supported C² φ on R.

    g_k w_k = C 2^k |y| in d = 1; the integral is taken over (0, ρ) as the
    symmetric pair y, -y.
    """
    _require_rank1(cfg)
    if phi.support_radius is None:
        raise DunklError("phi must declare a support radius")
    k = float(cfg.k[0])
    g = FundamentalSolution.for_config(cfg)
    scale = g.constant * 2.0**k

    def pair(y):
        return (rank1_laplacian(k, phi, y) + rank1_laplacian(k, phi, -y)) * scale * y

    rho = phi.support_radius
    lhs, err = adaptive_quad(pair, 0.0, rho, rel_tol=1e-12, abs_tol=1e-14, limit=400,
                             points=[abs(b) for b in phi.breakpoints])
    phi0 = float(phi(0.0))
    return {"lhs": lhs, "phi0": phi0, "residual": lhs + phi0, "err_est": err}


def _mean_breaks(v: BlackBoxFunction, z: float) -> list:
    radii = [abs(b) for b in v.breakpoints]
    if v.support_radius is not None:
        radii.append(v.support_radius)
    az = abs(z)
    return sorted({abs(az - b) for b in radii} | {az + b for b in radii})


def newton_potential_1d(cfg: RootSystemConfig, v: BlackBoxFunction, z: float,
                        rel_tol: float = 1e-12) -> float:
    """ψ(z) = ∫ g_k(y) τ_z v(y) w_k(y) dy through the radial reduction

        ψ(z) = d_k ∫_0^{ρ+|z|} g_k(t) t^{2λ+1} M_{z,t}(v) dt,   g_k(t) t^{2λ+1} = C t.

    Satisfies Δ_k ψ = -v.
    """
    _require_rank1(cfg)
    if v.support_radius is None:
        raise DunklError("v must declare a support radius")
    z = float(z)
    C_ = FundamentalSolution.for_config(cfg).constant
    upper = v.support_radius + abs(z)
    val, _ = adaptive_quad(
        lambda t: t * spherical_mean_1d(cfg, v, z, t) if t > 0 else 0.0,
        0.0, upper, rel_tol=rel_tol, abs_tol=1e-15, limit=400, points=_mean_breaks(v, z),
    )
    return cfg.d_k * C_ * val


def newton_potential_direct(cfg: RootSystemConfig, v: BlackBoxFunction, z: float) -> float:
    """ψ(z) from the defining integral ∫ g_k(y) τ_z v(y) w_k(y) dy (slow; a cross-check)."""
    _require_rank1(cfg)
    k = float(cfg.k[0])
    scale = FundamentalSolution.for_config(cfg).constant * 2.0**k
    R = v.support_radius + abs(z)
    pts = sorted({0.0} | {s * b for b in _mean_breaks(v, z) for s in (1, -1) if b < R})
    val, _ = adaptive_quad(lambda y: scale * abs(y) * translate_1d(cfg, v, z, y),
                           -R, R, rel_tol=1e-10, abs_tol=1e-13, limit=400, points=pts)
    return val


# ---------------------------------------------------------------------------
# counterexample


@dataclass
class CounterexampleReport:
    config: dict
    U: tuple
    x: float
    r: float
    f: dict
    laplacian_h: dict
    t_grid: list
    harmonicity_grid: list
    h_x: float
    max_abs_h: float
    harmonic_tol: float
    gap_tol: float
    conclusion: dict = field(default_factory=dict)

    @property
    def reproduced(self) -> bool:
        return bool(self.conclusion.get("reproduced"))

    def as_dict(self) -> dict:
        return {
            "config": self.config, "U": list(self.U), "x": self.x, "r": self.r,
            "f": self.f, "laplacian_h": self.laplacian_h, "h_x": self.h_x,
            "t_grid": self.t_grid, "harmonicity_grid": self.harmonicity_grid,
            "max_abs_h": self.max_abs_h, "harmonic_tol": self.harmonic_tol,
            "gap_tol": self.gap_tol, "conclusion": self.conclusion,
        }

    def to_json(self) -> str:
        return dumps(self.as_dict())


def _interval_gap(a: tuple, b: tuple) -> float:
    """Distance between closed intervals (0 if they meet)."""
    return max(a[0] - b[1], b[0] - a[1], 0.0)


def check_counterexample_geometry(U, x: float, r: float) -> float:
    """Validate Ī_{x,r} ⊂ U, Ī_{-x,r} ∩ Ū = ∅, 0 ∉ U; return dist(Ī_{-x,r}, Ū)."""
    u0, u1 = sorted(float(v) for v in U)
    if not (u0 < x - r and x + r < u1):
        raise GeometryError(f"closed interval [{x - r}, {x + r}] is not inside U = ({u0}, {u1})")
    gap = _interval_gap((-x - r, -x + r), (u0, u1))
    if gap <= 0:
        raise GeometryError(
            f"reflected interval [{-x - r}, {-x + r}] meets the closure of U = ({u0}, {u1})"
        )
    if u0 < 0 < u1:
        raise GeometryError("U must not contain 0")
    return gap


class _ChebPiece:
    """Chebyshev interpolant of a scalar function on [a, b]."""

    def __init__(self, fn, a: float, b: float, degree: int):
        self.a, self.b = a, b
        s = np.cos(np.pi * (np.arange(degree + 1) + 0.5) / (degree + 1))
        vals = np.array([fn(0.5 * (a + b) + 0.5 * (b - a) * si) for si in s])
        self.coef = C.chebfit(s, vals, degree)
        self.tail = float(np.sum(np.abs(self.coef[-3:])))

    def __call__(self, y):
        y = np.asarray(y, dtype=float)
        return C.chebval((2 * y - self.a - self.b) / (self.b - self.a), self.coef)


def build_counterexample(cfg: RootSystemConfig, U, x: float, r: float, tol: float = 1e-9, *,
                         t_grid=None, n_harmonic: int = 9, harmonic_tol: float = 1e-3,
                         fd_step: float = 2e-3, interp_degree: int = 24) -> CounterexampleReport:
    """Reproduce a Δ_k-harmonic function on a non-symmetric U that fails the mean value property.

    f is a smooth plateau equal to -1 on Ī_{-x,r} and 0 on U, and
    h(z) = ∫ g_k(y) τ_z f(y) w_k(y) dy, so Δ_k h = -f vanishes on U while
    M_{x,t}(h) - h(x) grows with t.

    ``tol`` bounds the numerical error of the gaps (a gap must exceed
    10 tol).  The gaps are small, of order t⁴ near t = 0, so tol has
    to sit well below the first gap; harmonicity is judged relative to the size of h:
    max |Δ_k h| <= harmonic_tol * max |h| over the grid.
    """
    _require_rank1(cfg)
    x, r = float(x), float(r)
    u0, u1 = sorted(float(v) for v in U)
    dist = check_counterexample_geometry((u0, u1), x, r)
    width = min(r / 4, dist / 2)
    f = plateau(-x - r, -x + r, width, value=-1.0)

    h_cache: dict = {}

    def h(z):
        z = float(z)
        if z not in h_cache:
            h_cache[z] = newton_potential_1d(cfg, f, z)
        return h_cache[z]

    h_bb = BlackBoxFunction(1, h)
    t_grid = [j * r / 5 for j in range(1, 5)] if t_grid is None else list(t_grid)
    t_max = max(t_grid)
    if t_max >= r:
        raise GeometryError("t grid must stay below r")

    # σ_{x,t} lives on Ī_{x,t} ∪ Ī_{-x,t}: interpolate h there and average the interpolant
    pieces = [_ChebPiece(h, x - t_max, x + t_max, interp_degree),
              _ChebPiece(h, -x - t_max, -x + t_max, interp_degree)]
    interp_err = max(p.tail for p in pieces)

    def h_interp(y):
        y = np.asarray(y, dtype=float)
        out = np.zeros_like(y)
        for p in pieces:
            inside = (y >= p.a) & (y <= p.b)
            out = np.where(inside, p(y), out)
        return out

    h_tilde = BlackBoxFunction(1, h_interp, vectorized=True,
                               breakpoints=(x - t_max, x + t_max, -x - t_max, -x + t_max),
                               support_radius=x + t_max)
    hx = h(x)
    rows = []
    for t in t_grid:
        mean, err = spherical_mean_1d(cfg, h_tilde, x, t, full_output=True)
        rows.append({"t": t, "mean_h": mean, "gap": mean - hx, "err_est": err + interp_err})

    span = u1 - u0
    zs = np.linspace(u0 + 0.05 * span, u1 - 0.05 * span, n_harmonic)
    harm = []
    for z in zs:
        res = dunkl_laplacian_numeric(cfg, h_bb, [z], h=fd_step)
        harm.append({"z": float(z), "residual": res, "h": h(z)})

    max_abs_h = max(abs(row["h"]) for row in harm)
    max_res = max(abs(row["residual"]) for row in harm)
    gaps = [row["gap"] for row in rows]
    harmonic_ok = bool(max_res <= harmonic_tol * max_abs_h)
    gap_ok = bool(min(gaps) > 10 * tol and max(row["err_est"] for row in rows) <= tol)
    increasing = bool(all(b > a for a, b in zip(gaps, gaps[1:])))
    conclusion = {
        "harmonic_on_U": harmonic_ok,
        "max_abs_residual": max_res,
        "min_gap": min(gaps),
        "gaps_positive": gap_ok,
        "gaps_increasing": increasing,
        "reproduced": bool(harmonic_ok and gap_ok and increasing),
    }
    return CounterexampleReport(
        config={"d": 1, "k": [str(v) for v in cfg.k]},
        U=(u0, u1), x=x, r=r,
        f={"kind": "plateau", "interval": [-x - r, -x + r], "value": -1.0, "width": width},
        laplacian_h={"kind": "plateau", "interval": [-x - r, -x + r], "value": 1.0, "width": width},
        t_grid=rows,
        harmonicity_grid=[{"z": row["z"], "residual": row["residual"]} for row in harm],
        h_x=hx, max_abs_h=max_abs_h, harmonic_tol=harmonic_tol, gap_tol=tol,
        conclusion=conclusion,
    )
