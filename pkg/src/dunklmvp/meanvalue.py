"""Spherical means M_{x,r}, the mean value property and its companions.

M_{x,r}(f) = (1/d_k) ∫_{S(0,1)} τ_x f(r y) w_k(y) dσ(y) is computed

* exactly for polynomials: the translate u(x, y) is averaged over the
  weighted sphere monomial by monomial (``sphere_moment``);
* numerically for black-box functions: through the explicit rank-one
  kernel in d = 1, and through a tensor Chebyshev interpolant followed by
  the exact path in d = 2, 3.  The measure σ^k_{x,r} has mass one and lives
  in the union of the balls B(wx, r), so the interpolation sup-error on that
  union bounds the error of the mean.
"""

from __future__ import annotations

import math
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np
from numpy.polynomial import chebyshev as C
from scipy import integrate

from .core import BlackBoxFunction, RootSystemConfig, dunkl_laplacian_poly, pochhammer, weight
from .errors import DunklError, GeometryError
from .functions import RadialProfile, indicator
from .intertwining import sphere_moment, vk_monomial_factor
from .polyalg import Polynomial, shift_binomial
from .quadrature import adaptive_quad
from .rank1 import spherical_mean_1d, translate_1d
from .serialize import dumps_lines

# ---------------------------------------------------------------------------
# exact path


@lru_cache(maxsize=4096)
def _monomial_mean_table(k: tuple, lam: Fraction, nu: tuple) -> tuple:
    """Terms ``(a, |b|, factor)`` with M_{x,r}(y^ν) = Σ factor x^a r^{|b|}."""
    inv = 1 / vk_monomial_factor(k, nu)
    out = []
    for a, b, binom in shift_binomial(nu):
        if any(e % 2 for e in b):
            continue
        m = Fraction(1)
        for ki, e in zip(k, b):
            m *= pochhammer(ki + Fraction(1, 2), e // 2)
        m /= pochhammer(lam + 1, sum(b) // 2)
        out.append((a, sum(b), inv * binom * vk_monomial_factor(k, a) * vk_monomial_factor(k, b) * m))
    return tuple(out)


def _is_exact(v) -> bool:
    return isinstance(v, (int, Fraction))


def mean_in_radius(cfg: RootSystemConfig, p: Polynomial, x) -> list:
    """Coefficients ``c_j`` with M_{x,r}(p) = Σ_j c_j r^j (exact for rational x)."""
    if p.dim != cfg.d:
        raise DunklError(f"polynomial dimension {p.dim} != config dimension {cfg.d}")
    x = list(np.atleast_1d(x)) if not isinstance(x, (list, tuple)) else list(x)
    if len(x) != cfg.d:
        raise DunklError(f"point has {len(x)} coordinates, config has d={cfg.d}")
    exact = all(_is_exact(v) for v in x)
    if not exact:
        x = [float(v) for v in x]
    coeffs = [Fraction(0) if exact else 0.0] * (max(p.degree, 0) + 1)
    for nu, c in p.items():
        for a, bdeg, fac in _monomial_mean_table(cfg.k, cfg.lam, nu):
            term = c * fac if exact else float(c) * float(fac)
            for xi, e in zip(x, a):
                if e:
                    term *= xi**e
            coeffs[bdeg] += term
    return coeffs


def _horner(coeffs, r):
    out = coeffs[-1] * 0
    for c in reversed(coeffs):
        out = out * r + c
    return out


def spherical_mean_poly(cfg: RootSystemConfig, p: Polynomial, x, r):
    """Exact M_{x,r}(p); a ``Fraction`` when x and r are rational."""
    if r <= 0:
        raise DunklError("radius must be positive")
    coeffs = mean_in_radius(cfg, p, x)
    if not _is_exact(r):
        coeffs = [float(c) for c in coeffs]
        r = float(r)
    return _horner(coeffs, r)


# ---------------------------------------------------------------------------
# numeric path


def chebyshev_interpolant(f: BlackBoxFunction, half_widths: Sequence[float], degree: int):
    """Tensor Chebyshev interpolant of ``f`` on the box Π[-R_i, R_i].

    Returns ``(power_coeffs, tail)``: an array indexed by exponents of the
    monomial coefficients in the original variables, and a sup-error
    estimate from the trailing Chebyshev coefficients.
    """
    d = len(half_widths)
    n = degree + 1
    s = np.cos(np.pi * (np.arange(n) + 0.5) / n)
    grids = np.meshgrid(*[R * s for R in half_widths], indexing="ij")
    pts = np.stack([g.ravel() for g in grids])
    if f.vectorized:
        vals = np.asarray(f(pts), dtype=float).reshape((n,) * d)
    else:
        vals = np.array([f(pts[:, j]) for j in range(pts.shape[1])], dtype=float).reshape((n,) * d)
    vinv = np.linalg.inv(C.chebvander(s, degree))
    coef = vals
    for ax in range(d):
        coef = np.moveaxis(np.tensordot(vinv, coef, axes=([1], [ax])), 0, ax)
    idx = np.indices(coef.shape)
    tail_mask = np.zeros(coef.shape, bool)
    for ax in range(d):
        tail_mask |= idx[ax] >= degree - 1
    tail = float(np.sum(np.abs(coef[tail_mask])))
    # Chebyshev -> power basis on [-1, 1], then rescale each axis
    conv = np.zeros((n, n))
    for m in range(n):
        e = np.zeros(n)
        e[m] = 1.0
        conv[: m + 1, m] = C.cheb2poly(e)
    power = coef
    for ax, R in enumerate(half_widths):
        power = np.moveaxis(np.tensordot(conv, power, axes=([1], [ax])), 0, ax)
        shape = [1] * d
        shape[ax] = n
        power = power / (R ** np.arange(n)).reshape(shape)
    return power, tail


def spherical_mean_numeric(cfg: RootSystemConfig, f: BlackBoxFunction, x, r: float, *,
                           approx_degree: int = 8, tol: float = 1e-8, full_output: bool = False):
    """M_{x,r}(f) for a black-box ``f``; with ``full_output`` also the error estimate."""
    if r <= 0:
        raise DunklError("radius must be positive")
    x = np.atleast_1d(np.asarray(x, dtype=float))
    if cfg.d == 1:
        val, err = spherical_mean_1d(cfg, f, float(x[0]), float(r), full_output=True)
        return (val, err) if full_output else val
    if cfg.d > 3:
        raise DunklError("numeric spherical means are available for d <= 3")
    half = [abs(float(v)) + float(r) for v in x]
    power, tail = chebyshev_interpolant(f, half, approx_degree)
    if tail > tol:
        raise DunklError(
            f"Chebyshev tail {tail:.3g} exceeds tolerance {tol:g}; increase approx_degree"
        )
    xs = [float(v) for v in x]
    total = 0.0
    for nu in zip(*np.nonzero(power)):
        c = power[nu]
        nu = tuple(int(e) for e in nu)
        for a, bdeg, fac in _monomial_mean_table(cfg.k, cfg.lam, nu):
            term = c * float(fac) * float(r) ** bdeg
            for xi, e in zip(xs, a):
                if e:
                    term *= xi**e
            total += term
    err = tail + 1e-15 * max(1.0, float(np.sum(np.abs(power))))
    return (total, err) if full_output else total


# ---------------------------------------------------------------------------
# derivative identity


def ddt_identity_residual(cfg: RootSystemConfig, f: Polynomial, x, t: float, h: float = 1e-4):
    """Compare d/dt M_{x,t}(f) with t^{-(2λ+1)} ∫_0^t s^{2λ+1} M_{x,s}(Δ_k f) ds.

    Returns ``(lhs, rhs, residual)``.
    """
    if not t > h > 0:
        raise DunklError("need t > h > 0")
    mean = [float(c) for c in mean_in_radius(cfg, f, x)]
    lhs = (_horner(mean, t + h) - _horner(mean, t - h)) / (2 * h)
    lap_mean = [float(c) for c in mean_in_radius(cfg, dunkl_laplacian_poly(cfg, f), x)]
    power = 2 * float(cfg.lam) + 1
    integral, _ = adaptive_quad(lambda s: s**power * _horner(lap_mean, s), 0.0, t,
                                rel_tol=1e-13, abs_tol=1e-15)
    rhs = integral / t**power
    return lhs, rhs, lhs - rhs


# ---------------------------------------------------------------------------
# mollifier


def _profile_unnormalized(s):
    s = np.asarray(s, dtype=float)
    return np.where(s > 0, np.exp(-1 / np.where(s > 0, s, 1.0)), 0.0)


@dataclass(frozen=True)
class MollifierSpec:
    """φ(s) = c e^{-1/s} (s > 0) and φ_n(x) = n^{2λ+2} φ(1 - n²|x|²)."""

    cfg: RootSystemConfig
    n: int
    c: float

    @classmethod
    def build(cls, cfg: RootSystemConfig, n: int) -> "MollifierSpec":
        if n < 1:
            raise DunklError("mollifier index must be >= 1")
        power = 2 * float(cfg.lam) + 1
        integral, _ = adaptive_quad(lambda t: _profile_unnormalized(1 - t * t) * t**power,
                                    0.0, 1.0, rel_tol=1e-14, abs_tol=1e-16)
        return cls(cfg, n, 1.0 / (cfg.d_k * integral))

    def profile(self, s):
        return self.c * _profile_unnormalized(s)

    def phi_n(self, t):
        n = self.n
        return n ** (2 * float(self.cfg.lam) + 2) * self.profile(1 - n * n * np.asarray(t, float) ** 2)


def _mean_oracle(cfg: RootSystemConfig, f, x) -> Callable[[float], float]:
    if isinstance(f, Polynomial):
        coeffs = [float(c) for c in mean_in_radius(cfg, f, x)]
        return lambda t: _horner(coeffs, t)
    if isinstance(f, BlackBoxFunction):
        if cfg.d != 1:
            raise DunklError("black-box mollification uses the rank-one path (d = 1)")
        x0 = float(np.atleast_1d(x)[0])
        return lambda t: spherical_mean_1d(cfg, f, x0, t)
    if callable(f):
        return f
    raise TypeError("f must be a Polynomial, a BlackBoxFunction or a callable t -> M_{x,t}(f)")


def mollify(cfg: RootSystemConfig, f, n: int, x, *, domain=None) -> float:
    """f_n(x) = d_k ∫_0^{1/n} φ_n(t) t^{2λ+1} M_{x,t}(f) dt.

    ``f`` is a polynomial (exact means), a d = 1 black box (rank-one means)
    or directly a callable ``t -> M_{x,t}(f)``.
    """
    if domain is not None and not domain.contains_closed_ball(x, 1.0 / n):
        raise GeometryError(f"closed ball B({x}, 1/{n}) is not inside the domain")
    spec = MollifierSpec.build(cfg, n)
    mean = _mean_oracle(cfg, f, x)
    power = 2 * float(cfg.lam) + 1
    val, _ = adaptive_quad(lambda t: float(spec.phi_n(t)) * t**power * mean(t),
                           0.0, 1.0 / n, rel_tol=1e-13, abs_tol=1e-15)
    return cfg.d_k * val


# ---------------------------------------------------------------------------
# radial lemma


def _radial_integral(cfg, phi: RadialProfile, power: float) -> float:
    upper = phi.support_radius if phi.support_radius is not None else np.inf
    val, _ = adaptive_quad(lambda t: float(phi(t)) * t**power, 0.0, upper,
                           rel_tol=1e-13, abs_tol=1e-15)
    return val


def radial_lemma_residual(cfg: RootSystemConfig, phi: RadialProfile, x, region=None) -> dict:
    """Both sides of ∫_A τ_{-x}φ(y) w_k(y) dy = d_k ∫_0^∞ φ(t) t^{2λ+1} σ^k_{x,t}(A) dt.

    ``region=None`` means A = R^d (σ has mass one; the left side is
    computed by direct integration of φ(|y|) w_k(y), independent of d_k).
    ``region=(a, b)`` is an interval in d = 1; then σ^k_{x,t}(A) is the
    rank-one mean of the indicator of A.
    """
    power = 2 * float(cfg.lam) + 1
    if region is None:
        rhs = cfg.d_k * _radial_integral(cfg, phi, power)
        lhs = _weighted_total_mass(cfg, phi)
        return {"lhs": lhs, "rhs": rhs, "residual": lhs - rhs}
    if cfg.d != 1:
        raise DunklError("interval regions are supported in d = 1 only")
    a, b = sorted(float(v) for v in region)
    x0 = float(np.atleast_1d(x)[0])
    f = phi.as_function(1)
    k = float(cfg.k[0])
    ind = indicator(a, b)
    lhs, _ = adaptive_quad(
        lambda y: translate_1d(cfg, f, -x0, y) * 2**k * abs(y) ** (2 * k) if y != 0 else 0.0,
        a, b, rel_tol=1e-11, abs_tol=1e-14,
        points=[p for p in (0.0, x0, -x0) if a < p < b],
    )
    upper = phi.support_radius if phi.support_radius is not None else np.inf
    rhs, _ = adaptive_quad(
        lambda t: float(phi(t)) * t**power * spherical_mean_1d(cfg, ind, x0, t) if t > 0 else 0.0,
        0.0, upper, rel_tol=1e-11, abs_tol=1e-14,
        points=None if upper == np.inf else [abs(abs(x0) - a), abs(abs(x0) - b),
                                             abs(x0) + abs(a), abs(x0) + abs(b)],
    )
    rhs *= cfg.d_k
    return {"lhs": lhs, "rhs": rhs, "residual": lhs - rhs}


def _weighted_total_mass(cfg: RootSystemConfig, phi: RadialProfile) -> float:
    """∫_{R^d} φ(|y|) w_k(y) dy by Cartesian quadrature (d <= 2) or spherical coordinates (d = 3)."""
    upper = phi.support_radius if phi.support_radius is not None else np.inf
    k = [float(v) for v in cfg.k]
    if cfg.d == 1:
        val, _ = adaptive_quad(lambda y: float(phi(y)) * 2 ** k[0] * y ** (2 * k[0]),
                               0.0, upper, rel_tol=1e-13, abs_tol=1e-15)
        return 2 * val
    if cfg.d == 2:
        # the integrand is even in each coordinate: integrate over the positive quadrant
        def inner(y2):
            top = np.sqrt(max(upper**2 - y2**2, 0.0)) if upper != np.inf else np.inf
            v, _ = adaptive_quad(
                lambda y1: float(phi(math.hypot(y1, y2))) * float(weight(cfg, [y1, y2])),
                0.0, top, rel_tol=1e-13, abs_tol=1e-16)
            return v

        val, _ = adaptive_quad(inner, 0.0, upper, rel_tol=1e-12, abs_tol=1e-15)
        return 4 * val
    if cfg.d == 3:
        radial = _radial_integral(cfg, phi, 2 + 2 * float(cfg.gamma))
        ang, _ = integrate.dblquad(
            lambda th, ph: float(weight(cfg, [math.sin(ph) * math.cos(th),
                                             math.sin(ph) * math.sin(th), math.cos(ph)]))
            * math.sin(ph),
            0.0, math.pi, 0.0, 2 * math.pi, epsabs=1e-14, epsrel=1e-12)
        return radial * ang
    raise DunklError("total-mass check implemented for d <= 3")


# ---------------------------------------------------------------------------
# domains


@dataclass(frozen=True)
class DomainSpec:
    """Open region of R^d.

    kinds: ``ball`` (radius, center), ``annulus`` (inner, outer radius,
    centred at 0), ``intervals`` (d = 1 union of disjoint open intervals),
    ``halfline`` (d = 1, the open half-line (a, ∞)).
    """

    kind: str
    dim: int
    params: tuple

    # constructors

    @classmethod
    def ball(cls, radius: float, d: int, center=None) -> "DomainSpec":
        center = tuple(float(c) for c in (center if center is not None else [0.0] * d))
        if len(center) != d or radius <= 0:
            raise GeometryError("bad ball parameters")
        return cls("ball", d, (float(radius), center))

    @classmethod
    def annulus(cls, inner: float, outer: float, d: int) -> "DomainSpec":
        if not 0 <= inner < outer:
            raise GeometryError("annulus needs 0 <= inner < outer")
        return cls("annulus", d, (float(inner), float(outer)))

    @classmethod
    def intervals(cls, pieces) -> "DomainSpec":
        pieces = tuple(sorted((float(a), float(b)) for a, b in pieces))
        for (a, b), (c, _) in zip(pieces, pieces[1:]):
            if b > c:
                raise GeometryError("intervals must be disjoint")
        if any(a >= b for a, b in pieces):
            raise GeometryError("empty interval")
        return cls("intervals", 1, pieces)

    @classmethod
    def halfline(cls, a: float) -> "DomainSpec":
        return cls("halfline", 1, (float(a),))

    # geometry

    @property
    def w_invariant(self) -> bool:
        if self.kind == "ball":
            return all(c == 0 for c in self.params[1])
        if self.kind == "annulus":
            return True
        if self.kind == "intervals":
            mirrored = tuple(sorted((-b, -a) for a, b in self.params))
            return mirrored == self.params
        return False

    def max_radius(self, x) -> float:
        """Supremum of r with B̄(x, r) ⊂ D (0 when x is outside D)."""
        x = np.atleast_1d(np.asarray(x, dtype=float))
        if self.kind == "ball":
            R, c = self.params
            return max(R - float(np.linalg.norm(x - np.asarray(c))), 0.0)
        if self.kind == "annulus":
            inner, outer = self.params
            n = float(np.linalg.norm(x))
            return max(min(n - inner, outer - n), 0.0)
        if self.kind == "intervals":
            for a, b in self.params:
                if a < x[0] < b:
                    return min(x[0] - a, b - x[0])
            return 0.0
        return max(float(x[0]) - self.params[0], 0.0)

    def contains(self, x) -> bool:
        return self.max_radius(x) > 0

    def contains_closed_ball(self, x, r) -> bool:
        return float(r) < self.max_radius(x)

    def bounding_box(self):
        if self.kind == "ball":
            R, c = self.params
            return [(ci - R, ci + R) for ci in c]
        if self.kind == "annulus":
            return [(-self.params[1], self.params[1])] * self.dim
        if self.kind == "intervals":
            return [(self.params[0][0], self.params[-1][1])]
        return [(self.params[0], self.params[0] + 10.0)]

    def describe(self) -> dict:
        return {"kind": self.kind, "dim": self.dim, "params": _plain(self.params),
                "w_invariant": self.w_invariant}


def _plain(v):
    if isinstance(v, tuple):
        return [_plain(u) for u in v]
    return v


def parse_domain(text: str, d: int) -> DomainSpec:
    """``ball:R``, ``ball:R:c1,c2``, ``annulus:R1:R2``, ``intervals:a,b;c,e``, ``halfline:a``."""
    kind, _, rest = text.partition(":")
    try:
        if kind == "ball":
            parts = rest.split(":")
            center = [float(v) for v in parts[1].split(",")] if len(parts) > 1 else None
            return DomainSpec.ball(float(parts[0]), d, center)
        if kind == "annulus":
            inner, outer = rest.split(":")
            return DomainSpec.annulus(float(inner), float(outer), d)
        if kind == "intervals":
            if d != 1:
                raise GeometryError("interval domains need d = 1")
            pieces = [tuple(float(v) for v in seg.split(",")) for seg in rest.split(";")]
            return DomainSpec.intervals(pieces)
        if kind == "halfline":
            if d != 1:
                raise GeometryError("half-line domains need d = 1")
            return DomainSpec.halfline(float(rest))
    except (ValueError, IndexError) as exc:
        if isinstance(exc, GeometryError):
            raise
        raise GeometryError(f"malformed domain {text!r}: {exc}") from None
    raise GeometryError(f"unknown domain kind {kind!r}")


# ---------------------------------------------------------------------------
# mean value property verifier


@dataclass
class MeanValueRecord:
    x: list
    r: object
    mean: object
    fx: object
    deviation: object
    err_est: float
    passed: bool

    def as_dict(self) -> dict:
        return {"x": [float(v) for v in self.x], "r": float(self.r), "mean": float(self.mean),
                "fx": float(self.fx), "deviation": float(self.deviation),
                "err_est": float(self.err_est), "pass": self.passed}


@dataclass
class MeanValueReport:
    records: list
    tol: float
    path: str
    domain: dict = field(default_factory=dict)

    @property
    def max_deviation(self) -> float:
        return max((abs(float(r.deviation)) for r in self.records), default=0.0)

    @property
    def n_pass(self) -> int:
        return sum(r.passed for r in self.records)

    @property
    def n_fail(self) -> int:
        return len(self.records) - self.n_pass

    @property
    def all_pass(self) -> bool:
        return self.n_fail == 0

    def summary(self) -> dict:
        return {"summary": True, "samples": len(self.records), "passed": self.n_pass,
                "failed": self.n_fail, "max_deviation": self.max_deviation,
                "tol": self.tol, "path": self.path, "domain": self.domain}

    def to_jsonl(self) -> str:
        return dumps_lines([r.as_dict() for r in self] + [self.summary()])

    def __iter__(self):
        return iter(self.records)

    def __len__(self):
        return len(self.records)


def sample_admissible(domain: DomainSpec, samples: int, seed: int, *, min_coord: float = 1e-3,
                      min_radius: float = 1e-3, max_tries: int = 1000):
    """Seeded (x, r) pairs with B̄(x, r) ⊂ D, rational coordinates, |x_i| > min_coord."""
    rng = np.random.default_rng(seed)
    box = domain.bounding_box()
    out = []
    tries = 0
    while len(out) < samples:
        tries += 1
        if tries > max_tries * samples:
            break
        x = np.array([rng.uniform(lo, hi) for lo, hi in box])
        xq = [Fraction(v).limit_denominator(1 << 20) for v in x]
        xf = [float(v) for v in xq]
        if any(abs(v) <= min_coord for v in xf):
            continue
        rmax = domain.max_radius(xf)
        if rmax <= 2 * min_radius:
            continue
        r = rng.uniform(min_radius, rmax * (1 - 1e-6))
        rq = Fraction(r).limit_denominator(1 << 20)
        if not (min_radius <= rq and domain.contains_closed_ball(xf, float(rq))):
            continue
        out.append((xq, rq))
    if not out:
        raise GeometryError("no admissible (x, r) pairs found in the domain")
    return out


def verify_mvp(cfg: RootSystemConfig, f, domain: DomainSpec, samples: int = 100,
               tol: float = 1e-8, seed: int = 0, *, path: str = "auto",
               approx_degree: int = 8, jobs: int = 1) -> MeanValueReport:
    """Check M_{x,r}(f) = f(x) on seeded admissible pairs of ``domain``.

    ``path`` is ``"exact"`` (polynomials only), ``"numeric"`` or ``"auto"``.
    A record passes when ``|deviation| <= tol + err_est``.
    """
    if samples < 1:
        raise DunklError("samples must be >= 1")
    if domain.dim != cfg.d:
        raise DunklError("domain and config dimensions differ")
    if not domain.w_invariant:
        warnings.warn("domain is not W-invariant; the mean value characterisation need not hold",
                      stacklevel=2)
    if path == "auto":
        path = "exact" if isinstance(f, Polynomial) else "numeric"
    if path == "exact" and not isinstance(f, Polynomial):
        raise DunklError("the exact path needs a Polynomial")
    fb = BlackBoxFunction.from_polynomial(f) if (path == "numeric" and isinstance(f, Polynomial)) else f
    pairs = sample_admissible(domain, samples, seed)

    def one(pair):
        xq, rq = pair
        if path == "exact":
            mean = spherical_mean_poly(cfg, f, xq, rq)
            fx = f(xq)
            err = 0.0
        else:
            xf = [float(v) for v in xq]
            mean, err = spherical_mean_numeric(cfg, fb, xf, float(rq), approx_degree=approx_degree,
                                               full_output=True)
            fx = float(fb(xf[0]) if cfg.d == 1 else fb(np.array(xf)))
        dev = mean - fx
        return MeanValueRecord(list(xq), rq, mean, fx, dev, err, abs(float(dev)) <= tol + err)

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(one, pairs))
    else:
        records = [one(p) for p in pairs]
    return MeanValueReport(records, tol, path, domain.describe())
