"""Quadrature helpers shared by the numeric paths."""

from __future__ import annotations

import warnings
from functools import lru_cache

import numpy as np
from scipy import integrate
from scipy.special import roots_jacobi, roots_legendre

from .errors import QuadratureError


def adaptive_quad(func, a, b, rel_tol=1e-10, abs_tol=1e-13, limit=200, points=None):
    """Adaptive Gauss-Kronrod integration; raises instead of warning on failure.

    Returns ``(value, error_estimate)``.
    """
    if a == b:
        return 0.0, 0.0
    if points is not None:
        points = sorted(p for p in points if a < p < b) or None
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", integrate.IntegrationWarning)
        out = integrate.quad(
            func, a, b, epsabs=abs_tol, epsrel=rel_tol, limit=limit,
            points=points, full_output=1,
        )
    value, err = out[0], out[1]
    # a fourth element is quad's failure message
    if len(out) > 3 and err > max(abs_tol, rel_tol * abs(value)) * 10:
        raise QuadratureError(f"adaptive quadrature did not converge on [{a}, {b}]", err)
    return value, err


@lru_cache(maxsize=256)
def _gauss_jacobi(n: int, alpha: float, beta: float):
    t, w = roots_jacobi(n, alpha, beta)
    return t, w


@lru_cache(maxsize=64)
def _gauss_legendre(n: int):
    return roots_legendre(n)


def jacobi_panel_rule(breaks, n: int, left_exp: float, right_exp: float):
    """Composite rule on ``[-1, 1]`` for the weight ``(1+t)^left_exp (1-t)^right_exp``.

    ``breaks`` are interior break points.  The end panels carry the
    singular factor of their own endpoint through Gauss-Jacobi nodes; the
    factor belonging to the far endpoint is smooth on the panel and is
    folded into the weights.  Interior panels use Gauss-Legendre.

    Returns ``(nodes, weights)`` with all weights positive.
    """
    edges = np.concatenate(([-1.0], np.sort(np.asarray(breaks, float)), [1.0]))
    edges = edges[np.concatenate(([True], np.diff(edges) > 1e-15))]
    if edges[-1] != 1.0:
        edges[-1] = 1.0
    nodes, weights = [], []
    m = len(edges) - 1
    for j in range(m):
        a, b = edges[j], edges[j + 1]
        half = 0.5 * (b - a)
        if m == 1:
            s, w = _gauss_jacobi(n, right_exp, left_exp)
            t = s
            wt = w
        elif j == 0:
            # (1+t)^left on [a, b] with a = -1
            s, w = _gauss_jacobi(n, 0.0, left_exp)
            t = a + half * (s + 1.0)
            wt = w * half ** (1.0 + left_exp) * (1.0 - t) ** right_exp
        elif j == m - 1:
            s, w = _gauss_jacobi(n, right_exp, 0.0)
            t = a + half * (s + 1.0)
            wt = w * half ** (1.0 + right_exp) * (1.0 + t) ** left_exp
        else:
            s, w = _gauss_legendre(n)
            t = a + half * (s + 1.0)
            wt = w * half * (1.0 + t) ** left_exp * (1.0 - t) ** right_exp
        nodes.append(t)
        weights.append(wt)
    return np.concatenate(nodes), np.concatenate(weights)


def gauss_legendre(a: float, b: float, n: int):
    s, w = _gauss_legendre(n)
    half = 0.5 * (b - a)
    return a + half * (s + 1.0), w * half
