"""
Fundamental solution and potentials in rank one
================================================

g_k(y) = c_k Gamma(lambda) 2^(lambda-1) |y|^(-2 lambda) inverts the Dunkl
Laplacian: the integral of g_k Lap_k phi against w_k is -phi(0), and the
potential psi = integral of g_k tau_z v satisfies Lap_k psi = -v.
"""

from fractions import Fraction

import numpy as np

from dunklmvp import (BlackBoxFunction, FundamentalSolution, bump, dunkl_laplacian_numeric,
                      fundamental_check, make_config, newton_potential_1d)
from dunklmvp.harmonic import newton_potential_direct

for k in (Fraction(1), Fraction(3, 2)):
    cfg = make_config(1, [k])
    g = FundamentalSolution.for_config(cfg)
    print(f"k = {k}: g_k(y) = {g.constant:.15f} |y|^{-2 * float(cfg.lam):g}")
    for phi in (bump(0.0, 1.0), bump(0.3, 0.8, 2.0), bump(1.5, 0.5)):
        out = fundamental_check(cfg, phi)
        print(f"    lhs = {out['lhs']: .15f}  -phi(0) = {-out['phi0']: .15f}")

cfg = make_config(1, [1])
v = bump(0.5, 0.7)
for z in (-0.9, 0.4, 1.6):
    print(f"psi({z}) radial = {newton_potential_1d(cfg, v, z):.12f}  direct = {newton_potential_direct(cfg, v, z):.12f}")

psi = BlackBoxFunction(1, lambda z: newton_potential_1d(cfg, v, z))
for z in (0.3, 0.7):
    print(f"Lap_k psi({z}) = {dunkl_laplacian_numeric(cfg, psi, [z], h=2e-3):.6f}   -v({z}) = {-float(v(z)):.6f}")
