"""
Dunkl operators and the intertwining operator
==============================================

Everything here is exact: polynomials carry rational coefficients and the
multiplicities are rationals, so the identities below hold with ``==``.
"""

from fractions import Fraction

from dunklmvp import dunkl_laplacian_poly, dunkl_op, make_config, parse_poly, vk_inverse_poly, vk_poly
from dunklmvp.polyalg import laplacian, partial_derivative

# the root system Z_2^2 with one multiplicity per coordinate
cfg = make_config(2, [Fraction(1, 2), Fraction(3, 2)])
print("gamma =", cfg.gamma, " lambda =", cfg.lam, " d_k =", cfg.d_k)

p = parse_poly("3/2 x1^2 x2 + -1 x2^3 + 1 x1", 2)
print("p          =", p)

# T_i = d/dx_i plus a reflection difference term; the operators commute
t1p = dunkl_op(cfg, 1, p)
t2p = dunkl_op(cfg, 2, p)
print("T1 p       =", t1p)
print("T2 p       =", t2p)
print("T1 T2 p == T2 T1 p:", dunkl_op(cfg, 1, t2p) == dunkl_op(cfg, 2, t1p))

# V_k scales each monomial and turns partial derivatives into Dunkl operators
vp = vk_poly(cfg, p)
print("V_k p      =", vp)
print("T1 V_k p == V_k d1 p:", dunkl_op(cfg, 1, vp) == vk_poly(cfg, partial_derivative(p, 1)))
print("Lap_k V_k p == V_k Lap p:", dunkl_laplacian_poly(cfg, vp) == vk_poly(cfg, laplacian(p)))
print("V_k^-1 V_k p == p:", vk_inverse_poly(cfg, vp) == p)

# in rank one, Lap_k x^2 = 2 + 4k
c1 = make_config(1, [1])
print("rank one, k = 1: Lap_k x^2 =", dunkl_laplacian_poly(c1, parse_poly("1 x1^2", 1)))
