"""
Mollifiers and the radial integration lemma
===========================================

Integrating a radial profile against the translate reduces to a
one-dimensional integral of spherical means.  The mollifier built from
this reduction reproduces harmonic functions exactly.
"""

from dunklmvp import (Polynomial, bump_profile, gaussian_profile, gen_dunkl_harmonic, make_config,
                      mollify, parse_poly, radial_lemma_residual)

c1 = make_config(1, [1])
out = radial_lemma_residual(c1, gaussian_profile(), [0.7])
print("gaussian total mass, k = 1:", out["lhs"], "vs", out["rhs"], "(2 sqrt(2 pi))")

# a profile supported in [0, 1/2] never reaches the interval (0.3, 1) from x = 2
out = radial_lemma_residual(c1, bump_profile(0.5), [2.0], region=(0.3, 1.0))
print("disjoint support:", out)

out = radial_lemma_residual(c1, bump_profile(1.0), [0.8], region=(0.2, 1.5))
print("overlapping interval: residual", out["residual"])

cfg = make_config(2, [1, 1])
x = [0.6, -0.4]
for f in [Polynomial.constant(2, 1)] + gen_dunkl_harmonic(cfg, 2):
    vals = [mollify(cfg, f, n, x) for n in (2, 4, 8)]
    print(f"  f = {str(f):26s} f(x) = {float(f(x)): .12f}  f_n(x) = {', '.join(f'{v: .12f}' for v in vals)}")

# a non-harmonic function is smoothed, not reproduced
print("  f = y^2 at 0: f_2(0) =", mollify(c1, parse_poly("1 x1^2", 1), 2, [0]))
