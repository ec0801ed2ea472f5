"""
Spherical means and the mean value property
===========================================

M_{x,r}(f) averages the translate of f over the weighted sphere.  On a
W-invariant domain, f is Dunkl-harmonic exactly when M_{x,r}(f) = f(x) for
every admissible ball.  We check both directions on samples.
"""

from fractions import Fraction

from dunklmvp import (BlackBoxFunction, DomainSpec, bump, gen_dunkl_harmonic, make_config,
                      parse_poly, spherical_mean_numeric, spherical_mean_poly, verify_mvp)

cfg = make_config(2, [1, 1])

# exact means of polynomials are rational numbers
norm2 = parse_poly("1 x1^2 + 1 x2^2", 2)
print("M_{(1,0),1}(|y|^2) =", spherical_mean_poly(cfg, norm2, [1, 0], 1), "(|x|^2 + r^2)")

# Dunkl-harmonic polynomials from the classical ones through V_k
basis = gen_dunkl_harmonic(cfg, 3)
print("harmonic basis of degree 3:", [str(h) for h in basis])

ball = DomainSpec.ball(2.0, 2)
for h in basis:
    exact = verify_mvp(cfg, h, ball, samples=50, seed=1)
    numeric = verify_mvp(cfg, h, ball, samples=10, seed=1, path="numeric")
    print(f"  {str(h):32s} exact max dev {exact.max_deviation}  numeric max dev {numeric.max_deviation:.2e}")

# the converse: y^2 is not harmonic and the deviation is exactly r^2
c1 = make_config(1, [1])
rep = verify_mvp(c1, parse_poly("1 x1^2", 1), DomainSpec.ball(1.0, 1), samples=5, seed=2)
for rec in rep:
    print(f"  r = {rec.r}, deviation = {rec.deviation}, r^2 = {rec.r ** 2}")

# for continuous f the mean tends to f(x) as r shrinks
f = bump(0.5, 1.0)
for m in (2, 8, 32):
    dev = spherical_mean_numeric(c1, f, [0.7], 1 / m) - float(f(0.7))
    print(f"  r = 1/{m}: M - f(x) = {dev:.3e}")
