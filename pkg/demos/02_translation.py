"""
Dunkl translation and the Dunkl kernel
======================================

For polynomials the translate u(x, y) = tau_x p(y) is computed exactly.
In rank one there is also an integral kernel, which works for any bounded
function; the two must agree on polynomials.
"""

from fractions import Fraction

import numpy as np

from dunklmvp import (BlackBoxFunction, bump, dunkl_kernel, make_config, parse_poly, translate_1d,
                      translate_poly)

cfg = make_config(1, [1])

for text in ("1 x1", "1 x1^2", "1 x1^3"):
    p = parse_poly(text, 1)
    # variables: x1 is x and x2 is y
    print(f"tau_x ({text}) (y) =", translate_poly(cfg, p))

# the kernel route versus the exact route at a few points
p = parse_poly("1/2 x1^6 + -3 x1^3 + 2 x1 + 1", 1)
u = translate_poly(cfg, p)
f = BlackBoxFunction.from_polynomial(p)
rng = np.random.default_rng(0)
worst = 0.0
for x, y in rng.uniform(-3, 3, size=(20, 2)):
    worst = max(worst, abs(translate_1d(cfg, f, x, y) - float(u([Fraction(x), Fraction(y)]))))
print("max |kernel - exact| over 20 points:", worst)

# translation of a smooth bump: symmetric in x and y
g = bump(0.5, 1.0)
print("tau_0.3 g(1.1) =", translate_1d(cfg, g, 0.3, 1.1))
print("tau_1.1 g(0.3) =", translate_1d(cfg, g, 1.1, 0.3))

# the kernel generalises exp(xy); for k = 1, E_k(1, 1) = cosh(1)
print("E_1(1, 1) =", dunkl_kernel(cfg, [1.0], [1.0]), " cosh(1) =", np.cosh(1.0))
print("E_1(0, 2) =", dunkl_kernel(cfg, [0.0], [2.0]))
