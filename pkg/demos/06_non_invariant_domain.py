"""
When the domain is not symmetric
================================

On U = (1, 3), which is not invariant under y -> -y, take a source f equal
to -1 near the mirror interval [-x-r, -x+r] and 0 on U.  Its potential h is
Dunkl-harmonic on U, yet its spherical means at x exceed h(x) because the
mean measure also looks at the mirror side.  Takes about half a minute.
"""

from dunklmvp import build_counterexample, make_config

report = build_counterexample(make_config(1, [1]), (1, 3), 2, 0.5)

print("h(x) =", report.h_x)
print("harmonicity on U (Lap_k h):")
for row in report.harmonicity_grid:
    print(f"    z = {row['z']:.3f}   {row['residual']: .2e}")
print("mean value gaps:")
for row in report.t_grid:
    t = row["t"]
    # Lap_k h = 1 on the mirror side, where sigma_{x,u} has mass u^2/(6 x^2); the gaps follow t^4/(120 x^2)
    print(f"    t = {t:.1f}   M_(x,t)(h) - h(x) = {row['gap']:.10e}   t^4/480 = {t ** 4 / 480:.10e}")
print("conclusion:", report.conclusion)
