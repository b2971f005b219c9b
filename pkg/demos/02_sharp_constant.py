"""The sharp Jackson constant as a linear program.

For the classical first-order multiplier and p = 2 the constant is 2^(-1/2).
A single measure already certifies an upper bound (the uniform one gives
exactly 2^(-1/2)); the program finds the best measure and the matching
convex combination of dilated profiles.
"""

import math

import numpy as np

from orlicz_jackson import DiscreteMeasure, Multiplier, ratio_upper_bound, sharp_constant_lp

phi = Multiplier.classical(1.0)

print("uniform measure on [0, pi]:", f"{ratio_upper_bound(phi, 2, 1, DiscreteMeasure.uniform(math.pi, 256)):.6f}")
print("1/sqrt(2)                 :", f"{2 ** -0.5:.6f}\n")

print(" p  n   C            duality gap  pivots  support")
for p in (2.0, 1.0):
    for n in (1, 2, 4, 8):
        r = sharp_constant_lp(phi, p, n, math.pi)
        d = r.diagnostics
        print(f"{p:2g} {n:2d}   {r.C:.9f}  {d['duality_gap']:.1e}      {d['iterations']:5d}  {d['support_size']}")

r = sharp_constant_lp(phi, 1.0, 2, math.pi, sensitivity=True)
s = r.diagnostics["sensitivity"]
print(f"\np = 1, n = 2 with grid and j_max doubled: C = {s['C']:.9f} (relative change {s['relative_change']:.1e})")
heavy = np.argsort(r.measure.weights)[::-1][:5]
print("heaviest nodes of the extremal measure:",
      ", ".join(f"{u:.4f} ({w:.3f})" for u, w in zip(r.measure.nodes[heavy], r.measure.weights[heavy])))
# the recovered measure certifies the constant it came from
print(f"bound certified by that measure: {ratio_upper_bound(phi, 1.0, 2, r.measure, r.diagnostics['j_max']):.9f}"
      f" vs C = {r.C:.9f}")
