"""Inverse estimates, decay rates and the class characterisation.

The modulus is bounded by a weighted sum of best-approximation errors; on
power-decay spectra the decay of E_n predicts the decay of the modulus,
with a logarithmic factor exactly when the two orders coincide.
"""

import math

import numpy as np

from orlicz_jackson import (Majorant, OrliczFamily, check_condition_B, class_membership, classify_rates,
                            inverse_bounds, spectrum_from_rule)

K = 96
f = spectrum_from_rule("power", K, s=1.25)
fam = OrliczFamily.power(K, 2)
print(" n   omega_1(f, pi/n)  general rhs   alpha-form rhs")
for n in (1, 2, 4, 8, 16, 32, 64):
    g, a = inverse_bounds(fam, f, 1.0, n)
    print(f"{n:2d}   {g.lhs:.6f}          {g.rhs:.6f}     {a.rhs:.6f}")

d = spectrum_from_rule("delta", K, k0=1)
_, a = inverse_bounds(fam, d, 0.5, 1)
print(f"\nalpha = 1/2, single frequency at n = 1: omega = {a.lhs:.4f} but the alpha-form bound is {a.rhs:.4f}")

K = 4096
fam = OrliczFamily.power(K, 2)
ns = np.unique(np.geomspace(8, 128, 12).astype(int))
print("\nalpha  beta   fitted beta  modulus slope  class")
for alpha in (1.0, 2.0):
    for beta in (alpha / 2, alpha, 2 * alpha):
        r = classify_rates(fam, spectrum_from_rule("power", K, s=beta + 0.5), alpha, n_range=ns)
        print(f"{alpha:4.1f}  {beta:4.1f}   {r.beta_hat:8.3f}   {r.omega_slope:10.3f}     {r.category}")

print("\nsummation condition for omega(t) = t^r, alpha = 1")
for r in (0.25, 0.5, 0.75, 1.0):
    c = check_condition_B(Majorant.power(r), 1.0)
    print(f"  r = {r:4.2f}: R(n) grows by {c.growth:.4f} over the last quarter -> {c.verdict}")

m = class_membership(fam, spectrum_from_rule("power", K, s=0.75), 1.0, Majorant.power(0.5), n_range=ns)
print(f"\n|k|^-0.75 against t^0.5: {m.verdict}")
m = class_membership(fam, spectrum_from_rule("power", K, s=1.0), 1.0, Majorant.power(0.5), n_range=ns)
print(f"|k|^-1.0 against t^0.5:  {m.verdict}")
