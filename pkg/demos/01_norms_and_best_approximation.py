"""Norms of coefficient sequences and best approximation.

Builds a few spectra, measures them in a mixed-exponent family with both
norms, and prints the best-approximation errors E_n, which are the norms of
the tails beyond the Fourier partial sum.
"""

import numpy as np

from orlicz_jackson import (NormKind, OrliczFamily, Spectrum, best_approx_sequence, dual_ascent, luxemburg_norm,
                            orlicz_norm, spectrum_from_rule, spectrum_from_samples)

# M_0(u) = u and M_1(u) = u^2 with c_0 = c_1 = 1: the Luxemburg norm solves 1/a + 1/a^2 = 1
mixed = OrliczFamily.power(1, [2.0, 1.0, 2.0])
f = Spectrum(np.array([0, 1, 1]))
print("golden-ratio example")
print(f"  Luxemburg {luxemburg_norm(mixed, f):.12f}   (1 + sqrt 5)/2 = {(1 + 5 ** 0.5) / 2:.12f}")
print(f"  Orlicz    {orlicz_norm(mixed, f):.12f}")
best, lam = dual_ascent(mixed, f)
print(f"  dual ascent over the conjugate budget: {best.value:.8f} with lambda = {lam.round(6)}")

# the scaled power family turns the Orlicz norm into the l_p norm
g = spectrum_from_rule("geometric", 30, r=0.5)
for p in (1.0, 1.5, 2.0, 3.0):
    lp = np.sum(g.magnitudes ** p) ** (1 / p)
    print(f"p = {p:3.1f}: Orlicz norm in the scaled family {orlicz_norm(OrliczFamily.scaled_power(30, p), g):.12f}"
          f"   l_p norm {lp:.12f}")

# best approximation of a sampled sawtooth in a variable-exponent family
N, K = 4096, 64
x = 2 * np.pi * np.arange(N) / N
saw = spectrum_from_samples(np.where(x > 0, (np.pi - x) / 2, 0.0), K)
k = np.arange(-K, K + 1)
fam = OrliczFamily.power(K, 1.0 + np.abs(k) / K)
E = best_approx_sequence(fam, saw, [1, 2, 4, 8, 16, 32, 64])
print("\nsawtooth, M_k(u) = u^(1 + |k|/64)")
for kind in NormKind:
    E = best_approx_sequence(fam, saw, [1, 2, 4, 8, 16, 32, 64], kind)
    print(f"  {kind.value:9s} " + "  ".join(f"E_{int(n)}={e:.4f}" for n, e in E))
