"""E_n(f) against C times the modulus at step pi/n.

Checks the direct inequality on a handful of functions in both norms and in
S^2, then looks at how close two-frequency functions get to the constant,
compared with the many-frequency function read off the LP weights.
"""

import math

from orlicz_jackson import (Multiplier, NormKind, OrliczFamily, lp_witness, sharp_constant_lp, sharpness_search,
                            spectrum_from_rule, tabulated_constant, verify_direct)

phi = Multiplier.classical(1.0)
K = 96
cases = {
    "geometric 0.8": spectrum_from_rule("geometric", K, r=0.8),
    "|k|^-1": spectrum_from_rule("power", K, s=1.0),
    "lacunary": spectrum_from_rule("lacunary", K, amplitudes=[1, 0.5, 0.25, 0.125, 0.0625, 0.03]),
}
fam = OrliczFamily.power(K, 1.5)
print("function        n   kind        E_n        rhs        slack/rhs")
for name, f in cases.items():
    for n in (1, 4, 16):
        C1 = tabulated_constant(1.0, 1.0, n)
        for kind in NormKind:
            r = verify_direct(fam, f, n, phi, math.pi, norm_kind=kind, constant=C1)
            print(f"{name:14s} {n:3d}   {kind.value:9s} {r.lhs:.4e} {r.rhs:.4e}  {r.slack / r.rhs:.3f}")

print("\nsharpness, p = 2")
for n in (1, 2, 3):
    res = sharp_constant_lp(phi, 2.0, n, math.pi)
    two = sharpness_search(phi, 2.0, n, math.pi)
    w = lp_witness(res)
    many = verify_direct(None, w, n, phi, math.pi, p=2.0, constant=1.0)
    print(f"n = {n}: best pair ({two.k1}, {two.k2}) reaches {two.ratio / res.C:.3f} C; "
          f"LP weights over {res.diagnostics['support_size']} frequencies reach {many.lhs / many.modulus / res.C:.4f} C")
