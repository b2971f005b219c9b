"""Regenerate the shipped table of sharp constants.

The direct-theorem sweep needs C_{n,phi,p}(pi) for every n up to 64 and two
exponents.  Solving those programs takes a while on one core, so the package
ships them precomputed; this script is how they were produced.

    python3 demos/build_constant_table.py [--n-max 64] [--out path]
"""

import argparse
import csv
import sys
import time
from pathlib import Path

import numpy as np

from orlicz_jackson.jackson import DEFAULT_GRID, sharp_constant_lp
from orlicz_jackson.smoothness import Multiplier

OUT = Path(__file__).resolve().parents[1] / "src" / "orlicz_jackson" / "data" / "sharp_constants.csv"


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-max", type=int, default=64)
    ap.add_argument("--alpha", type=float, default=1.0)
    ap.add_argument("--p", type=float, nargs="+", default=[1.0, 2.0])
    ap.add_argument("--out", type=Path, default=OUT)
    args = ap.parse_args(argv)

    phi = Multiplier.classical(args.alpha)
    fields = ["alpha", "p", "tau", "n", "grid", "j_max", "C", "J", "duality_gap"]
    with open(args.out, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(fields)
        for p in args.p:
            for n in range(1, args.n_max + 1):
                t0 = time.time()
                r = sharp_constant_lp(phi, p, n, np.pi)
                w.writerow([f"{args.alpha:g}", f"{p:g}", "pi", n, DEFAULT_GRID, r.diagnostics["j_max"],
                            f"{r.C:.17g}", f"{r.J:.17g}", f"{r.diagnostics['duality_gap']:.3g}"])
                fh.flush()
                print(f"p={p:g} n={n:2d} C={r.C:.12f} ({time.time() - t0:.1f}s)", file=sys.stderr)


if __name__ == "__main__":
    main()
