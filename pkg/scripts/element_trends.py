#!/usr/bin/env python3
"""How the magnitude-operator elements fall off with band distance.

Prints |<n| |xi| |n+k>| and |<n| |xi|^3 |n+k>| for a set of anchor rows as k
sweeps across the quadrature band and into the extrapolated region, so the
decay and the region seam can be eyeballed in one table.

Example:
    python3 scripts/element_trends.py --rows 0,10,40 --kmax 70
"""

import argparse
import csv
import sys

from perturba.oscillator import QUAD_BAND_LIMIT, lambda_xi3_element, lambda_xi_element


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--rows", default="0,10,40",
                        help="comma-separated anchor quantum numbers n")
    parser.add_argument("--kmax", type=int, default=70,
                        help="largest band distance to print")
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    rows = [int(tok) for tok in args.rows.split(",")]

    stream = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["n", "k", "region", "abs_xi1", "abs_xi3"])
    try:
        for n in rows:
            for k in range(0, args.kmax + 1, 2):
                region = "quadrature" if k <= QUAD_BAND_LIMIT else "extrapolated"
                v1 = lambda_xi_element(n, n + k)
                v3 = lambda_xi3_element(n, n + k)
                writer.writerow([n, k, region, f"{abs(v1):.6e}", f"{abs(v3):.6e}"])
    finally:
        if stream is not sys.stdout:
            stream.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
