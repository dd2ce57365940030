#!/usr/bin/env python3
"""Effect of basis size on quartic-problem convergence (non-gating sweep).

Convergence of the transformed quartic problem can be sensitive
to basis size in a way that depends on roundoff behavior, so this sweep is
an observational tool rather than a test: for each (dim, beta) it prints how
many of the lowest states converge and the worst deviation from the golden
grid among those that do.

Example:
    python3 scripts/matrix_size_study.py --dims 100,125,150 --beta 0.5,1.0
"""

import argparse
import csv
import sys

from perturba.experiments import NotTabulatedError, quartic_reference_energy
from perturba.hamiltonians import build_quartic_synthetic, default_quartic_a2
from perturba.iterative import IterConfig, iterate_solve


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--dims", default="100,125,150")
    parser.add_argument("--beta", default="0.5,1.0")
    parser.add_argument("--states", type=int, default=8)
    parser.add_argument("--max-iterations", type=int, default=20_000)
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    dims = [int(tok) for tok in args.dims.split(",")]
    betas = [float(tok) for tok in args.beta.split(",")]
    cfg = IterConfig(max_iterations=args.max_iterations)

    stream = open(args.out, "w", newline="") if args.out else sys.stdout
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(["dim", "beta", "states_tried", "states_converged",
                     "frontier", "worst_rel_vs_benchmark"])
    try:
        for dim in dims:
            for beta in betas:
                h = build_quartic_synthetic(beta, default_quartic_a2(beta), dim)
                converged = 0
                frontier = -1
                contiguous = True
                worst = ""
                worst_val = 0.0
                for n in range(args.states):
                    sol = iterate_solve(h, n, cfg)
                    if sol.converged:
                        converged += 1
                        if contiguous:
                            frontier = n
                        try:
                            ref = quartic_reference_energy(n, beta)
                            worst_val = max(
                                worst_val, abs(sol.energy - ref) / abs(ref)
                            )
                            worst = f"{worst_val:.3e}"
                        except NotTabulatedError:
                            pass
                    else:
                        contiguous = False
                writer.writerow([dim, beta, args.states, converged, frontier, worst])
    finally:
        if stream is not sys.stdout:
            stream.close()
    return 0


if __name__ == "__main__":
    sys.exit(main())
