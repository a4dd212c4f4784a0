#!/usr/bin/env python3
"""Scan the oscillator-Coulomb correspondence across angular sectors.

For each oscillator angular label L (and each frequency), solve the
eight-dimensional radial problem, push every level through the energy-coupling
swap, solve the predicted five-dimensional Coulomb problem, and tabulate how
well the computed dual level matches the prediction.  The closing column is
the exact rational closure of the same square from the symmetry side.

    python scripts/duality_scan.py --L-max 3 --levels 3 --omega 1
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from hkit.radial import RadialProblem, duality_map, solve_coulomb, solve_oscillator
from hkit.spectrum import duality_closure_check

HEADER = (f"{'L':>3} {'k':>3} {'E_osc':>12} {'e2_dual':>10} {'l_dual':>7} "
          f"{'predicted':>12} {'computed':>12} {'rel_err':>10} {'exact_square':>12}")


def scan(L: int, omega: float, levels: int, n_points: int) -> tuple[list[str], float]:
    prob = RadialProblem.oscillator(8, L, omega, n_points=n_points)
    osc = solve_oscillator(prob, levels=levels)
    lines, worst = [], 0.0
    for k, m in enumerate(duality_map(osc)):
        dual = solve_coulomb(m.dual_problem, levels=m.dual_index + 1)
        got = float(dual.eigenvalues[m.dual_index])
        rel = abs(got - m.predicted) / abs(m.predicted)
        worst = max(worst, rel)
        N = 2 * k + L
        closure = duality_closure_check(N, Fraction(omega).limit_denominator(10**6))
        lines.append(f"{L:>3} {k:>3} {float(osc.eigenvalues[k]):>12.8f} "
                     f"{m.dual_problem.e2:>10.5f} {m.dual_problem.ell:>7.1f} "
                     f"{m.predicted:>12.8f} {got:>12.8f} {rel:>10.2e} "
                     f"{'closes' if closure.passed else 'OPEN':>12}")
    return lines, worst


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--L-max", type=int, default=3, dest="l_max")
    parser.add_argument("--levels", type=int, default=3)
    parser.add_argument("--omega", type=float, default=1.0)
    parser.add_argument("--n-points", type=int, default=4096, dest="n_points")
    parser.add_argument("--rtol", type=float, default=1e-6,
                        help="worst acceptable relative mismatch")
    args = parser.parse_args(argv)

    print(f"oscillator dim 8, omega = {args.omega}, {args.levels} levels per L")
    print(HEADER)
    worst = 0.0
    for L in range(args.l_max + 1):
        lines, w = scan(L, args.omega, args.levels, args.n_points)
        print("\n".join(lines))
        worst = max(worst, w)
    print(f"worst relative mismatch: {worst:.2e}")
    return 0 if worst < args.rtol else 1


if __name__ == "__main__":
    sys.exit(main())
