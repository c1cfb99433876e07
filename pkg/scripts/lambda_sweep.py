"""Sweep lambda on the biquadratic P1 x P1 family.

For each lambda prints the nondegeneracy verdict and, when the reduced
sequence has no common zero, the exact residue of its toric Jacobian.
"""
import argparse
from dataclasses import dataclass
from fractions import Fraction

from torres import fixtures, lattice
from torres.differentials import toric_jacobian
from torres.residue import check_condition3, is_nondegenerate, toric_residue


@dataclass
class SweepConfig:
    low: int = -6
    high: int = 6
    step: Fraction = Fraction(1)


def sweep(config: SweepConfig):
    fan = fixtures.p1xp1()
    beta = lattice.degree_of(fan, (2, 0, 2, 0))
    lam = Fraction(config.low)
    while lam <= config.high:
        nondeg = is_nondegenerate(fan, beta, fixtures.lambda_section(lam)).nondegenerate
        f_seq = fixtures.lambda_sequence(lam)
        residue = None
        if check_condition3(fan, beta, f_seq):
            J = toric_jacobian(fan, f_seq).J
            residue = toric_residue(fan, beta, f_seq, J).residue_value
        yield lam, nondeg, residue
        lam += config.step


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--low", type=int, default=-6)
    ap.add_argument("--high", type=int, default=6)
    ap.add_argument("--step", type=Fraction, default=Fraction(1))
    a = ap.parse_args()
    print(f"{'lambda':>8} {'nondegenerate':>14} {'res(J)':>8}")
    for lam, nondeg, res in sweep(SweepConfig(a.low, a.high, a.step)):
        print(f"{str(lam):>8} {str(nondeg):>14} {str(res) if res is not None else '-':>8}")


if __name__ == "__main__":
    main()
