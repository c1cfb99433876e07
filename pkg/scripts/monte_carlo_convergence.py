"""Monte Carlo residue estimates against the exact value as the sample count grows.

The standard error should shrink roughly like N^(-1/2); the last column
reports |estimate - exact| in units of the standard error.
"""
import argparse
import math
from dataclasses import dataclass
from typing import Tuple

from torres import fixtures, lattice
from torres.differentials import toric_jacobian
from torres.numeric import SamplerConfig, residue_integral
from torres.residue import toric_residue


@dataclass
class ConvergenceConfig:
    fan: str = "P1xP1"
    counts: Tuple[int, ...] = (10**3, 10**4, 10**5, 10**6)
    seed: int = 1
    workers: int = 1


def setup(name: str):
    fan = fixtures.FIXTURES[name]()
    if name == "P1xP1":
        f_seq = fixtures.lambda_sequence(1)
        beta = lattice.degree_of(fan, (2, 0, 2, 0))
    else:
        import random
        beta = fixtures.ample_classes(fan)[0]
        f_seq = fixtures.random_sequence(fan, beta, random.Random(name), bound=3)
    return fan, beta, f_seq


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fan", default="P1xP1", choices=sorted(fixtures.FIXTURES))
    ap.add_argument("--counts", type=int, nargs="+", default=[10**3, 10**4, 10**5, 10**6])
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--workers", type=int, default=1)
    a = ap.parse_args()
    config = ConvergenceConfig(a.fan, tuple(a.counts), a.seed, a.workers)
    fan, beta, f_seq = setup(config.fan)
    if fan.rank > 2:
        raise SystemExit("Monte Carlo is limited to n <= 2")
    J = toric_jacobian(fan, f_seq).J
    exact = toric_residue(fan, beta, f_seq, J).residue_value
    print(f"fan {config.fan}, exact res(J) = {exact}")
    print(f"{'samples':>9} {'estimate':>12} {'std err':>10} {'err*sqrt(N)':>12} {'z':>6}")
    for N in config.counts:
        est = residue_integral(fan, beta, f_seq, J, SamplerConfig(N, config.seed, 0, config.workers))
        z = abs(est.value - complex(exact)) / est.std_error if est.std_error else float("nan")
        print(f"{N:>9} {est.value.real:>12.5f} {est.std_error:>10.2e} "
              f"{est.std_error * math.sqrt(N):>12.3f} {z:>6.2f}")


if __name__ == "__main__":
    main()
