"""Table of res(J) against n! vol(Delta) for ample classes on every fixture fan."""
import argparse
import random
import time
from dataclasses import dataclass

from torres import fixtures, polytopes
from torres.differentials import toric_jacobian
from torres.residue import toric_residue


@dataclass
class TableConfig:
    bound: int = 2
    classes: int = 4
    seed: int = 0


def rows(config: TableConfig):
    for name, make in sorted(fixtures.FIXTURES.items()):
        fan = make()
        rng = random.Random(f"{config.seed}-{name}")
        for beta in fixtures.ample_classes(fan, bound=config.bound)[:config.classes]:
            f_seq = fixtures.random_sequence(fan, beta, rng, bound=3)
            start = time.perf_counter()
            cert = toric_residue(fan, beta, f_seq, toric_jacobian(fan, f_seq).J)
            elapsed = time.perf_counter() - start
            vol = polytopes.polytope_of_divisor(fan, beta.representative).normalized_volume
            yield name, beta.representative, cert.residue_value, vol, elapsed


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--bound", type=int, default=2, help="max entry of the divisor representatives")
    ap.add_argument("--classes", type=int, default=4, help="ample classes per fan")
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    print(f"{'fan':<7} {'divisor':<16} {'res(J)':>8} {'n! vol':>8} {'seconds':>8}")
    for name, rep, res, vol, t in rows(TableConfig(a.bound, a.classes, a.seed)):
        flag = "" if res == vol else "  MISMATCH"
        print(f"{name:<7} {str(tuple(rep)):<16} {str(res):>8} {str(vol):>8} {t:8.2f}{flag}")


if __name__ == "__main__":
    main()
