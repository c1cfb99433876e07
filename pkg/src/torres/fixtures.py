"""Standard fans and sections used by the tests, scripts and example jobs."""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import List, Optional, Sequence

from . import lattice, polytopes
from .coxring import Polynomial, parse
from .lattice import DegreeClass, Fan, build_fan


def projective_space(n: int) -> Fan:
    """P^n with rays -(e_1+...+e_n), e_1, ..., e_n in that order.

    This order makes the toric Jacobian equal (1/d) det(df_i/dx_j) exactly;
    an odd reordering of the rays flips that sign.
    """
    rays = [[-1] * n] + [[int(i == j) for j in range(n)] for i in range(n)]
    cones = [c for c in itertools.combinations(range(n + 1), n)]
    return build_fan(rays, cones)


def p1xp1() -> Fan:
    """Rays for x, y, z, w: (1,0), (-1,0), (0,1), (0,-1)."""
    return build_fan([[1, 0], [-1, 0], [0, 1], [0, -1]], [[0, 2], [0, 3], [1, 2], [1, 3]])


def hirzebruch(a: int) -> Fan:
    return build_fan([[1, 0], [0, 1], [-1, a], [0, -1]], [[0, 1], [1, 2], [2, 3], [0, 3]])


def weighted_121() -> Fan:
    """Rays (1,0), (0,1), (-1,-2): the weighted plane with ray degrees (1, 2, 1)."""
    return build_fan([[1, 0], [0, 1], [-1, -2]], [[0, 1], [1, 2], [0, 2]])


def p2_mod_3() -> Fan:
    """P^2 / mu_3; class group Z + Z/3."""
    return build_fan([[-1, -1], [2, -1], [-1, 2]], [[0, 1], [1, 2], [0, 2]])


def product_of_projective_spaces(m: int, p: int) -> Fan:
    """P^{m-1} x P^{p-1}; variables x_1..x_m then y_1..y_p."""
    a = projective_space(m - 1)
    b = projective_space(p - 1)
    za, zb = [0] * (m - 1), [0] * (p - 1)
    rays = [list(r) + zb for r in a.rays] + [za + list(r) for r in b.rays]
    cones = [list(ca) + [len(a.rays) + j for j in cb] for ca in a.max_cones for cb in b.max_cones]
    return build_fan(rays, cones)


FIXTURES = {
    "P1": lambda: projective_space(1),
    "P2": lambda: projective_space(2),
    "P1xP1": p1xp1,
    "F1": lambda: hirzebruch(1),
    "P121": weighted_121,
}


def lambda_section(lam) -> Polynomial:
    """x^2 z^2 + x^2 w^2 + y^2 z^2 + y^2 w^2 + lam x y z w on P1 x P1."""
    return parse(f"x^2*z^2 + x^2*w^2 + y^2*z^2 + y^2*w^2 + ({Fraction(lam)})*x*y*z*w", "xyzw")


def lambda_sequence(lam) -> List[Polynomial]:
    from .coxring import toric_derivative
    f = lambda_section(lam)
    return [f, toric_derivative(f, 0), toric_derivative(f, 2)]


def random_section(fan: Fan, alpha: DegreeClass, rng: random.Random, bound: int = 5,
                   density: float = 1.0) -> Polynomial:
    monos = polytopes.monomial_basis(fan, alpha)
    terms = {m: rng.randint(-bound, bound) for m in monos if rng.random() < density}
    return Polynomial(fan.nrays, terms)


def random_sequence(fan: Fan, beta: DegreeClass, rng: random.Random, bound: int = 5,
                    attempts: int = 50) -> List[Polynomial]:
    """n+1 random sections of degree beta without common zero."""
    from .residue import check_condition3
    for _ in range(attempts):
        seq = [random_section(fan, beta, rng, bound) for _ in range(fan.rank + 1)]
        if all(seq) and check_condition3(fan, beta, seq):
            return seq
    raise RuntimeError(f"no admissible sequence found in degree {beta}")


def ample_classes(fan: Fan, bound: int = 2) -> List[DegreeClass]:
    """Distinct ample classes with representatives in [0, bound]^rays, smallest first."""
    seen = {}
    for a in itertools.product(range(bound + 1), repeat=fan.nrays):
        if polytopes.is_ample(fan, a):
            d = lattice.degree_of(fan, a)
            if d not in seen:
                seen[d] = d
    return sorted(seen, key=lambda d: (sum(abs(x) for x in d.representative), d.representative))


def random_homogeneous(fan: Fan, rng: random.Random, bound: int = 2) -> Polynomial:
    """A random homogeneous polynomial in a random effective degree."""
    while True:
        a = [rng.randint(0, bound) for _ in range(fan.nrays)]
        alpha = lattice.degree_of(fan, a)
        p = random_section(fan, alpha, rng, 5, density=0.7)
        if p:
            return p
