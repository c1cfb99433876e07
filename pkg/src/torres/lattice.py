"""Fans, the class group of a toric variety and Euler vector fields.

Conventions used everywhere in the package:

* the basis of ``M`` is the standard basis of ``Z^n``;
* a subset ``I`` of rays is always taken in increasing ray index;
* ray order is fixed when the fan is built and never changed.

Together these pin the sign of the torus-invariant n-form, which is otherwise
only defined up to ``±1``.
"""
from __future__ import annotations

import functools
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import List, Optional, Sequence, Tuple

from . import linalg


class FanError(ValueError):
    """Malformed fan input (bad rays, bad cone indices)."""


class IncompleteFanError(FanError):
    """The fan is well formed but does not cover N_R."""


@dataclass(frozen=True)
class Fan:
    rays: Tuple[Tuple[int, ...], ...]
    max_cones: Tuple[Tuple[int, ...], ...]
    complete: bool
    simplicial: bool
    smooth: bool

    @property
    def rank(self) -> int:
        return len(self.rays[0])

    @property
    def nrays(self) -> int:
        return len(self.rays)

    def require_complete(self) -> None:
        if not self.complete:
            raise IncompleteFanError("operation needs a complete fan")


def _primitive(v: Sequence[int]) -> bool:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g == 1


def _facets(rays: Sequence[Sequence[int]], cone: Sequence[int]) -> List[Tuple[Tuple[int, ...], Tuple[Fraction, ...]]]:
    """Facets of a full-dimensional cone as (ray subset, inward normal)."""
    n = len(rays[0])
    found = {}
    for sub in itertools.combinations(cone, n - 1):
        vecs = [rays[i] for i in sub]
        if n > 1 and linalg.rank(vecs) < n - 1:
            continue
        normal = _normal_vector(vecs, n)
        side = [sum(a * b for a, b in zip(normal, rays[i])) for i in cone]
        if all(s >= 0 for s in side):
            pass
        elif all(s <= 0 for s in side):
            normal = [-a for a in normal]
        else:
            continue
        face = tuple(i for i in cone if sum(a * b for a, b in zip(normal, rays[i])) == 0)
        found[face] = tuple(normal)
    return sorted(found.items())


def _normal_vector(vecs: Sequence[Sequence[int]], n: int) -> List[int]:
    """Integer vector orthogonal to n-1 independent vectors (generalized cross product)."""
    if n == 1:
        return [1]
    normal = []
    for k in range(n):
        minor = [[v[j] for j in range(n) if j != k] for v in vecs]
        normal.append((-1) ** k * int(linalg.det(minor)))
    return normal


def _in_cone(direction: Sequence[int], facets) -> bool:
    return all(sum(a * b for a, b in zip(normal, direction)) >= 0 for _, normal in facets)


def build_fan(rays: Sequence[Sequence[int]], max_cones: Sequence[Sequence[int]],
              samples: int = 1000, seed: int = 0) -> Fan:
    """Validate rays and cones and compute the completeness/simplicial/smooth flags.

    Completeness is a heuristic pair of necessary conditions: every facet of a
    maximal cone is shared by exactly two maximal cones, and ``samples``
    seeded random integer directions each land in some maximal cone.
    """
    if not rays:
        raise FanError("fan needs at least one ray")
    rays_t = tuple(tuple(int(x) for x in r) for r in rays)
    n = len(rays_t[0])
    if n == 0 or any(len(r) != n for r in rays_t):
        raise FanError("rays must be nonempty vectors of a common length")
    for i, r in enumerate(rays_t):
        if not any(r):
            raise FanError(f"ray {i} is zero")
        if not _primitive(r):
            raise FanError(f"ray {i} = {r} is not primitive")
    if len(set(rays_t)) != len(rays_t):
        raise FanError("duplicate rays")
    if not max_cones:
        raise FanError("empty cone list")
    cones = []
    for c in max_cones:
        c = tuple(sorted(int(i) for i in c))
        if not c:
            raise FanError("empty maximal cone")
        if len(set(c)) != len(c):
            raise FanError(f"cone {c} repeats a ray")
        if any(i < 0 or i >= len(rays_t) for i in c):
            raise FanError(f"cone {c} has a ray index out of range")
        cones.append(c)
    cones_t = tuple(cones)
    unused = set(range(len(rays_t))) - set(itertools.chain(*cones_t))
    if unused:
        raise FanError(f"rays {sorted(unused)} lie in no maximal cone")

    simplicial = all(linalg.rank([rays_t[i] for i in c]) == len(c) for c in cones_t)
    complete = _check_complete(rays_t, cones_t, samples, seed)
    smooth = simplicial and all(
        len(c) == n and abs(linalg.det([list(rays_t[i]) for i in c])) == 1 for c in cones_t)
    return Fan(rays_t, cones_t, complete, simplicial, smooth)


def _check_complete(rays, cones, samples, seed) -> bool:
    n = len(rays[0])
    if any(linalg.rank([rays[i] for i in c]) != n for c in cones):
        return False
    facets = {c: _facets(rays, c) for c in cones}
    counts = {}
    for c in cones:
        for face, _ in facets[c]:
            counts[face] = counts.get(face, 0) + 1
    if any(v != 2 for v in counts.values()):
        return False
    rng = random.Random(seed)
    for _ in range(samples):
        d = [rng.randint(-10**6, 10**6) for _ in range(n)]
        if not any(d):
            continue
        if not any(_in_cone(d, facets[c]) for c in cones):
            return False
    return True


def ray_matrix(fan: Fan) -> List[List[int]]:
    """n x |rays| matrix whose columns are the ray generators."""
    return linalg.transpose(fan.rays)


def det_nI(fan: Fan, I: Sequence[int]) -> int:
    """det(<m_i, n_{rho_j}>) with the standard basis of M and I in the given order."""
    if len(I) != fan.rank:
        raise ValueError(f"subset must have {fan.rank} rays, got {len(I)}")
    cols = [fan.rays[i] for i in I]
    return int(linalg.det(linalg.transpose(cols)))


def n_subsets(fan: Fan):
    return itertools.combinations(range(fan.nrays), fan.rank)


# ---------------------------------------------------------------------------
# Class group

@dataclass(frozen=True)
class ClassGroup:
    """A_{n-1}(X) = Z^{rays} / image of M.

    ``free_map`` rows are the Euler basis (their pairing with a divisor gives
    the free coordinates); ``torsion_map`` rows, reduced modulo
    ``torsion_invariants``, give the torsion coordinates.
    """
    free_rank: int
    torsion_invariants: Tuple[int, ...]
    free_map: Tuple[Tuple[int, ...], ...]
    torsion_map: Tuple[Tuple[int, ...], ...]

    @property
    def projection(self) -> List[List[int]]:
        return [list(r) for r in self.free_map] + [list(r) for r in self.torsion_map]

    def coordinates(self, a: Sequence[int]) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        if len(a) != len(self.free_map[0] if self.free_map else self.torsion_map[0]):
            raise ValueError("divisor length does not match the number of rays")
        free = tuple(sum(x * y for x, y in zip(row, a)) for row in self.free_map)
        tors = tuple(sum(x * y for x, y in zip(row, a)) % d
                     for row, d in zip(self.torsion_map, self.torsion_invariants))
        return free, tors


@dataclass(frozen=True)
class DegreeClass:
    """A class in A_{n-1}(X) together with a divisor representative."""
    free: Tuple[int, ...]
    torsion: Tuple[int, ...]
    representative: Tuple[int, ...] = field(compare=False)

    @property
    def coords(self):
        return self.free, self.torsion

    def __str__(self):
        s = "(" + ", ".join(map(str, self.free)) + ")"
        if self.torsion:
            s += " + torsion(" + ", ".join(map(str, self.torsion)) + ")"
        return s


@functools.lru_cache(maxsize=None)
def class_group(fan: Fan) -> ClassGroup:
    fan.require_complete()
    P = [list(r) for r in fan.rays]  # |rays| x n, matrix of m -> (<m, n_rho>)
    U, D, _ = linalg.smith_normal_form(P)
    n = fan.rank
    invariants, tmap = [], []
    for i in range(n):
        if D[i][i] > 1:
            invariants.append(D[i][i])
            tmap.append(tuple(U[i]))
    free = tuple(tuple(int(x) for x in th.b) for th in euler_basis(fan))
    return ClassGroup(len(free), tuple(invariants), free, tuple(tmap))


def degree_of(fan: Fan, exponents: Sequence[int]) -> DegreeClass:
    if len(exponents) != fan.nrays:
        raise ValueError(f"expected {fan.nrays} exponents, got {len(exponents)}")
    a = tuple(int(x) for x in exponents)
    free, tors = class_group(fan).coordinates(a)
    return DegreeClass(free, tors, a)


def anticanonical(fan: Fan) -> DegreeClass:
    """beta_0, the class of the sum of all torus-invariant prime divisors."""
    return degree_of(fan, [1] * fan.nrays)


def combine(fan: Fan, *terms: Tuple[int, DegreeClass]) -> DegreeClass:
    """Integer combination sum k * alpha, carried on the representatives."""
    rep = [0] * fan.nrays
    for k, alpha in terms:
        rep = [r + k * a for r, a in zip(rep, alpha.representative)]
    return degree_of(fan, rep)


def critical_degree(fan: Fan, beta: DegreeClass) -> DegreeClass:
    """(n+1) beta - beta_0."""
    return combine(fan, (fan.rank + 1, beta), (-1, anticanonical(fan)))


def character_divisor(fan: Fan, m: Sequence[int]) -> List[int]:
    """The principal divisor (<m, n_rho>)_rho of the character m."""
    return [sum(x * y for x, y in zip(m, r)) for r in fan.rays]


# ---------------------------------------------------------------------------
# Euler vector fields

@dataclass(frozen=True)
class EulerField:
    b: Tuple[Fraction, ...]

    def __post_init__(self):
        object.__setattr__(self, "b", tuple(Fraction(x) for x in self.b))


def euler_basis(fan: Fan) -> List[EulerField]:
    """Hermite-normal-form integer basis of the relations sum b_rho n_rho = 0."""
    fan.require_complete()
    kernel = linalg.integer_kernel(ray_matrix(fan))
    return [EulerField(tuple(row)) for row in kernel]


def euler_pairing(theta: EulerField, beta: DegreeClass) -> Fraction:
    return sum((b * a for b, a in zip(theta.b, beta.representative)), Fraction(0))


def check_euler_field(fan: Fan, theta: EulerField) -> bool:
    return all(sum(b * r[k] for b, r in zip(theta.b, fan.rays)) == 0 for k in range(fan.rank))


# ---------------------------------------------------------------------------
# Determinant of the based exact sequence 0 -> Lie(G) -> C^{rays} -> N_C -> 0

@dataclass
class ExactSequenceReport:
    c: Fraction
    reference_subset: Tuple[int, ...]
    checked: int
    rows: List[Tuple[Tuple[int, ...], int, int, int]]  # (I, det n_I, sign, det b_hat_I)


class IdentityViolation(AssertionError):
    """An internal identity failed; this indicates a bug, not bad input."""


def move_to_end_sign(nrays: int, I: Sequence[int]) -> int:
    """Sign of the permutation putting the rays of I at the end, orders preserved."""
    rest = [i for i in range(nrays) if i not in I]
    return linalg.permutation_sign(rest + list(I))


def exact_sequence_determinant(fan: Fan, basis: Optional[Sequence[EulerField]] = None) -> ExactSequenceReport:
    """Compute c with c det(n_I) = sign(I) det(b_hat_I) and verify it for all I."""
    fan.require_complete()
    basis = list(basis) if basis is not None else euler_basis(fan)
    B = [list(th.b) for th in basis]
    c = None
    ref = None
    rows = []
    for I in n_subsets(fan):
        dn = det_nI(fan, I)
        rest = [j for j in range(fan.nrays) if j not in I]
        db = linalg.det([[row[j] for j in rest] for row in B]) if B else 1
        sign = move_to_end_sign(fan.nrays, I)
        rows.append((I, dn, sign, db))
        if c is None and dn != 0:
            c = Fraction(sign * db) / dn
            ref = I
    if c is None:
        raise IdentityViolation("no subset with independent rays")
    for I, dn, sign, db in rows:
        if c * dn != sign * db:
            raise IdentityViolation(f"determinant identity fails at I={I}: "
                                    f"c*det(n_I)={c * dn}, sign*det(b_I)={sign * db}")
    return ExactSequenceReport(c, ref, len(rows), rows)
