"""Polytopes of torus-invariant divisors and the monomial bases they index.

For a divisor ``sum a_rho D_rho`` the polytope is
``{m : <m, n_rho> >= -a_rho for all rho}``; its lattice points ``m`` are in
bijection with the monomials ``prod x_rho^(<m, n_rho> + a_rho)`` of the
graded piece of the Cox ring in that degree.
"""
from __future__ import annotations

import functools
import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from . import linalg
from .lattice import DegreeClass, Fan

Point = Tuple[Fraction, ...]


class UnboundedPolytopeError(ValueError):
    pass


@dataclass(frozen=True)
class TorusDivisor:
    a: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))


@dataclass(frozen=True)
class LatticePolytope:
    normals: Tuple[Tuple[int, ...], ...]
    offsets: Tuple[int, ...]
    vertices: Tuple[Point, ...]
    lattice_points: Tuple[Tuple[int, ...], ...]
    dimension: int
    normalized_volume: int

    def contains(self, m: Sequence) -> bool:
        return all(sum(x * y for x, y in zip(m, nr)) >= -a for nr, a in zip(self.normals, self.offsets))

    @property
    def is_empty(self) -> bool:
        return not self.vertices

    @property
    def is_lattice_polytope(self) -> bool:
        return all(x.denominator == 1 for v in self.vertices for x in v)


def _check_bounded(rays: Sequence[Sequence[int]], n: int) -> None:
    """Raise unless the recession cone {m : <m, n_rho> >= 0} is zero."""
    if linalg.rank(rays) < n:
        raise UnboundedPolytopeError("rays do not span N_R; region is unbounded")
    for sub in itertools.combinations(range(len(rays)), n - 1):
        vecs = [rays[i] for i in sub]
        if vecs and linalg.rank(vecs) < n - 1:
            continue
        if n == 1:
            dirs = [[1]]
        else:
            dirs = [linalg.nullspace(vecs)[0]]
        for d in dirs:
            for s in (1, -1):
                if all(s * sum(x * y for x, y in zip(d, r)) >= 0 for r in rays):
                    raise UnboundedPolytopeError(
                        f"region is unbounded in direction {[s * x for x in d]}")


def _affine_dim(points: Sequence[Point]) -> int:
    if not points:
        return -1
    p0 = points[0]
    return linalg.rank([[a - b for a, b in zip(p, p0)] for p in points[1:]]) if len(points) > 1 else 0


def _vertices(rays, a, n) -> List[Point]:
    verts = set()
    for I in itertools.combinations(range(len(rays)), n):
        A = [list(rays[i]) for i in I]
        if linalg.det(A) == 0:
            continue
        m = linalg.solve(A, [-a[i] for i in I])
        if all(sum(x * y for x, y in zip(m, r)) >= -ai for r, ai in zip(rays, a)):
            verts.add(tuple(m))
    return sorted(verts)


def _star_volume(vertices: List[Point], rays, a, dim: int) -> List[List[Point]]:
    """Triangulate the face spanned by ``vertices`` into ``dim``-simplices.

    Star triangulation from the lexicographically least vertex, recursing on
    the facets that avoid it. Facets of a face are cut out by further tight
    inequalities.
    """
    if dim == 0:
        return [[vertices[0]]]
    v0 = min(vertices)
    facets = set()
    for r, ai in zip(rays, a):
        tight = tuple(v for v in vertices if sum(x * y for x, y in zip(v, r)) == -ai)
        if len(tight) < len(vertices) and _affine_dim(list(tight)) == dim - 1:
            facets.add(tight)
    simplices = []
    for facet in sorted(facets):
        if v0 in facet:
            continue
        for s in _star_volume(list(facet), rays, a, dim - 1):
            simplices.append([v0] + s)
    return simplices


def polytope_of_divisor(fan: Fan, d: TorusDivisor | Sequence[int]) -> LatticePolytope:
    a = d.a if isinstance(d, TorusDivisor) else tuple(int(x) for x in d)
    if len(a) != fan.nrays:
        raise ValueError(f"divisor has {len(a)} coefficients, fan has {fan.nrays} rays")
    return _polytope(fan.rays, a)


@functools.lru_cache(maxsize=4096)
def _polytope(rays: Tuple[Tuple[int, ...], ...], a: Tuple[int, ...]) -> LatticePolytope:
    n = len(rays[0])
    _check_bounded(rays, n)
    verts = _vertices(rays, a, n)
    if not verts:
        return LatticePolytope(rays, a, (), (), -1, 0)
    lo = [math.floor(min(v[k] for v in verts)) for k in range(n)]
    hi = [math.ceil(max(v[k] for v in verts)) for k in range(n)]
    points = []
    for m in itertools.product(*(range(l, h + 1) for l, h in zip(lo, hi))):
        if all(sum(x * y for x, y in zip(m, r)) >= -ai for r, ai in zip(rays, a)):
            points.append(m)
    dim = _affine_dim(verts)
    volume = 0
    if dim == n:
        for simplex in _star_volume(verts, rays, a, n):
            s0 = simplex[0]
            volume += abs(linalg.det([[x - y for x, y in zip(p, s0)] for p in simplex[1:]]))
    volume = Fraction(volume)
    if volume.denominator != 1:
        # rational vertices can give a non-integral normalized volume
        return LatticePolytope(rays, a, tuple(verts), tuple(points), dim, volume)
    return LatticePolytope(rays, a, tuple(verts), tuple(points), dim, int(volume))


def monomial_basis(fan: Fan, alpha: DegreeClass) -> List[Tuple[int, ...]]:
    """Exponent vectors of a monomial basis of S_alpha, lexicographically descending."""
    P = polytope_of_divisor(fan, alpha.representative)
    a = alpha.representative
    monos = [tuple(sum(x * y for x, y in zip(m, r)) + ai for r, ai in zip(fan.rays, a))
             for m in P.lattice_points]
    return sorted(monos, reverse=True)


def cartier_data(fan: Fan, d: TorusDivisor | Sequence[int]):
    """Per maximal cone the integral m_sigma with <m_sigma, n_rho> = -a_rho on the cone, or None."""
    a = d.a if isinstance(d, TorusDivisor) else tuple(d)
    data = []
    for cone in fan.max_cones:
        A = [list(fan.rays[i]) for i in cone]
        data.append(linalg.solve_integer_system(A, [-a[i] for i in cone]))
    return data


def is_cartier(fan: Fan, d: TorusDivisor | Sequence[int]) -> bool:
    return all(m is not None for m in cartier_data(fan, d))


def is_ample(fan: Fan, d: TorusDivisor | Sequence[int]) -> bool:
    """Cartier plus strict convexity: <m_sigma, n_rho> > -a_rho off the cone."""
    fan.require_complete()
    a = d.a if isinstance(d, TorusDivisor) else tuple(d)
    for cone, m in zip(fan.max_cones, cartier_data(fan, a)):
        if m is None:
            return False
        for i, r in enumerate(fan.rays):
            if i not in cone and sum(x * y for x, y in zip(m, r)) <= -a[i]:
                return False
    return True
