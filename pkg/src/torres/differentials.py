"""The torus-invariant n-form and the toric Jacobian.

With the conventions of :mod:`torres.lattice` the form is
``Omega = sum_I det(n_I) xhat_I dx_I`` over increasing n-subsets ``I``.
The toric Jacobian ``J`` of ``f_0..f_n`` is characterised by
``J det(n_I) xhat_I = J(f_I)`` for every ``I``, where ``J(f_I)`` is the
``(n+1) x (n+1)`` determinant with top row ``f_0..f_n`` followed by the
partials with respect to the variables of ``I``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

from . import lattice, linalg
from .coxring import Monomial, Polynomial, is_homogeneous, partial
from .lattice import DegreeClass, Fan


class JacobianError(ValueError):
    pass


@dataclass(frozen=True)
class OmegaTerm:
    I: Tuple[int, ...]
    det_nI: int
    xhat_I: Monomial


@dataclass
class JacobianResult:
    J: Polynomial
    degree: DegreeClass
    reference_subset: Tuple[int, ...]
    witnesses: Dict[Tuple[int, ...], Polynomial] = field(default_factory=dict)


def _xhat(nrays: int, I: Sequence[int]) -> Monomial:
    return tuple(0 if i in I else 1 for i in range(nrays))


def omega_terms(fan: Fan) -> List[OmegaTerm]:
    fan.require_complete()
    terms = []
    for I in lattice.n_subsets(fan):
        d = lattice.det_nI(fan, I)
        if d:
            terms.append(OmegaTerm(I, d, _xhat(fan.nrays, I)))
    return terms


def poly_det(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Leibniz expansion; the matrices here are at most 4 x 4."""
    n = len(M)
    nvars = M[0][0].nvars
    total = Polynomial.zero(nvars)
    for perm in itertools.permutations(range(n)):
        term = Polynomial.constant(nvars, linalg.permutation_sign(perm))
        for i, j in enumerate(perm):
            term = term * M[i][j]
            if not term:
                break
        total = total + term
    return total


def subset_determinant(f_seq: Sequence[Polynomial], I: Sequence[int]) -> Polynomial:
    """J(f_I): rows (f_0..f_n) then (d f_j / d x_rho) for rho in I."""
    rows = [list(f_seq)]
    for rho in I:
        rows.append([partial(f, rho) for f in f_seq])
    return poly_det(rows)


def _common_degree(fan: Fan, f_seq: Sequence[Polynomial]) -> DegreeClass:
    if len(f_seq) != fan.rank + 1:
        raise JacobianError(f"need {fan.rank + 1} polynomials, got {len(f_seq)}")
    degree = None
    for k, f in enumerate(f_seq):
        if not f:
            continue
        d = is_homogeneous(fan, f)
        if d is None:
            raise JacobianError(f"f_{k} is not homogeneous")
        if degree is None:
            degree = d
        elif d != degree:
            raise JacobianError(f"f_{k} has degree {d}, expected {degree}")
    if degree is None:
        raise JacobianError("all polynomials are zero")
    return degree


def toric_jacobian(fan: Fan, f_seq: Sequence[Polynomial]) -> JacobianResult:
    """Toric Jacobian via one chart subset, cross-checked on every other subset."""
    fan.require_complete()
    f_seq = list(f_seq)
    alpha = _common_degree(fan, f_seq)
    terms = omega_terms(fan)
    ref = terms[0]
    numerator = subset_determinant(f_seq, ref.I)
    J = numerator.divide_monomial(ref.xhat_I)
    if J is None:
        raise JacobianError(f"J(f_I) for I={ref.I} is not divisible by xhat_I")
    J = J.scale(1 / ref.det_nI)
    ok, bad, witnesses = _check_all_subsets(fan, f_seq, J)
    if not ok:
        raise JacobianError(f"defining identity fails for I={bad}")
    expected = lattice.combine(fan, (fan.rank + 1, alpha), (-1, lattice.anticanonical(fan)))
    if J:
        got = is_homogeneous(fan, J)
        if got != expected:
            raise JacobianError(f"Jacobian has degree {got}, expected {expected}")
    return JacobianResult(J, expected, ref.I, witnesses)


def _check_all_subsets(fan: Fan, f_seq, J) -> Tuple[bool, Optional[Tuple[int, ...]], Dict]:
    witnesses = {}
    for I in lattice.n_subsets(fan):
        lhs = subset_determinant(f_seq, I)
        witnesses[I] = lhs
        d = lattice.det_nI(fan, I)
        rhs = J.shift(_xhat(fan.nrays, I)).scale(d) if d else Polynomial.zero(fan.nrays)
        if lhs != rhs:
            return False, I, witnesses
    return True, None, witnesses


@dataclass
class IdentityCheck:
    holds: bool
    offending_subset: Optional[Tuple[int, ...]] = None

    def __bool__(self):
        return self.holds


def verify_defining_identity(fan: Fan, f_seq: Sequence[Polynomial], J: Polynomial) -> IdentityCheck:
    """Check J(f_I) == J det(n_I) xhat_I for all n-subsets, dependent ones included."""
    ok, bad, _ = _check_all_subsets(fan, list(f_seq), J)
    return IdentityCheck(ok, bad)
