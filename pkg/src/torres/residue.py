"""Toric residues by the Jacobian normalization.

For ``f_0..f_n`` in ``S_beta`` without common zero on ``X`` and ``g`` in the
critical degree ``rho = (n+1) beta - beta_0``, the quotient
``S_rho / <f>_rho`` is one dimensional and spanned by the toric Jacobian
``J``. Writing ``g = c J + sum f_i h_i`` the residue is
``c * n! vol(Delta_beta)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import lattice, linalg, modular, polytopes
from .coxring import Monomial, Polynomial, is_homogeneous, toric_derivative
from .differentials import JacobianError, toric_jacobian
from .lattice import DegreeClass, Fan


class PreconditionError(ValueError):
    """Input violates a hypothesis of the residue theory.

    ``assumption`` names the hypothesis so front ends can report it.
    """

    def __init__(self, assumption: str, message: str):
        super().__init__(f"{assumption}: {message}")
        self.assumption = assumption


class InvariantViolation(AssertionError):
    """An identity that must hold under the preconditions failed."""


AMPLE = "ampleness"
NO_COMMON_ZERO = "no common zero"
CRITICAL_DEGREE = "critical degree"
SEQUENCE = "sequence shape"
NONDEGENERATE = "nondegeneracy"
SIMPLICIAL = "simplicial fan"


@dataclass(frozen=True)
class GradedPieceBasis:
    degree: DegreeClass
    monomials: Tuple[Monomial, ...]
    index: Dict[Monomial, int] = field(compare=False, repr=False)

    @property
    def dimension(self) -> int:
        return len(self.monomials)

    def vector(self, p: Polynomial) -> Dict[int, Fraction]:
        """Coordinates of ``p`` in this basis; raises if p has a foreign term."""
        out = {}
        for m, c in p.terms.items():
            if m not in self.index:
                raise ValueError(f"monomial {m} is not in the graded piece {self.degree}")
            out[self.index[m]] = c
        return out

    def polynomial(self, coords: Sequence) -> Polynomial:
        nv = len(self.degree.representative)
        return Polynomial(nv, {m: c for m, c in zip(self.monomials, coords) if c})


def graded_piece(fan: Fan, alpha: DegreeClass) -> GradedPieceBasis:
    monos = tuple(polytopes.monomial_basis(fan, alpha))
    return GradedPieceBasis(alpha, monos, {m: i for i, m in enumerate(monos)})


@dataclass
class IdealPiece:
    """The degree-gamma part of the ideal generated by a sequence of polynomials."""
    basis: GradedPieceBasis
    spanning: List[Tuple[int, Monomial, Dict[int, Fraction]]]  # (generator index, multiplier, vector)
    rank: int
    echelon: linalg.SparseEchelon = field(repr=False)

    @property
    def codimension(self) -> int:
        return self.basis.dimension - self.rank

    def contains(self, p: Polynomial) -> bool:
        return self.echelon.contains(self.basis.vector(p))


def _degree_of_sequence(fan: Fan, f_seq: Sequence[Polynomial], beta: Optional[DegreeClass]) -> DegreeClass:
    deg = beta
    for k, f in enumerate(f_seq):
        if not f:
            continue
        d = is_homogeneous(fan, f)
        if d is None:
            raise PreconditionError(SEQUENCE, f"f_{k} is not homogeneous")
        if deg is None:
            deg = d
        elif d != deg:
            raise PreconditionError(SEQUENCE, f"f_{k} has degree {d}, expected {deg}")
    if deg is None:
        raise PreconditionError(SEQUENCE, "cannot infer a degree from zero polynomials")
    return deg


def _spanning_vectors(fan: Fan, f_seq: Sequence[Polynomial], gamma: DegreeClass, beta: DegreeClass):
    basis = graded_piece(fan, gamma)
    quotient_degree = lattice.combine(fan, (1, gamma), (-1, beta))
    multipliers = polytopes.monomial_basis(fan, quotient_degree)
    spanning = [(i, m, basis.vector(f.shift(m))) for i, f in enumerate(f_seq) for m in multipliers]
    return basis, spanning


def ideal_graded_piece(fan: Fan, f_seq: Sequence[Polynomial], gamma: DegreeClass,
                       beta: Optional[DegreeClass] = None) -> IdealPiece:
    beta = _degree_of_sequence(fan, f_seq, beta)
    basis, spanning = _spanning_vectors(fan, f_seq, gamma, beta)
    echelon = linalg.SparseEchelon()
    for _, _, vec in spanning:
        echelon.insert(vec)
    return IdealPiece(basis, spanning, echelon.rank, echelon)


def quotient_dimension(fan: Fan, f_seq: Sequence[Polynomial], gamma: DegreeClass,
                       beta: Optional[DegreeClass] = None) -> int:
    return ideal_graded_piece(fan, f_seq, gamma, beta).codimension


def _require_ample(fan: Fan, beta: DegreeClass) -> None:
    if not polytopes.is_ample(fan, beta.representative):
        raise PreconditionError(AMPLE, f"degree {beta} (divisor {list(beta.representative)}) is not ample")


def _require_sequence(fan: Fan, beta: DegreeClass, f_seq: Sequence[Polynomial]) -> None:
    if len(f_seq) != fan.rank + 1:
        raise PreconditionError(SEQUENCE, f"need {fan.rank + 1} sections, got {len(f_seq)}")
    _degree_of_sequence(fan, f_seq, beta)


def check_condition3(fan: Fan, beta: DegreeClass, f_seq: Sequence[Polynomial]) -> bool:
    """True iff the sections have no common zero on X.

    Decided by ``S_{(n+2) beta} = <f>_{(n+2) beta}``: without a common zero
    the quotient ring vanishes from degree (n+2) beta on, while a common zero
    keeps every graded quotient nonzero for base-point-free beta.
    """
    fan.require_complete()
    _require_ample(fan, beta)
    _require_sequence(fan, beta, f_seq)
    gamma = lattice.combine(fan, (fan.rank + 2, beta))
    basis, spanning = _spanning_vectors(fan, f_seq, gamma, beta)
    if modular.spans_everything([v for _, _, v in spanning], basis.dimension):
        return True
    return quotient_dimension(fan, f_seq, gamma, beta) == 0


def critical_quotient_report(fan: Fan, beta: DegreeClass, f_seq: Sequence[Polynomial]) -> dict:
    """Dimensions of S/<f> at the critical degree and at (n+2) beta."""
    rho = lattice.critical_degree(fan, beta)
    top = lattice.combine(fan, (fan.rank + 2, beta))
    at_rho = ideal_graded_piece(fan, f_seq, rho, beta)
    at_top = ideal_graded_piece(fan, f_seq, top, beta)
    return {"dim_S_rho": at_rho.basis.dimension, "quotient_dim_rho": at_rho.codimension,
            "dim_S_top": at_top.basis.dimension, "quotient_dim_top": at_top.codimension}


@dataclass
class ResidueCertificate:
    c: Fraction
    cofactors: List[Polynomial]
    residue_value: Fraction
    deg_F: int
    jacobian: Polynomial
    degree: DegreeClass

    def verify(self, g: Polynomial, f_seq: Sequence[Polynomial]) -> bool:
        total = self.jacobian.scale(self.c)
        for f, h in zip(f_seq, self.cofactors):
            total = total + f * h
        return total == g and self.residue_value == self.c * self.deg_F


def normalized_volume(fan: Fan, beta: DegreeClass) -> int:
    return polytopes.polytope_of_divisor(fan, beta.representative).normalized_volume


def toric_residue(fan: Fan, beta: DegreeClass, f_seq: Sequence[Polynomial], g: Polynomial,
                  check: bool = True) -> ResidueCertificate:
    """Residue of g against f_0..f_n with an exact certificate.

    ``check=False`` skips the no-common-zero test (the caller has already run
    it); the one-dimensionality of the critical quotient is always verified.
    """
    fan.require_complete()
    f_seq = list(f_seq)
    if check:
        if not check_condition3(fan, beta, f_seq):
            raise PreconditionError(NO_COMMON_ZERO, "the sections share a zero on X")
    else:
        _require_ample(fan, beta)
        _require_sequence(fan, beta, f_seq)
    rho = lattice.critical_degree(fan, beta)
    if g:
        dg = is_homogeneous(fan, g)
        if dg != rho:
            raise PreconditionError(CRITICAL_DEGREE, f"g has degree {dg}, residues need degree {rho}")
    try:
        jac = toric_jacobian(fan, f_seq).J
    except JacobianError as exc:
        raise InvariantViolation(str(exc)) from exc

    basis, spanning = _spanning_vectors(fan, f_seq, rho, beta)
    deg_F = normalized_volume(fan, beta)
    fast = modular.corank_one_decomposition([v for _, _, v in spanning], basis.dimension,
                                            basis.vector(jac), basis.vector(g))
    if fast is not None:
        c, coeffs = fast
        cert = ResidueCertificate(c, _cofactors(f_seq, spanning, coeffs), c * deg_F, deg_F, jac, rho)
        if cert.verify(g, f_seq):
            return cert
    return _exact_residue(fan, beta, f_seq, g, jac, rho, deg_F)


def _cofactors(f_seq, spanning, coeffs: Dict[int, Fraction]) -> List[Polynomial]:
    nv = f_seq[0].nvars
    terms: List[Dict] = [{} for _ in f_seq]
    for col, y in coeffs.items():
        i, m, _ = spanning[col]
        terms[i][m] = terms[i].get(m, 0) + y
    return [Polynomial(nv, t) for t in terms]


def _exact_residue(fan, beta, f_seq, g, jac, rho, deg_F) -> ResidueCertificate:
    """Dense exact solve; used when the modular route cannot certify its answer."""
    piece = ideal_graded_piece(fan, f_seq, rho, beta)
    if piece.codimension != 1:
        raise InvariantViolation(f"critical quotient has dimension {piece.codimension}, expected 1")
    basis = piece.basis
    ncols = 1 + len(piece.spanning)
    A = [[Fraction(0)] * ncols for _ in range(basis.dimension)]
    for k, c in basis.vector(jac).items():
        A[k][0] = c
    for col, (_, _, vec) in enumerate(piece.spanning, start=1):
        for k, c in vec.items():
            A[k][col] = c
    rhs = [Fraction(0)] * basis.dimension
    for k, c in basis.vector(g).items():
        rhs[k] = c
    x = linalg.solve(A, rhs)
    if x is None:
        raise InvariantViolation("g is not in span(J) + <f>_rho")
    if piece.contains(jac):
        raise InvariantViolation("toric Jacobian lies in the ideal; c is not unique")

    c = x[0]
    coeffs = {col - 1: x[col] for col in range(1, ncols) if x[col]}
    cert = ResidueCertificate(c, _cofactors(f_seq, piece.spanning, coeffs), c * deg_F, deg_F, jac, rho)
    if not cert.verify(g, f_seq):
        raise InvariantViolation("certificate does not re-expand to g")
    return cert


# ---------------------------------------------------------------------------
# Jacobian ideals of a single section

def j0_generators(fan: Fan, f: Polynomial) -> List[Polynomial]:
    """x_rho * df/dx_rho for every ray."""
    return [toric_derivative(f, i) for i in range(fan.nrays)]


def first_independent_subset(fan: Fan) -> Tuple[int, ...]:
    for I in lattice.n_subsets(fan):
        if lattice.det_nI(fan, I):
            return I
    raise InvariantViolation("no independent subset of rays")


def reduced_sequence(fan: Fan, f: Polynomial) -> List[Polynomial]:
    I = first_independent_subset(fan)
    return [f] + [toric_derivative(f, i) for i in I]


@dataclass
class NondegeneracyResult:
    nondegenerate: bool
    reduced_generators: List[Polynomial]
    subset: Tuple[int, ...]
    generation_verified: bool

    def __bool__(self):
        return self.nondegenerate


def _same_span(a: IdealPiece, b: IdealPiece) -> bool:
    if a.rank != b.rank:
        return False
    return all(a.echelon.contains(v) for _, _, v in b.spanning)


def is_nondegenerate(fan: Fan, beta: DegreeClass, f: Polynomial) -> NondegeneracyResult:
    """Whether the toric derivatives of f have no common zero on X.

    Uses the reduced sequence (f, x_rho_i df/dx_rho_i) over the first
    independent subset and checks that it generates the same critical-degree
    piece as all toric derivatives.
    """
    fan.require_complete()
    _require_ample(fan, beta)
    if f and is_homogeneous(fan, f) != beta:
        raise PreconditionError(SEQUENCE, f"f is not homogeneous of degree {beta}")
    I = first_independent_subset(fan)
    seq = reduced_sequence(fan, f)
    verdict = check_condition3(fan, beta, seq)
    rho = lattice.critical_degree(fan, beta)
    full = ideal_graded_piece(fan, j0_generators(fan, f), rho, beta)
    reduced = ideal_graded_piece(fan, seq, rho, beta)
    return NondegeneracyResult(verdict, seq, I, _same_span(full, reduced))


@dataclass
class J1Report:
    holds: bool
    quotient_dim_rho: int        # dim S_rho / J0(f)_rho
    quotient_dim_shifted: int    # dim S_{rho - beta_0} / J1(f)_{rho - beta_0}
    j1_basis: List[Polynomial]
    surjective: bool

    def __bool__(self):
        return self.holds


def j1_isomorphism_check(fan: Fan, beta: DegreeClass, f: Polynomial) -> J1Report:
    """Multiplication by prod x_rho: S_{rho-beta_0}/J1(f) -> S_rho/J0(f) is bijective."""
    fan.require_complete()
    if not fan.simplicial:
        raise PreconditionError(SIMPLICIAL, "the ideal quotient J0 : prod x_rho needs a simplicial fan")
    nd = is_nondegenerate(fan, beta, f)
    if not nd:
        raise PreconditionError(NONDEGENERATE, "f is degenerate (its toric derivatives share a zero)")
    rho = lattice.critical_degree(fan, beta)
    shifted = lattice.combine(fan, (1, rho), (-1, lattice.anticanonical(fan)))
    J0 = ideal_graded_piece(fan, j0_generators(fan, f), rho, beta)
    source = graded_piece(fan, shifted)
    target = J0.basis

    # columns: images of the source monomials, then the J0 spanning vectors
    images = [target.vector(Polynomial.monomial(tuple(a + 1 for a in m))) for m in source.monomials]
    cols = images + [v for _, _, v in J0.spanning]
    M = [[Fraction(0)] * len(cols) for _ in range(target.dimension)]
    for j, vec in enumerate(cols):
        for k, c in vec.items():
            M[k][j] = c
    kernel = linalg.nullspace(M)
    k = source.dimension
    j1_vectors = [v[:k] for v in kernel if any(v[:k])]
    j1_rank = linalg.rank(j1_vectors) if j1_vectors else 0
    j1_basis = [source.polynomial(v) for v in _independent(j1_vectors)]
    span = linalg.SparseEchelon()
    for vec in cols:
        span.insert(vec)
    surjective = span.rank == target.dimension
    q0 = J0.codimension
    q1 = source.dimension - j1_rank
    return J1Report(q0 == 1 and q1 == 1 and surjective, q0, q1, j1_basis, surjective)


def _independent(vectors):
    echelon = linalg.SparseEchelon()
    out = []
    for v in vectors:
        if echelon.insert({i: x for i, x in enumerate(v) if x}):
            out.append(v)
    return out
