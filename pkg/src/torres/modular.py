"""Modular shortcuts for the large exact linear systems.

Nothing here is trusted on its own: a rank computed modulo a prime is a lower
bound for the rank over Q, and every rational solution recovered by p-adic
lifting is checked exactly before it is returned. Callers fall back to the
plain exact routines whenever a function here returns ``None``.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

# p^2 * 2^11 < 2^63, so matrix-vector products mod p stay inside int64 for n < 2048
PRIME = 8388593          # largest prime below 2^23
MAX_SIZE = 2047
MAX_ENTRY = 1 << 20      # |M x| < 2^20 * 2^23 * 2^11 = 2^54 during lifting
MAX_STEPS = 4096

SparseVector = Dict[int, Fraction]


def integer_columns(columns: Sequence[SparseVector]) -> Optional[List[Dict[int, int]]]:
    """Scale each column to integers; None if an entry is too large for int64 lifting."""
    out = []
    for col in columns:
        den = 1
        for v in col.values():
            den = math.lcm(den, Fraction(v).denominator)
        icol = {}
        for k, v in col.items():
            x = Fraction(v) * den
            if abs(x) >= MAX_ENTRY:
                return None
            icol[k] = int(x)
        out.append(icol)
    return out


def dense(columns: Sequence[Dict[int, int]], nrows: int) -> np.ndarray:
    M = np.zeros((nrows, len(columns)), dtype=np.int64)
    for j, col in enumerate(columns):
        for i, v in col.items():
            M[i, j] = v
    return M


def rref_mod_p(M: np.ndarray, p: int = PRIME) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form modulo p and the pivot columns."""
    A = np.mod(M, p)
    rows, cols = A.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c])
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r, c:] = A[r, c:] * pow(int(A[r, c]), p - 2, p) % p
        f = A[:, c].copy()
        f[r] = 0
        hit = np.flatnonzero(f)
        if hit.size:
            A[np.ix_(hit, np.arange(c, cols))] = (A[hit, c:] - np.outer(f[hit], A[r, c:])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank_mod_p(M: np.ndarray, p: int = PRIME) -> int:
    return len(rref_mod_p(M, p)[1])


def inverse_mod_p(M: np.ndarray, p: int = PRIME) -> Optional[np.ndarray]:
    n = M.shape[0]
    R, pivots = rref_mod_p(np.hstack([M, np.eye(n, dtype=np.int64)]), p)
    if pivots[:n] != list(range(n)):
        return None
    return R[:, n:]


def rational_reconstruct(a: int, m: int) -> Optional[Fraction]:
    """The fraction u/v with u = v a (mod m) and |u|, v <= sqrt(m/2), if any."""
    bound = math.isqrt(m // 2)
    r0, r1 = m, a % m
    s0, s1 = 0, 1
    while r1 > bound:
        q = r0 // r1
        r0, r1 = r1, r0 - q * r1
        s0, s1 = s1, s0 - q * s1
    if s1 == 0 or abs(s1) > bound:
        return None
    return Fraction(r1, s1)


def dixon_solve(M: np.ndarray, b: Sequence[int], p: int = PRIME) -> Optional[List[Fraction]]:
    """Exact solution of the square system M x = b by p-adic lifting.

    Returns None if M is singular mod p or the lifting budget runs out.
    The result is checked against M x = b with Python integers.
    """
    n = M.shape[0]
    if n == 0 or n > MAX_SIZE or M.shape != (n, n) or np.abs(M).max(initial=0) >= MAX_ENTRY:
        return None
    inv = inverse_mod_p(M, p)
    if inv is None:
        return None
    rows = [[int(v) for v in row] for row in M]
    b = [int(v) for v in b]
    r = np.array(b, dtype=object)
    x = [0] * n
    pk = 1
    check_at = 2
    for step in range(1, MAX_STEPS + 1):
        xi = inv @ np.mod(r, p).astype(np.int64) % p
        # r stays below n * max|M| + |b| in size, so the update is exact in object ints
        r = (r - M @ xi) // p
        xi = xi.tolist()
        x = [a + pk * v for a, v in zip(x, xi)]
        pk *= p
        if step == check_at or step == MAX_STEPS:
            check_at *= 2
            cand = _reconstruct_all(x, pk)
            if cand is not None and _satisfies(rows, b, cand):
                return cand
    return None


def _reconstruct_all(x: Sequence[int], m: int) -> Optional[List[Fraction]]:
    out = []
    for a in x:
        q = rational_reconstruct(a, m)
        if q is None:
            return None
        out.append(q)
    return out


def _satisfies(rows: Sequence[Sequence[int]], b: Sequence[int], x: Sequence[Fraction]) -> bool:
    den = 1
    for v in x:
        den = math.lcm(den, v.denominator)
    X = [int(v * den) for v in x]
    return all(sum(a * y for a, y in zip(row, X) if a) == den * bi for row, bi in zip(rows, b))


# ---------------------------------------------------------------------------
# The two questions the residue module asks

def spans_everything(columns: Sequence[SparseVector], dim: int) -> Optional[bool]:
    """True if the columns certainly span Q^dim; None when undecided."""
    if dim == 0:
        return True
    icols = integer_columns(columns)
    if icols is None or len(icols) < dim:
        return None
    return True if rank_mod_p(dense(icols, dim).T) == dim else None


def corank_one_decomposition(columns: Sequence[SparseVector], dim: int, jac: SparseVector,
                             g: SparseVector) -> Optional[Tuple[Fraction, Dict[int, Fraction]]]:
    """Write g = c jac + sum y_j column_j when the columns span a hyperplane.

    Returns (c, {column index: y_j}) with every identity verified exactly,
    or None if the modular route cannot certify the answer.
    """
    if dim == 1:
        if any(columns) or not jac.get(0):
            return None
        return Fraction(g.get(0, 0)) / Fraction(jac[0]), {}
    icols = integer_columns(columns)
    if icols is None or dim < 2 or dim > MAX_SIZE:
        return None
    A = dense(icols, dim)
    _, piv = rref_mod_p(A)
    if len(piv) != dim - 1:
        return None
    AP = A[:, piv]

    # functional lam with lam . column = 0, normalised at a coordinate where it is nonzero
    _, row_piv = rref_mod_p(AP.T)
    free = [k for k in range(dim) if k not in set(row_piv)]
    if len(free) != 1:
        return None
    k = free[0]
    unit = np.zeros((1, dim), dtype=np.int64)
    unit[0, k] = 1
    lam = dixon_solve(np.vstack([AP.T, unit]), [0] * (dim - 1) + [1])
    if lam is None:
        return None
    # exact: lam kills every spanning vector, so their rank is at most dim - 1
    if any(sum((lam[i] * v for i, v in col.items()), Fraction(0)) for col in columns):
        return None
    lam_j = sum((lam[i] * Fraction(v) for i, v in jac.items()), Fraction(0))
    if lam_j == 0:
        return None
    c = sum((lam[i] * Fraction(v) for i, v in g.items()), Fraction(0)) / lam_j

    # cofactors: solve the square subsystem on the rows other than k
    rest = {i: Fraction(g.get(i, 0)) - c * Fraction(jac.get(i, 0)) for i in set(g) | set(jac)}
    den = 1
    for v in rest.values():
        den = math.lcm(den, v.denominator)
    keep = [i for i in range(dim) if i != k]
    rhs = [int(rest.get(i, 0) * den) for i in keep]
    y = dixon_solve(AP[keep, :], rhs)
    if y is None:
        return None
    # undo the integer scaling of the selected columns
    coeffs = {}
    for yj, j in zip(y, piv):
        if yj:
            scale = _column_scale(columns[j], icols[j])
            coeffs[j] = yj * scale / den
    return c, coeffs


def _column_scale(col: SparseVector, icol: Dict[int, int]) -> Fraction:
    i = next(iter(icol))
    return Fraction(icol[i]) / Fraction(col[i])
