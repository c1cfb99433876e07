"""Exact linear algebra over the integers and the rationals.

Everything here works on plain Python ``int`` / ``Fraction`` values held in
lists, so results are exact and independent of any floating point library.
Matrices are lists of rows.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

Matrix = List[List[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A: Sequence[Sequence]) -> list:
    if not A:
        return []
    return [list(col) for col in zip(*A)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], v: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, v)) for row in A]


def det(A: Sequence[Sequence]) -> Fraction | int:
    """Determinant by fraction-free (Bareiss) elimination.

    Integer input gives an integer result; rational input is handled by
    clearing denominators row by row.
    """
    n = len(A)
    if n == 0:
        return 1
    if any(len(row) != n for row in A):
        raise ValueError("determinant of a non-square matrix")
    scale = Fraction(1)
    M: List[List[int]] = []
    for row in A:
        if all(isinstance(x, int) for x in row):
            M.append(list(row))
            continue
        den = 1
        for x in row:
            den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
        M.append([int(Fraction(x) * den) for x in row])
        scale /= den
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    result = sign * M[n - 1][n - 1]
    if scale == 1:
        return result
    value = result * scale
    return int(value) if value.denominator == 1 else value


def rank(A: Sequence[Sequence]) -> int:
    echelon = SparseEchelon()
    for row in A:
        echelon.insert({j: x for j, x in enumerate(row) if x != 0})
    return echelon.rank


# ---------------------------------------------------------------------------
# Integer normal forms

def smith_normal_form(A: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix, Matrix]:
    """Return ``(U, D, V)`` with ``U @ A @ V == D`` and ``U, V`` unimodular.

    ``D`` is diagonal with nonnegative entries ``d_1 | d_2 | ...``.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row_dst += q * row_src
        D[dst] = [a + q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):
        for row in D:
            row[dst] += q * row[src]
        for row in V:
            row[dst] += q * row[src]

    t = 0
    while t < min(m, n):
        nonzero = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not nonzero:
            break
        _, i, j = min(nonzero)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            done = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    add_row(t, i, -q)
                    if D[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    add_col(t, j, -q)
                    if D[t][j]:
                        swap_cols(t, j)
                        done = False
            if not done:
                continue
            # divisibility: d_t must divide every remaining entry
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if D[i][j] % D[t][t]), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, D, V


def hermite_normal_form(rows: Sequence[Sequence[int]]) -> Matrix:
    """Row-style Hermite normal form with zero rows dropped.

    Pivots are positive and entries above a pivot are reduced into
    ``[0, pivot)``, so the result is a canonical basis of the row lattice.
    """
    H = [list(map(int, r)) for r in rows if any(r)]
    if not H:
        return []
    ncols = len(H[0])
    r = 0
    for c in range(ncols):
        # Euclid on column c among rows r..end
        while True:
            live = [i for i in range(r, len(H)) if H[i][c] != 0]
            if not live:
                break
            p = min(live, key=lambda i: abs(H[i][c]))
            H[r], H[p] = H[p], H[r]
            finished = True
            for i in range(r + 1, len(H)):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    if H[i][c]:
                        finished = False
            if finished:
                break
        if r < len(H) and H[r][c] != 0:
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
            for i in range(r):
                q = H[i][c] // H[r][c]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
            r += 1
        if r == len(H):
            break
    return [row for row in H if any(row)]


def integer_kernel(A: Sequence[Sequence[int]]) -> Matrix:
    """Basis (as rows, in Hermite normal form) of ``{x in Z^n : A x = 0}``."""
    n = len(A[0])
    _, D, V = smith_normal_form(A)
    r = sum(1 for i in range(min(len(D), n)) if D[i][i] != 0)
    basis = [[V[i][j] for i in range(n)] for j in range(r, n)]
    return hermite_normal_form(basis)


# ---------------------------------------------------------------------------
# Rational elimination

def _content(row: Dict[int, int]) -> int:
    g = 0
    for v in row.values():
        g = gcd(g, v)
        if g == 1:
            break
    return g


def _as_integer_row(row: Dict[int, Fraction | int]) -> Dict[int, int]:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction) and v.denominator != 1:
            den = den * v.denominator // gcd(den, v.denominator)
    return {k: int(v * den) for k, v in row.items() if v != 0}


class SparseEchelon:
    """Incremental row-echelon basis of a subspace of Q^N.

    Rows are sparse ``{column: value}`` dicts kept as primitive integer
    vectors (content divided out), so elimination is fraction free. Only the
    leading entry of each new row is eliminated, which is all ``rank`` and
    membership need; :meth:`reduce` does the full reduction.
    """

    def __init__(self):
        self.pivots: Dict[int, Dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def _eliminate(self, row: Dict[int, int], full: bool) -> Dict[int, int]:
        done = set()
        while row:
            cols = [c for c in row if c in self.pivots and c not in done] if full else None
            if full:
                if not cols:
                    break
                col = min(cols)
            else:
                col = min(row)
                if col not in self.pivots:
                    break
            prow = self.pivots[col]
            a, p = row[col], prow[col]
            g = gcd(a, p)
            ma, mp = p // g, a // g
            new = {k: v * ma for k, v in row.items()}
            for k, v in prow.items():
                s = new.get(k, 0) - mp * v
                if s:
                    new[k] = s
                else:
                    new.pop(k, None)
            c = _content(new)
            if c > 1:
                new = {k: v // c for k, v in new.items()}
            row = new
            done.add(col)
        return row

    def insert(self, row: Dict[int, Fraction | int]) -> bool:
        """Add a row; return True if it increased the rank."""
        reduced = self._eliminate(_as_integer_row(row), full=False)
        if not reduced:
            return False
        lead = min(reduced)
        if reduced[lead] < 0:
            reduced = {k: -v for k, v in reduced.items()}
        self.pivots[lead] = reduced
        return True

    def contains(self, row: Dict[int, Fraction | int]) -> bool:
        return not self._eliminate(_as_integer_row(row), full=False)


def solve(A: Sequence[Sequence], b: Sequence) -> Optional[List[Fraction]]:
    """One exact solution of ``A x = b`` or ``None`` if inconsistent.

    Free variables are set to zero, so the returned solution is the
    deterministic "first" solution of Gauss-Jordan elimination.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Fraction(x) for x in row] + [Fraction(bi)] for row, bi in zip(A, b)]
    pivot_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        nz = [j for j in range(c, n + 1) if M[r][j] != 0]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                row_i = M[i]
                for j in nz:
                    row_i[j] -= f * M[r][j]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    if any(M[i][n] != 0 for i in range(r, m)):
        return None
    x = [Fraction(0)] * n
    for i, c in enumerate(pivot_cols):
        x[c] = M[i][n]
    return x


def nullspace(A: Sequence[Sequence]) -> List[List[Fraction]]:
    """Basis of the right kernel ``{x : A x = 0}`` over Q (reduced form)."""
    m = len(A)
    n = len(A[0]) if m else 0
    M = [[Fraction(x) for x in row] for row in A]
    pivot_cols = []
    r = 0
    for c in range(n):
        p = next((i for i in range(r, m) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(m):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    free = [c for c in range(n) if c not in pivot_cols]
    basis = []
    for fc in free:
        v = [Fraction(0)] * n
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivot_cols):
            v[pc] = -M[i][fc]
        basis.append(v)
    return basis


def solve_integer_system(A: Sequence[Sequence[int]], b: Sequence[int]) -> Optional[List[int]]:
    """An integer solution of ``A x = b`` or ``None`` if none exists."""
    U, D, V = smith_normal_form(A)
    c = matvec(U, b)
    n = len(V)
    y = [0] * n
    for i in range(len(D)):
        d = D[i][i] if i < n else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return matvec(V, y)


def permutation_sign(perm: Iterable[int]) -> int:
    perm = list(perm)
    sign = 1
    seen = [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign
