"""Exact integer linear algebra: Smith normal form and cokernels.

The Smith normal form here is the classical elimination algorithm over Z,
tracking unimodular factors so that A = U @ S @ V exactly.  Pivots are the
smallest nonzero entries in absolute value (ties broken by lowest row then
column), which keeps growth tame and the output deterministic.

`snf_oracle_minor_gcd` is an independent check: the k-th determinantal
divisor D_k is the gcd of all k x k minors, and the invariant factors are
the successive quotients D_k / D_{k-1}.  It shares no code with the
elimination path.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

from .matrix import IntMatrix


@dataclass(frozen=True)
class SNFResult:
    U: IntMatrix
    S: IntMatrix
    V: IntMatrix
    diag: tuple[int, ...]


@dataclass(frozen=True)
class CokernelResult:
    """Structure of Z^rows / column-span(A) as Z^free_rank + sum of Z/d_i."""

    free_rank: int
    torsion_factors: tuple[int, ...]


def smith_normal_form(A: IntMatrix) -> SNFResult:
    """Diagonalize A over Z: returns U, S, V with A = U @ S @ V.

    U and V are unimodular, S is diagonal-rectangular with non-negative
    entries d_1 | d_2 | ... (zeros last).
    """
    m, n = A.rows, A.cols
    M = [list(row) for row in A.data]
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    # Invariant: A == U @ M @ V after every elementary step.  A row
    # operation M := E@M therefore updates U := U@inv(E), and a column
    # operation M := M@F updates V := inv(F)@V.

    def row_swap(i, j):
        M[i], M[j] = M[j], M[i]
        for r in range(m):
            U[r][i], U[r][j] = U[r][j], U[r][i]

    def col_swap(i, j):
        for r in range(m):
            M[r][i], M[r][j] = M[r][j], M[r][i]
        V[i], V[j] = V[j], V[i]

    def row_add(i, j, q):
        # row i of M += q * row j
        Mi, Mj = M[i], M[j]
        for c in range(n):
            Mi[c] += q * Mj[c]
        for r in range(m):
            U[r][j] -= q * U[r][i]

    def col_add(i, j, q):
        # column i of M += q * column j
        for r in range(m):
            M[r][i] += q * M[r][j]
        Vi, Vj = V[i], V[j]
        for c in range(n):
            Vj[c] -= q * Vi[c]

    def row_negate(i):
        M[i] = [-x for x in M[i]]
        for r in range(m):
            U[r][i] = -U[r][i]

    def find_pivot(t):
        best = None
        for i in range(t, m):
            for j in range(t, n):
                x = M[i][j]
                if x != 0 and (best is None or abs(x) < abs(M[best[0]][best[1]])):
                    best = (i, j)
        return best

    t = 0
    limit = min(m, n)
    while t < limit:
        piv = find_pivot(t)
        if piv is None:
            break
        if piv[0] != t:
            row_swap(t, piv[0])
        if piv[1] != t:
            col_swap(t, piv[1])
        while True:
            if M[t][t] < 0:
                row_negate(t)
            pivot = M[t][t]
            dirty = False
            for i in range(t + 1, m):
                if M[i][t] != 0:
                    q = M[i][t] // pivot
                    if q:
                        row_add(i, t, -q)
                    if M[i][t] != 0:
                        dirty = True
            for j in range(t + 1, n):
                if M[t][j] != 0:
                    q = M[t][j] // pivot
                    if q:
                        col_add(j, t, -q)
                    if M[t][j] != 0:
                        dirty = True
            if dirty:
                # Remainders are strictly smaller than the pivot; re-seat
                # the minimum and keep reducing.
                piv = find_pivot(t)
                if piv[0] != t:
                    row_swap(t, piv[0])
                if piv[1] != t:
                    col_swap(t, piv[1])
                continue
            # Row and column t are clear; enforce divisibility of the rest.
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if M[i][j] % pivot != 0:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_add(t, offender, 1)
        t += 1

    S = IntMatrix(M)
    diag = tuple(M[i][i] for i in range(limit))
    return SNFResult(U=IntMatrix(U), S=S, V=IntMatrix(V), diag=diag)


def cokernel(A: IntMatrix) -> CokernelResult:
    """Cokernel of the map Z^cols -> Z^rows given by A's columns."""
    diag = smith_normal_form(A).diag
    nonzero = [d for d in diag if d != 0]
    return CokernelResult(
        free_rank=A.rows - len(nonzero),
        torsion_factors=tuple(d for d in nonzero if d > 1),
    )


def det_int(rows) -> int:
    """Exact determinant via fraction-free (Bareiss) elimination."""
    n = len(rows)
    M = [list(r) for r in rows]
    if any(len(r) != n for r in M):
        raise ValueError("determinant requires a square matrix")
    sign = 1
    prev = 1
    for t in range(n - 1):
        if M[t][t] == 0:
            for i in range(t + 1, n):
                if M[i][t] != 0:
                    M[t], M[i] = M[i], M[t]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(t + 1, n):
            for j in range(t + 1, n):
                M[i][j] = (M[i][j] * M[t][t] - M[i][t] * M[t][j]) // prev
            M[i][t] = 0
        prev = M[t][t]
    return sign * M[n - 1][n - 1]


def snf_oracle_minor_gcd(A: IntMatrix, size_cap: int = 6) -> list[int]:
    """Invariant factors via determinantal divisors (independent of SNF).

    Enumerates all k x k minors, so the smaller dimension is capped.
    """
    m, n = A.rows, A.cols
    limit = min(m, n)
    if limit > size_cap:
        raise ValueError(f"minor-gcd oracle limited to min dimension {size_cap}")
    out: list[int] = []
    d_prev = 1
    vanished = False
    for s in range(1, limit + 1):
        if vanished:
            out.append(0)
            continue
        g = 0
        for rsel in combinations(range(m), s):
            for csel in combinations(range(n), s):
                minor = det_int([[A.data[i][j] for j in csel] for i in rsel])
                g = gcd(g, minor)
        if g == 0:
            vanished = True
            out.append(0)
        else:
            out.append(g // d_prev)
            d_prev = g
    return out


def rational_rank(A: IntMatrix) -> int:
    """Rank over Q via fraction-free Gaussian elimination."""
    M = [list(row) for row in A.data]
    m, n = A.rows, A.cols
    rank = 0
    row = 0
    for col in range(n):
        pivot_row = None
        for i in range(row, m):
            if M[i][col] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        M[row], M[pivot_row] = M[pivot_row], M[row]
        p = M[row][col]
        for i in range(row + 1, m):
            f = M[i][col]
            if f:
                M[i] = [x * p - f * y for x, y in zip(M[i], M[row])]
        rank += 1
        row += 1
        if row == m:
            break
    return rank
