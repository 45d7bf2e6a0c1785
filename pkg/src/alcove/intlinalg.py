"""Exact linear algebra: rational matrices and integer Smith normal form.

Rational matrices are tuples of tuples of Fraction; integer matrices are
lists of lists of int.  Everything here is exact, no floating point.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Sequence

FracMatrix = tuple[tuple[Fraction, ...], ...]


def fmat(rows: Sequence[Sequence]) -> FracMatrix:
    return tuple(tuple(Fraction(x) for x in row) for row in rows)


def mat_vec(M: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in M)


def mat_mul(A: Sequence[Sequence], B: Sequence[Sequence]) -> FracMatrix:
    n, k, m = len(A), len(B), len(B[0])
    return tuple(
        tuple(sum(A[i][t] * B[t][j] for t in range(k)) for j in range(m))
        for i in range(n)
    )


def identity(n: int) -> FracMatrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n))
        for i in range(n)
    )


def mat_inv(M: Sequence[Sequence]) -> FracMatrix:
    """Invert a square rational matrix by Gauss-Jordan elimination."""
    n = len(M)
    aug = [
        [Fraction(M[i][j]) for j in range(n)]
        + [Fraction(1) if j == i else Fraction(0) for j in range(n)]
        for i in range(n)
    ]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [a - f * b for a, b in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def det(M: Sequence[Sequence]) -> Fraction:
    n = len(M)
    A = [[Fraction(x) for x in row] for row in M]
    result = Fraction(1)
    for col in range(n):
        pivot = next((r for r in range(col, n) if A[r][col] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != col:
            A[col], A[pivot] = A[pivot], A[col]
            result = -result
        result *= A[col][col]
        inv = 1 / A[col][col]
        for r in range(col + 1, n):
            if A[r][col] != 0:
                f = A[r][col] * inv
                A[r] = [a - f * b for a, b in zip(A[r], A[col])]
    return result


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    # returns (x, y, g) with x*a + y*b == g == gcd(a, b) >= 0
    x, nx = 1, 0
    y, ny = 0, 1
    g, ng = a, b
    while ng:
        q = g // ng
        x, nx = nx, x - q * nx
        y, ny = ny, y - q * ny
        g, ng = ng, g - q * ng
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


def column_reduce(A: Sequence[Sequence[int]], ncols: int) -> tuple[list[list[int]], list[list[int]]]:
    """Diagonalize an integer matrix by unimodular row and column operations.

    Returns (D, T) where D is diagonal (no divisibility normalization) and T
    records the column operations, so that the columns of T indexed by zero
    columns of D form a basis of the integer kernel of A.
    """
    for row in A:
        assert len(row) == ncols
    D = [list(row) for row in A]
    m, n = len(D), ncols
    T = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def row_improve(i1: int, i2: int, j: int) -> None:
        a, b = D[i1][j], D[i2][j]
        if b == 0:
            return
        if a == 0:
            D[i1], D[i2] = D[i2], D[i1]
            return
        if b % a == 0:
            q = -(b // a)
            D[i2] = [x + q * y for x, y in zip(D[i2], D[i1])]
            return
        x, y, g = _xgcd(a, b)
        ag, bg = a // g, b // g
        r1, r2 = D[i1], D[i2]
        D[i1] = [x * u + y * v for u, v in zip(r1, r2)]
        D[i2] = [-bg * u + ag * v for u, v in zip(r1, r2)]

    def col_improve(j1: int, j2: int, i: int) -> None:
        a, b = D[i][j1], D[i][j2]
        if b == 0:
            return
        if a == 0:
            for row in D:
                row[j1], row[j2] = row[j2], row[j1]
            for row in T:
                row[j1], row[j2] = row[j2], row[j1]
            return
        if b % a == 0:
            q = -(b // a)
            for row in D:
                row[j2] += q * row[j1]
            for row in T:
                row[j2] += q * row[j1]
            return
        x, y, g = _xgcd(a, b)
        ag, bg = a // g, b // g
        for row in D:
            u, v = row[j1], row[j2]
            row[j1] = x * u + y * v
            row[j2] = -bg * u + ag * v
        for row in T:
            u, v = row[j1], row[j2]
            row[j1] = x * u + y * v
            row[j2] = -bg * u + ag * v

    for t in range(min(m, n)):
        while True:
            pivot = None
            for i in range(t, m):
                for j in range(t, n):
                    if D[i][j] != 0:
                        pivot = (i, j)
                        break
                if pivot:
                    break
            if pivot is None:
                return D, T
            pi, pj = pivot
            if pi != t:
                D[t], D[pi] = D[pi], D[t]
            if pj != t:
                for row in D:
                    row[t], row[pj] = row[pj], row[t]
                for row in T:
                    row[t], row[pj] = row[pj], row[t]
            for i in range(t + 1, m):
                row_improve(t, i, t)
            if all(D[t][j] == 0 for j in range(t + 1, n)):
                break
            for j in range(t + 1, n):
                col_improve(t, j, t)
            if all(D[i][t] == 0 for i in range(t + 1, m)):
                break
    return D, T


def rank(A: Sequence[Sequence[int]], ncols: int) -> int:
    if not A or ncols == 0:
        return 0
    D, _ = column_reduce(A, ncols)
    return sum(1 for t in range(min(len(D), ncols)) if D[t][t] != 0)


def kernel_basis(A: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Basis of the integer kernel {x : A x = 0}, as a list of column vectors."""
    if ncols == 0:
        return []
    if not A:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    D, T = column_reduce(A, ncols)
    m = len(D)
    free = [j for j in range(ncols) if j >= m or D[j][j] == 0]
    return [[T[i][j] for i in range(ncols)] for j in free]


def invariant_factors(A: Sequence[Sequence[int]], ncols: int) -> list[int]:
    """Nonzero invariant factors d_1 | d_2 | ... of an integer matrix."""
    if not A or ncols == 0:
        return []
    D, _ = column_reduce(A, ncols)
    diag = [abs(D[t][t]) for t in range(min(len(D), ncols)) if D[t][t] != 0]
    # fix divisibility: replace pairs by (gcd, lcm) until chained
    changed = True
    while changed:
        changed = False
        for i in range(len(diag)):
            for j in range(i + 1, len(diag)):
                if diag[j] % diag[i] != 0:
                    g = gcd(diag[i], diag[j])
                    diag[i], diag[j] = g, diag[i] * diag[j] // g
                    changed = True
    return sorted(diag)
