"""Exact integer and rational linear algebra.

Matrices are plain lists of rows. Integer matrices hold Python ``int``;
rational ones hold :class:`fractions.Fraction`. Every routine returns fresh
lists and never mutates its arguments.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .errors import SingularMatrixError

Matrix = list[list[int]]

#: Marker returned by :func:`lattice_index` for rank-deficient input.
INFINITE = "infinite"


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(M: Sequence[Sequence], cols: Optional[int] = None) -> list[list]:
    """Transpose ``M``. ``cols`` is needed only when ``M`` has no rows."""
    if not M:
        return [[] for _ in range(cols or 0)]
    return [list(col) for col in zip(*M)]


def matmul(A: Sequence[Sequence], B: Sequence[Sequence]) -> list[list]:
    Bt = transpose(B)
    return [[sum(a * b for a, b in zip(row, col)) for col in Bt] for row in A]


def matvec(A: Sequence[Sequence], x: Sequence) -> list:
    return [sum(a * b for a, b in zip(row, x)) for row in A]


def xgcd(a: int, b: int) -> tuple[int, int, int]:
    """Return ``(g, s, t)`` with ``s*a + t*b == g == gcd(a, b) >= 0``."""
    old_r, r = a, b
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    if old_r < 0:
        old_r, old_s, old_t = -old_r, -old_s, -old_t
    return old_r, old_s, old_t


def determinant(M: Sequence[Sequence[int]]) -> int:
    """Integer determinant by fraction-free (Bareiss) elimination."""
    n = len(M)
    if n == 0:
        return 1
    A = [list(row) for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if A[k][k] == 0:
            for i in range(k + 1, n):
                if A[i][k] != 0:
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) // prev
        prev = A[k][k]
    return sign * A[n - 1][n - 1]


def rank(M: Sequence[Sequence]) -> int:
    """Rank over the rationals. Accepts integer or Fraction entries."""
    A = [[Fraction(x) for x in row] for row in M]
    if not A:
        return 0
    rows, cols = len(A), len(A[0])
    r = 0
    for c in range(cols):
        pivot = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if pivot is None:
            continue
        A[r], A[pivot] = A[pivot], A[r]
        for i in range(r + 1, rows):
            if A[i][c] != 0:
                f = A[i][c] / A[r][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        r += 1
        if r == rows:
            break
    return r


def hermite_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix]:
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U @ M == H`` and ``U`` unimodular. ``H`` is upper
    row-echelon with positive pivots; entries above a pivot lie in
    ``[0, pivot)``. Zero rows sit at the bottom.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    H = [list(map(int, row)) for row in M]
    U = identity(m)
    pr = 0
    for c in range(n):
        if pr == m:
            break
        for i in range(pr + 1, m):
            b = H[i][c]
            if b == 0:
                continue
            a = H[pr][c]
            g, s, t = xgcd(a, b)
            ag, bg = a // g, b // g
            for X in (H, U):
                top, bot = X[pr], X[i]
                X[pr] = [s * x + t * y for x, y in zip(top, bot)]
                X[i] = [-bg * x + ag * y for x, y in zip(top, bot)]
        p = H[pr][c]
        if p == 0:
            continue
        if p < 0:
            H[pr] = [-x for x in H[pr]]
            U[pr] = [-x for x in U[pr]]
            p = -p
        for i in range(pr):
            q = H[i][c] // p
            if q:
                H[i] = [x - q * y for x, y in zip(H[i], H[pr])]
                U[i] = [x - q * y for x, y in zip(U[i], U[pr])]
        pr += 1
    return H, U


def smith_normal_form(M: Sequence[Sequence[int]]) -> tuple[Matrix, Matrix, Matrix]:
    """Smith normal form ``U @ M @ V == D``.

    ``U`` (m x m) and ``V`` (n x n) are unimodular, ``D`` is diagonal with
    nonnegative entries, each dividing the next.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    D = [list(map(int, row)) for row in M]
    U = identity(m)
    V = identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for X in (D, V):
            for row in X:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row dst += q * row src
        D[dst] = [x + q * y for x, y in zip(D[dst], D[src])]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    def add_col(dst, src, q):
        for X in (D, V):
            for row in X:
                row[dst] += q * row[src]

    for t in range(min(m, n)):
        while True:
            nonzero = [(abs(D[i][j]), i, j)
                       for i in range(t, m) for j in range(t, n) if D[i][j]]
            if not nonzero:
                return U, D, V
            _, i, j = min(nonzero)
            swap_rows(t, i)
            swap_cols(t, j)
            p = D[t][t]
            done = True
            for i in range(t + 1, m):
                q = D[i][t] // p
                if q:
                    add_row(i, t, -q)
                if D[i][t]:
                    done = False
            for j in range(t + 1, n):
                q = D[t][j] // p
                if q:
                    add_col(j, t, -q)
                if D[t][j]:
                    done = False
            if not done:
                continue
            # Divisibility: fold an offending row into row t and go again.
            bad = next((i for i in range(t + 1, m)
                        for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is None:
                break
            add_row(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
    return U, D, V


def invariant_factors(M: Sequence[Sequence[int]]) -> list[int]:
    """Nonzero diagonal entries of the Smith form of ``M``."""
    _, D, _ = smith_normal_form(M)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def solve_integer(A: Sequence[Sequence[int]], b: Sequence[int],
                  cols: Optional[int] = None):
    """Solve ``A @ x == b`` over the integers.

    Returns ``(x, kernel)`` where ``kernel`` is a lattice basis of the integer
    solutions of ``A @ x == 0``, or ``None`` when no integer solution exists.
    ``cols`` must be given when ``A`` has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (cols or 0)
    if m == 0:
        return [0] * n, [list(row) for row in identity(n)]
    U, D, V = smith_normal_form(A)
    c = matvec(U, b)
    y = [0] * n
    k = 0
    for i in range(min(m, n)):
        d = D[i][i]
        if d == 0:
            break
        if c[i] % d:
            return None
        y[i] = c[i] // d
        k += 1
    if any(c[i] for i in range(k, m)):
        return None
    x = matvec(V, y)
    Vt = transpose(V)
    kernel = [Vt[j] for j in range(k, n)]
    return x, kernel


def lattice_index(vectors: Sequence[Sequence[int]], dim: Optional[int] = None):
    """Index ``[Z^n : <vectors>]``, or :data:`INFINITE` when rank < n."""
    if dim is None:
        if not vectors:
            raise ValueError("dim is required for an empty vector list")
        dim = len(vectors[0])
    if dim == 0:
        return 1
    if not vectors:
        return INFINITE
    factors = invariant_factors(vectors)
    if len(factors) < dim:
        return INFINITE
    index = 1
    for d in factors:
        index *= d
    return index


def invert_rational(M: Sequence[Sequence]) -> list[list[Fraction]]:
    """Exact inverse by Gauss-Jordan elimination over the rationals."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ValueError("matrix must be square")
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(M)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if A[i][c] != 0), None)
        if pivot is None:
            raise SingularMatrixError("matrix is singular")
        A[c], A[pivot] = A[pivot], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for i in range(n):
            if i != c and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return [row[n:] for row in A]


def integer_inverse(M: Sequence[Sequence[int]]) -> Matrix:
    """Inverse of a unimodular matrix, as integers."""
    inv = invert_rational(M)
    if any(x.denominator != 1 for row in inv for x in row):
        raise ValueError("matrix is not unimodular")
    return [[int(x) for x in row] for row in inv]


def primitive(v: Sequence[int]) -> tuple[int, ...]:
    """Divide ``v`` by the gcd of its entries."""
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)


def canonical_direction(v: Sequence[int]) -> tuple[int, ...]:
    """Primitive representative of ``±v`` whose first nonzero entry is positive."""
    w = primitive(v)
    for x in w:
        if x:
            return w if x > 0 else tuple(-y for y in w)
    return w


def cofactor_normal(rows: Sequence[Sequence[int]]) -> list[int]:
    """Integer vector orthogonal to the ``k-1`` given rows of length ``k``.

    Entry ``i`` is the signed minor with column ``i`` deleted; the result is
    zero exactly when the rows are linearly dependent.
    """
    k = len(rows) + 1
    out = []
    for i in range(k):
        minor = [[row[j] for j in range(k) if j != i] for row in rows]
        out.append((-1) ** i * determinant(minor))
    return out
