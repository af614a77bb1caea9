"""Exact dense linear algebra over ``Fraction`` and over any field-like type.

Matrices are plain lists of rows. The routines only use ``+ - * /`` and a
comparison with ``0``, so they run unchanged on :class:`fractions.Fraction`
and on :class:`isotorus.field.FieldElement`.
"""
from fractions import Fraction
from math import gcd


def shape(A):
    return len(A), (len(A[0]) if A else 0)


def transpose(A):
    return [list(col) for col in zip(*A)]


def matmul(A, B):
    Bt = list(zip(*B))
    out = []
    for row in A:
        out_row = []
        for col in Bt:
            acc = 0
            for a, b in zip(row, col):
                acc = acc + a * b
            out_row.append(acc)
        out.append(out_row)
    return out


def matvec(A, v):
    out = []
    for row in A:
        acc = 0
        for a, b in zip(row, v):
            acc = acc + a * b
        out.append(acc)
    return out


def identity(n, one=1, zero=0):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def matpow(A, s):
    """``A**s`` for a square matrix and ``s >= 0`` by repeated squaring."""
    n = len(A)
    result = identity(n)
    base = [row[:] for row in A]
    while s:
        if s & 1:
            result = matmul(result, base)
        s >>= 1
        if s:
            base = matmul(base, base)
    return result


def row_echelon(A):
    """Gauss-Jordan reduction. Returns ``(R, pivots)`` with ``R`` fully reduced."""
    R = [row[:] for row in A]
    rows, cols = shape(R)
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if R[i][c] != 0), None)
        if p is None:
            continue
        R[r], R[p] = R[p], R[r]
        inv = 1 / R[r][c] if not isinstance(R[r][c], int) else Fraction(1, R[r][c])
        R[r] = [x * inv for x in R[r]]
        for i in range(rows):
            if i != r and R[i][c] != 0:
                f = R[i][c]
                R[i] = [x - f * y for x, y in zip(R[i], R[r])]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(A):
    return len(row_echelon(A)[1])


def det(A):
    """Determinant by elimination; exact for Fraction and field elements."""
    n = len(A)
    M = [[Fraction(x) if isinstance(x, int) else x for x in row] for row in A]
    result = 1
    for c in range(n):
        p = next((i for i in range(c, n) if M[i][c] != 0), None)
        if p is None:
            return 0 * result
        if p != c:
            M[c], M[p] = M[p], M[c]
            result = -result
        piv = M[c][c]
        result = result * piv
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / piv
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return result


def bareiss_det(A):
    """Fraction-free determinant of an integer matrix."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(row) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            p = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if p is None:
                return 0
            M[k], M[p] = M[p], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def solve(A, b):
    """Solve ``A x = b``; returns a particular solution or ``None`` if inconsistent.

    Free variables are set to zero.
    """
    rows, cols = shape(A)
    aug = [list(A[i]) + [b[i]] for i in range(rows)]
    R, pivots = row_echelon(aug)
    if cols in pivots:
        return None
    x = [0] * cols
    for r, c in enumerate(pivots):
        x[c] = R[r][cols]
    return x


def nullspace(A):
    """Basis of the right null space ``{x : A x = 0}`` as a list of vectors."""
    rows, cols = shape(A)
    R, pivots = row_echelon(A)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for r, c in enumerate(pivots):
            v[c] = -R[r][f]
        basis.append(v)
    return basis


def inverse(A):
    n = len(A)
    aug = [list(A[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)]
    R, pivots = row_echelon(aug)
    if pivots[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in R]


def content(A):
    """gcd of all entries of an integer matrix (0 for the zero matrix)."""
    g = 0
    for row in A:
        for x in row:
            g = gcd(g, x)
    return g


def to_integer_vector(v):
    """Clear denominators of a rational vector and divide out the content."""
    den = 1
    for x in v:
        den = den * Fraction(x).denominator // gcd(den, Fraction(x).denominator)
    w = [int(Fraction(x) * den) for x in v]
    g = 0
    for x in w:
        g = gcd(g, x)
    return [x // g for x in w] if g else w
