"""Integer lattice algorithms: Smith and Hermite normal forms, saturation.

Everything works on lists of rows of Python ints, so entries never overflow.
"""
from math import gcd

from . import linalg


def _swap_rows(M, i, j):
    M[i], M[j] = M[j], M[i]


def _swap_cols(M, i, j):
    for row in M:
        row[i], row[j] = row[j], row[i]


def _add_row(M, dst, src, f):
    # row dst += f * row src
    M[dst] = [a + f * b for a, b in zip(M[dst], M[src])]


def _add_col(M, dst, src, f):
    for row in M:
        row[dst] += f * row[src]


def smith_normal_form(A, with_inverses=False):
    """Smith normal form ``U * A * V = D`` of an integer matrix.

    Pivots are chosen as the entry of least absolute value in the active
    block, which keeps intermediate growth down. ``U`` and ``V`` are
    unimodular and ``D`` is diagonal (same shape as ``A``) with nonnegative
    entries ``d_1 | d_2 | ...``.

    With ``with_inverses=True`` also returns ``U^-1`` and ``V^-1``.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = linalg.identity(m)
    V = linalg.identity(n)
    Ui = linalg.identity(m)
    Vi = linalg.identity(n)

    def row_op(dst, src, f):
        _add_row(D, dst, src, f)
        _add_row(U, dst, src, f)
        _add_col(Ui, src, dst, -f)

    def col_op(dst, src, f):
        _add_col(D, dst, src, f)
        _add_col(V, dst, src, f)
        _add_row(Vi, src, dst, -f)

    def row_swap(i, j):
        _swap_rows(D, i, j)
        _swap_rows(U, i, j)
        _swap_cols(Ui, i, j)

    def col_swap(i, j):
        _swap_cols(D, i, j)
        _swap_cols(V, i, j)
        _swap_rows(Vi, i, j)

    t = 0
    while t < min(m, n):
        # least nonzero entry in the active block
        best = None
        for i in range(t, m):
            for j in range(t, n):
                if D[i][j] and (best is None or abs(D[i][j]) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        row_swap(t, best[0])
        col_swap(t, best[1])
        while True:
            done = True
            p = D[t][t]
            for i in range(t + 1, m):
                if D[i][t]:
                    row_op(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        done = False
            for j in range(t + 1, n):
                if D[t][j]:
                    col_op(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        done = False
            if done:
                # divisibility against the rest of the block
                bad = None
                for i in range(t + 1, m):
                    for j in range(t + 1, n):
                        if D[i][j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                row_op(t, bad, 1)
                continue
            # move the smallest remaining entry of row/column t into the pivot
            best = (t, t)
            for i in range(t + 1, m):
                if D[i][t] and abs(D[i][t]) < abs(D[best[0]][best[1]]):
                    best = (i, t)
            for j in range(t + 1, n):
                if D[t][j] and abs(D[t][j]) < abs(D[best[0]][best[1]]):
                    best = (t, j)
            if best[0] != t:
                row_swap(t, best[0])
            if best[1] != t:
                col_swap(t, best[1])
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
            for row in Ui:
                row[t] = -row[t]
        t += 1
    if with_inverses:
        return U, D, V, Ui, Vi
    return U, D, V


def invariant_factors(A):
    """Nonzero diagonal entries of the Smith form (including ones)."""
    _, D, _ = smith_normal_form(A)
    out = []
    for i in range(min(len(D), len(D[0]) if D else 0)):
        if D[i][i]:
            out.append(D[i][i])
    return out


def integer_kernel(A):
    """Basis (as columns of a matrix) of ``{x in Z^n : A x = 0}``; saturated."""
    n = len(A[0])
    if not A:
        return linalg.identity(n)
    _, D, V = smith_normal_form(A)
    r = sum(1 for i in range(min(len(D), n)) if D[i][i])
    return [row[r:] for row in V]


def saturation(cols):
    """Basis (columns) of ``span_Q(cols) ∩ Z^n`` for an ``n x r`` integer matrix."""
    n = len(cols)
    if not cols or not cols[0]:
        return [[] for _ in range(n)]
    left = integer_kernel(linalg.transpose(cols))   # n x k, columns y with y^T A = 0
    if not left or not left[0]:
        return linalg.identity(n)
    return integer_kernel(linalg.transpose(left))


def is_primitive(cols) -> bool:
    """Columns form a basis of a saturated sublattice (all invariant factors 1)."""
    if not cols or not cols[0]:
        return True
    fs = invariant_factors(cols)
    return len(fs) == len(cols[0]) and all(f == 1 for f in fs)


def hermite_rows(rows):
    """Row-style Hermite normal form of the row span (zero rows dropped).

    Pivots are positive and entries above each pivot lie in ``[0, pivot)``.
    """
    H = [list(map(int, r)) for r in rows if any(r)]
    if not H:
        return []
    ncols = len(H[0])
    r = 0
    for c in range(ncols):
        if r == len(H):
            break
        while True:
            nz = [i for i in range(r, len(H)) if H[i][c]]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(H[i][c]))
            H[r], H[piv] = H[piv], H[r]
            changed = False
            for i in range(r + 1, len(H)):
                if H[i][c]:
                    q = H[i][c] // H[r][c]
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
                    if H[i][c]:
                        changed = True
            if not changed:
                break
        if r < len(H) and H[r][c]:
            if H[r][c] < 0:
                H[r] = [-x for x in H[r]]
            for i in range(r):
                q = H[i][c] // H[r][c]
                if q:
                    H[i] = [a - q * b for a, b in zip(H[i], H[r])]
            r += 1
    return [row for row in H if any(row)]


def hermite_columns(cols):
    """Canonical column basis: transpose of the row HNF of the transposed matrix."""
    if not cols or not cols[0]:
        return [list() for _ in cols]
    rows = hermite_rows(linalg.transpose(cols))
    if not rows:
        return [[] for _ in cols]
    return linalg.transpose(rows)


def complete_basis(cols):
    """Extend a saturated basis (columns of an ``n x r`` matrix) to a unimodular ``n x n`` matrix.

    The first ``r`` columns of the result are the input columns.
    """
    n = len(cols)
    r = len(cols[0]) if cols and cols[0] else 0
    if r == 0:
        return linalg.identity(n)
    U, D, V, Ui, Vi = smith_normal_form(cols, with_inverses=True)
    if any(D[i][i] != 1 for i in range(r)):
        raise ValueError("columns do not span a saturated sublattice")
    return [list(cols[i]) + Ui[i][r:] for i in range(n)]


def column_span_contains(cols, vectors) -> bool:
    """Whether every column of ``vectors`` is an integer combination of ``cols``."""
    if not vectors or not vectors[0]:
        return True
    n = len(cols)
    U, D, V = smith_normal_form(cols)
    r = sum(1 for i in range(min(n, len(D[0]))) if D[i][i])
    img = linalg.matmul(U, vectors)
    for j in range(len(vectors[0])):
        for i in range(n):
            x = img[i][j]
            if i < r:
                if x % D[i][i]:
                    return False
            elif x:
                return False
    return True


def vector_content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, x)
    return g
