"""Univariate polynomials as coefficient lists, lowest degree first.

Coefficients are ints or Fractions (any ring for :func:`charpoly`). The zero
polynomial is the empty list.
"""
from __future__ import annotations

from fractions import Fraction
from math import gcd


def trim(p):
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return p


def degree(p) -> int:
    return len(trim(p)) - 1


def add(p, q):
    n = max(len(p), len(q))
    return trim([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def sub(p, q):
    return add(p, [-c for c in q])


def mul(p, q):
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            out[i + j] += a * b
    return trim(out)


def scale(p, c):
    return trim([c * a for a in p])


def power(p, k):
    out = [1]
    for _ in range(k):
        out = mul(out, p)
    return out


def evaluate(p, x):
    acc = 0
    for c in reversed(p):
        acc = acc * x + c
    return acc


def derivative(p):
    return trim([i * p[i] for i in range(1, len(p))])


def divmod_poly(a, b):
    """Quotient and remainder over the rationals."""
    a = [Fraction(c) for c in trim(a)]
    b = [Fraction(c) for c in trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        f = a[-1] / b[-1]
        k = len(a) - len(b)
        q[k] = f
        for i, c in enumerate(b):
            a[i + k] -= f * c
        a = trim(a)
    return trim(q), a


def monic(p):
    p = trim(p)
    return [Fraction(c) / p[-1] for c in p] if p else []


def poly_gcd(a, b):
    a, b = trim(a), trim(b)
    while b:
        a, b = b, divmod_poly(a, b)[1]
    return monic(a)


def primitive_part(p):
    """Integer polynomial with coprime coefficients and positive leading term."""
    p = trim(p)
    if not p:
        return []
    den = 1
    for c in p:
        d = Fraction(c).denominator
        den = den * d // gcd(den, d)
    ints = [int(Fraction(c) * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    if ints[-1] < 0:
        ints = [-c for c in ints]
    return ints


def squarefree_part(p):
    """``p / gcd(p, p')`` as a primitive integer polynomial."""
    p = trim(p)
    if degree(p) < 1:
        return primitive_part(p)
    g = poly_gcd(p, derivative(p))
    return primitive_part(divmod_poly(p, g)[0])


def is_squarefree(p) -> bool:
    return degree(poly_gcd(p, derivative(p))) == 0


def reverse(p, d=None):
    """``x^d p(1/x)``."""
    p = trim(p)
    d = degree(p) if d is None else d
    return trim(list(reversed(p + [0] * (d + 1 - len(p)))))


def to_str(p, var="x"):
    terms = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
        if mono and c == 1:
            terms.append(mono)
        elif mono and c == -1:
            terms.append("-" + mono)
        else:
            terms.append(f"{c}{'*' + mono if mono else ''}")
    return " + ".join(terms).replace("+ -", "- ") if terms else "0"


# characteristic polynomials

def charpoly(A):
    """Monic characteristic polynomial ``det(x I - A)`` by Berkowitz's algorithm.

    Division free, so it works over the integers and over any commutative
    ring supporting ``+``, ``-`` and ``*``.
    """
    n = len(A)
    if n == 0:
        return [1]
    zero = A[0][0] * 0
    one = zero + 1
    # vect holds det(x I - A_k) coefficients highest first
    vect = [one, -A[0][0]]
    for r in range(1, n):
        # A_{r+1} = [[A_r, C], [R, a]] with C column, R row
        C = [A[i][r] for i in range(r)]
        R = [A[r][j] for j in range(r)]
        a = A[r][r]
        # Toeplitz column: 1, -a, -R C, -R A C, -R A^2 C, ...
        col = [one, -a]
        v = C
        for _ in range(r):
            col.append(-sum((R[j] * v[j] for j in range(r)), zero))
            v = [sum((A[i][j] * v[j] for j in range(r)), zero) for i in range(r)]
        # multiply lower-triangular Toeplitz (r+2) x (r+1) by vect
        new = []
        for i in range(r + 2):
            acc = zero
            for j in range(min(i, r) + 1):
                if i - j < len(col):
                    acc = acc + col[i - j] * vect[j]
            new.append(acc)
        vect = new
    return list(reversed(vect))


def matrix_evaluate(p, A):
    """``p(A)`` by Horner's rule."""
    n = len(A)
    out = [[0] * n for _ in range(n)]
    for c in reversed(p):
        out = [[sum(out[i][k] * A[k][j] for k in range(n)) for j in range(n)] for i in range(n)]
        for i in range(n):
            out[i][i] += c
    return out


# real roots

def sturm_sequence(p):
    p = trim(p)
    seq = [[Fraction(c) for c in p], [Fraction(c) for c in derivative(p)]]
    while trim(seq[-1]):
        r = divmod_poly(seq[-2], seq[-1])[1]
        if not r:
            break
        seq.append([-c for c in r])
    return [trim(s) for s in seq if trim(s)]


def _sign_changes(values):
    signs = [v for v in values if v != 0]
    return sum(1 for a, b in zip(signs, signs[1:]) if (a > 0) != (b > 0))


def count_real_roots(p, a, b, seq=None) -> int:
    """Number of distinct real roots of ``p`` in ``(a, b]`` (rational endpoints)."""
    seq = seq if seq is not None else sturm_sequence(p)
    a, b = Fraction(a), Fraction(b)
    return (_sign_changes([evaluate(s, a) for s in seq])
            - _sign_changes([evaluate(s, b) for s in seq]))


def count_real_roots_closed(p, a, b) -> int:
    """Distinct real roots in ``[a, b]``."""
    extra = 1 if evaluate(p, Fraction(a)) == 0 else 0
    return count_real_roots(p, a, b) + extra


def root_bound(p) -> Fraction:
    """Cauchy bound: every complex root has modulus below it."""
    p = trim(p)
    lead = abs(Fraction(p[-1]))
    return 1 + max((abs(Fraction(c)) / lead for c in p[:-1]), default=Fraction(0))


def count_distinct_real_roots(p) -> int:
    B = root_bound(p)
    return count_real_roots(p, -B, B)


# Schur-Cohn

def schur_cohn_inside(p) -> bool:
    """Whether every root of ``p`` lies strictly inside the unit circle.

    Schur-Cohn reduction for real coefficients: with ``p*(x) = x^n p(1/x)``,
    ``p`` has all roots in the open disk iff ``|p(0)| < |lc(p)|`` and
    ``(lc(p) p - p(0) p*) / x`` has all roots in the open disk (Rouche on the
    unit circle).
    """
    p = [Fraction(c) for c in trim(p)]
    while degree(p) >= 1:
        a0, an = p[0], p[-1]
        if abs(a0) >= abs(an):
            return False
        star = reverse(p, degree(p))
        t = sub(scale(p, an), scale(star, a0))
        p = t[1:]
    return True


def all_roots_outside_unit_circle(p) -> bool:
    p = trim(p)
    if not p or p[0] == 0:
        return False
    return schur_cohn_inside(reverse(p))
