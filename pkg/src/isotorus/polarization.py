"""Polarization type of an isogeny from the characteristic polynomial of ``L``.

An isogeny is called (eigenvalue-criterion) ``q``-polarized when ``L`` is
diagonalizable and all its eigenvalues have modulus ``sqrt(q) > 1``; then
``q^n = deg``. It is int-amplified when every eigenvalue has modulus > 1.

The modulus test is exact. With ``D = |det L|`` the eigenvalues of ``L^n``
must all have modulus ``sqrt(D)``. For ``P = charpoly(L^n)`` of degree ``d``
this holds iff

* ``x^d P(D/x) = P(0) P(x)`` with ``P(0) = +-D^(d/2)`` (root set closed under
  ``x -> D/x``; when the sign is negative ``P`` is replaced by ``P^2``),
* writing ``P(x) = x^(d/2) h(x + D/x)``, all roots of ``h`` are real and lie
  in ``[-2 sqrt(D), 2 sqrt(D)]``.

The last condition is checked on ``k(z)`` defined by ``h(y) h(-y) = +-k(y^2)``:
every root of ``k`` is real and in ``[0, 4D]``, which Sturm sequences decide
with integer endpoints.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

import mpmath

from . import linalg, polys
from .errors import (
    NonNegativeDiscriminant,
    NotIsogeny,
    NotRational,
    PrecisionExhausted,
    ZeroTrace,
)
from .field import (
    FieldElement,
    decide,
    field_make,
    integer_nth_root,
    interval_context,
    numeric_embed,
    squarefree_decomposition,
)
from .kernel import kernel_group
from .torus import ComplexTorus, Endomorphism, endo_make, torus_make

POLARIZED_INTEGER = "PolarizedInteger"
NUMERICALLY_POLARIZED = "NumericallyPolarized"
INT_AMPLIFIED = "IntAmplified"
NONE = "None"


@dataclass
class PolarizationReport:
    char_poly_L: list
    degree: int
    classification: str
    q: object = None                 # int, or an interval for irrational q
    diagonalizable: bool = False
    equal_moduli: bool = False
    int_amplified: bool = False
    numeric_check: dict = field(default_factory=dict)

    @property
    def polarized(self) -> bool:
        return self.classification in (POLARIZED_INTEGER, NUMERICALLY_POLARIZED)

    @property
    def q_integer(self):
        return self.q if self.classification == POLARIZED_INTEGER else None

    def describe(self) -> str:
        if self.classification == POLARIZED_INTEGER:
            return f"eigenvalue-criterion polarized, q = {self.q}"
        if self.classification == NUMERICALLY_POLARIZED:
            return f"eigenvalue-criterion polarized, q = {self.degree}^(1/n) ~ {self.q}"
        if self.classification == INT_AMPLIFIED:
            return "int-amplified, not polarized"
        return "neither polarized nor int-amplified"

    def to_json(self):
        q = self.q
        if q is not None and not isinstance(q, int):
            q = {"lower": str(q.a), "upper": str(q.b)}
        return {
            "char_poly_L": list(self.char_poly_L),
            "degree": self.degree,
            "classification": self.classification,
            "q": q,
            "diagonalizable": self.diagonalizable,
            "equal_moduli": self.equal_moduli,
            "int_amplified": self.int_amplified,
            "description": self.describe(),
            "numeric_check": self.numeric_check,
        }


def char_poly(L):
    """Monic integer characteristic polynomial of a square integer matrix."""
    return [int(c) for c in polys.charpoly([list(map(int, r)) for r in L])]


def is_diagonalizable(L) -> bool:
    """Minimal polynomial squarefree, i.e. ``rad(charpoly)(L) = 0``."""
    rad = polys.squarefree_part(char_poly(L))
    Z = polys.matrix_evaluate(rad, [list(r) for r in L])
    return all(x == 0 for row in Z for x in row)


def _reciprocal_sign(P, Q):
    """``s`` with ``x^d P(Q/x) = s Q^(d/2) P(x)``, or ``None``."""
    d = polys.degree(P)
    if d % 2:
        return None
    lhs = [P[d - j] * Q ** (d - j) for j in range(d + 1)]   # coefficient of x^j
    half = Q ** (d // 2)
    for s in (1, -1):
        if lhs == [s * half * c for c in P]:
            return s
    return None


def _trace_transform(P, Q):
    """``h`` with ``P(x) = x^(d/2) h(x + Q/x)`` for a ``Q``-self-reciprocal ``P``."""
    P = [Fraction(c) for c in P]
    m = polys.degree(P) // 2
    h = [Fraction(0)] * (m + 1)
    rest = P[:]
    # peel off (x + Q/x)^k x^m from the top
    for k in range(m, -1, -1):
        c = rest[m + k] if m + k < len(rest) else Fraction(0)
        h[k] = c
        if c == 0:
            continue
        # x^m (x + Q/x)^k = sum_j C(k,j) Q^j x^(m+k-2j)
        for j in range(k + 1):
            rest[m + k - 2 * j] -= c * comb(k, j) * Q ** j
    if any(rest):
        raise ArithmeticError("polynomial is not self-reciprocal")
    return polys.trim(h)


def _even_square(h):
    """``k`` with ``h(y) h(-y) = +-k(y^2)``."""
    hm = [c * (-1) ** i for i, c in enumerate(h)]
    prod_ = polys.mul(h, hm)
    if any(prod_[i] for i in range(1, len(prod_), 2)):
        raise ArithmeticError("h(y) h(-y) is not even")
    return [prod_[i] for i in range(0, len(prod_), 2)]


def moduli_all_equal(P, Q) -> bool:
    """Whether every root of the integer polynomial ``P`` has modulus ``sqrt(Q)``."""
    P = polys.trim(P)
    s = _reciprocal_sign(P, Q)
    if s is None:
        return False
    if s < 0:
        P = polys.mul(P, P)
    h = _trace_transform(P, Q)
    k = polys.squarefree_part(_even_square(h))
    if polys.degree(k) < 1:
        return True
    inside = polys.count_real_roots_closed(k, 0, 4 * Q)
    return inside == polys.degree(k)


def all_moduli_exceed_one(P) -> bool:
    return polys.all_roots_outside_unit_circle(P)


# numeric oracle

def certified_roots(p, precision):
    """Interval boxes around the roots of a squarefree integer polynomial.

    Weierstrass inclusion: the disks ``|z - z_i| <= n |p(z_i)| / |lc prod (z_i - z_j)|``
    cover all roots, and disjoint disks hold one root each. Returns ``None``
    when the disks overlap at this precision.
    """
    p = polys.trim(p)
    n = polys.degree(p)
    if n < 1:
        return []
    ctx = interval_context(precision)
    with mpmath.workprec(precision + 20):
        approx = mpmath.polyroots(list(reversed(p)), maxsteps=200 + 20 * n,
                                  extraprec=precision + 40)
    if n == 1:
        approx = [approx] if not isinstance(approx, list) else approx
    centers = [ctx.mpc(ctx.mpf(mpmath.re(z)), ctx.mpf(mpmath.im(z))) for z in approx]
    boxes = []
    for i, z in enumerate(centers):
        val = ctx.mpc(0, 0)
        for c in reversed(p):
            val = val * z + c
        den = ctx.mpc(p[-1], 0)
        for j, w in enumerate(centers):
            if j != i:
                den = den * (z - w)
        mag_den = ctx.sqrt(den.real ** 2 + den.imag ** 2)
        if mag_den.a <= 0:
            return None
        r = (n * ctx.sqrt(val.real ** 2 + val.imag ** 2) / mag_den).b
        boxes.append(ctx.mpc(ctx.mpf([z.real.a - r, z.real.b + r]),
                             ctx.mpf([z.imag.a - r, z.imag.b + r])))
    for i in range(n):
        for j in range(i + 1, n):
            bi, bj = boxes[i], boxes[j]
            if not (bi.real.b < bj.real.a or bj.real.b < bi.real.a
                    or bi.imag.b < bj.imag.a or bj.imag.b < bi.imag.a):
                return None
    return boxes


def _modulus_squared(box, ctx):
    return box.real ** 2 + box.imag ** 2


def numeric_moduli(P, precision=256):
    """Interval enclosures of ``|z|^2`` over the distinct roots of ``P``.

    Precision doubles until the Weierstrass disks separate.
    """
    sq = polys.squarefree_part(P)

    def attempt(prec):
        boxes = certified_roots(sq, prec)
        if boxes is None:
            return None
        ctx = interval_context(prec)
        return [_modulus_squared(b, ctx) for b in boxes], prec

    return decide(lambda prec: attempt(prec), start=precision)


def q_enclosure(D: int, n: int, precision=256):
    ctx = interval_context(precision)
    return ctx.mpf(D) ** (ctx.mpf(1) / n)


def numeric_cross_check(report: PolarizationReport, L, n: int, precision=256):
    """Compare the exact verdicts against interval enclosures of the eigenvalue moduli.

    Returns a dict of findings; a disagreement raises ``AssertionError``.
    """
    P = report.char_poly_L
    moduli, prec = numeric_moduli(P, precision)
    out = {"precision": prec}
    D = report.degree
    if D >= 1:
        qbox = q_enclosure(D, n, prec)
        contains = [m.a <= qbox.b and qbox.a <= m.b for m in moduli]
        if report.equal_moduli and not all(contains):
            raise AssertionError("numeric moduli contradict the exact equal-modulus verdict")
        if not report.equal_moduli:
            # some modulus must separate from q once precision is high enough
            def separated(p):
                ms, _ = numeric_moduli(P, p)
                qb = q_enclosure(D, n, p)
                if any(m.b < qb.a or qb.b < m.a for m in ms):
                    return True
                return None
            try:
                decide(separated, start=prec)
            except PrecisionExhausted:
                raise AssertionError("numeric moduli cannot separate from q") from None
        out["moduli_squared"] = [[str(m.a), str(m.b)] for m in moduli]
        out["q_interval"] = [str(qbox.a), str(qbox.b)]
    above = [m.a > 1 for m in moduli]
    if report.int_amplified and not all(above):
        raise AssertionError("numeric moduli contradict int-amplified verdict")
    if not report.int_amplified and all(above):
        raise AssertionError("numeric moduli contradict the non-int-amplified verdict")
    out["agrees"] = True
    return out


def classify_lattice_action(L, n: int, *, cross_check=True, precision=256) -> PolarizationReport:
    """Classification from the integer ``2n x 2n`` lattice action alone."""
    L = [list(map(int, r)) for r in L]
    det = linalg.bareiss_det(L)
    if det == 0:
        raise NotIsogeny("endomorphism has infinite kernel")
    D = abs(det)
    P = char_poly(L)
    diag = is_diagonalizable(L)
    Pn = char_poly(linalg.matpow(L, n)) if n > 1 else P
    equal = moduli_all_equal(Pn, D)
    amplified = all_moduli_exceed_one(P)
    q = None
    if diag and equal and D > 1:
        qi = integer_nth_root(D, n)
        if qi is not None:
            cls, q = POLARIZED_INTEGER, qi
        else:
            cls, q = NUMERICALLY_POLARIZED, q_enclosure(D, n, precision)
    elif amplified:
        cls = INT_AMPLIFIED
    else:
        cls = NONE
    report = PolarizationReport(P, D, cls, q, diag, equal, amplified)
    if cross_check:
        report.numeric_check = numeric_cross_check(report, L, n, precision)
    return report


def classify_polarization(e: Endomorphism, *, cross_check=True, precision=256) -> PolarizationReport:
    return classify_lattice_action(e.L, e.dim, cross_check=cross_check, precision=precision)


# 1-dimensional scalars

def trace_integrality_scalar(lam, torus: ComplexTorus):
    """``(lam + conj lam, lam conj lam)`` as integers for a lattice-preserving scalar."""
    lam = torus.spec.coerce(lam)
    n = torus.dim
    e = endo_make(torus, [[lam if i == j else torus.spec.zero() for j in range(n)]
                          for i in range(n)])
    t_elem = lam + lam.conj()
    q_elem = lam * lam.conj()
    if not t_elem.is_rational() or not q_elem.is_rational():
        raise NotRational("trace or norm of the scalar is irrational")
    t, q = t_elem.rational_value(), q_elem.rational_value()
    if t.denominator != 1 or q.denominator != 1:
        raise NotRational("trace or norm of the scalar is not integral")
    t, q = int(t), int(q)
    G = kernel_group(e)
    assert q % G.exponent == 0, "kernel exponent does not divide the norm"
    return t, q


# Shioda-Mitani tori

def shioda_mitani_make(a: int, b: int, c: int) -> ComplexTorus:
    """``C/(Z + Z tau) x C/(Z + Z a tau)`` with ``tau = (-b + sqrt(b^2 - 4ac)) / 2a``."""
    if a <= 0 or c <= 0:
        raise ValueError("a and c must be positive")
    disc = b * b - 4 * a * c
    if disc >= 0:
        raise NonNegativeDiscriminant(f"discriminant {disc} is not negative")
    f, d = squarefree_decomposition(disc)
    spec = field_make([d])
    tau = (spec.coerce(-b) + f * spec.sqrt(d)) / (2 * a)
    z, one = spec.zero(), spec.one()
    lattice = [[one, tau, z, z], [z, z, one, a * tau]]
    return torus_make(spec, 2, lattice)


def eigenratio(e: Endomorphism) -> FieldElement:
    """``det(M) / tr(M)^2`` as an exact field element."""
    tr = e.trace_M()
    if tr == 0:
        raise ZeroTrace("trace is zero; eigenvalues are negatives of each other")
    return e.det_M / (tr * tr)


@dataclass
class GammaCheck:
    ratio: Fraction
    n_value: int | None
    in_gamma: bool

    def to_json(self):
        return {"ratio": str(self.ratio), "n": self.n_value, "in_gamma": self.in_gamma}


def eigenratio_gamma_check(e: Endomorphism, a: int) -> GammaCheck:
    """Membership of ``det/tr^2`` in ``{a^2/n : n >= 1} ∩ [1/4, oo)``."""
    if e.dim != 2:
        raise ValueError("expects a 2-dimensional torus")
    r = eigenratio(e)
    if not r.is_rational():
        raise NotRational("det(M)/tr(M)^2 is not rational")
    ratio = r.rational_value()
    n_value = None
    if ratio > 0:
        m = Fraction(a * a) / ratio
        if m.denominator == 1:
            n_value = int(m)
    in_gamma = n_value is not None and ratio >= Fraction(1, 4)
    return GammaCheck(ratio, n_value, in_gamma)


def eigenratio_numeric(e: Endomorphism, precision=256):
    """Interval evaluation of ``det/tr^2`` from the embedded matrix entries."""
    M = [[numeric_embed(x, precision) for x in row] for row in e.M]
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    tr = M[0][0] + M[1][1]
    return det / (tr * tr)
