"""Bounds on the essential dimension of an isogeny, assembled from rules.

Each rule produces an upper or lower bound together with a citation string
(the mathematical statement it relies on) and a witness. A certificate is
conditional when a lower bound used a subtorus list that is not known to be
complete.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import factorint

from . import linalg
from .dynamics import degree_one_witness, find_1subtori, scalar_action_check
from .errors import (
    ConflictingAssumptions,
    DimensionNotTwo,
    EmptyList,
    NoSplitting,
    NotIsogeny,
    RuleNotApplicable,
)
from .kernel import kernel_group, kernel_intersect_subtorus, prime_divisors
from .polarization import POLARIZED_INTEGER, PolarizationReport, classify_polarization
from .torus import (
    ComplexTorus,
    coordinate_subtorus,
    Endomorphism,
    Subtorus,
    endo_make,
    full_subtorus,
    trivial_subtorus,
)

CITE_KERNEL_RANK = "ed(f) <= rank Ker(f): an isogeny is an abelian cover with group Ker(f)"
CITE_WITNESS = ("ed(f) <= 1 for a polarized isogeny of an abelian surface "
                "when f restricts to a degree-one map on some elliptic curve E -> f(E)")
CITE_KZ = ("ed(f) >= dim A - dim B + (p-1)/p rank_p(Ker(f) ∩ B) for some subtorus B "
           "and every prime p (ceiling taken; certified bound = min over B of max over p)")
CITE_SCALAR = ("ed(f) >= (p-1)/p dim A for a q-polarized f acting by a scalar on a product "
               "of elliptic curves and every prime p | q")
CITE_SURFACE = ("a q-polarized isogeny of an abelian surface all of whose subtori are stable "
                "(simple, or scalar action on E x E) is incompressible when q > 2")
CITE_ITERATE = ("if every subtorus is f-stable and f is q-polarized, f^s is incompressible "
                "for s > log_q(J), J the Jordan constant and exp(Ker f) | q")
CITE_SPLIT = "ed(f1 x f2) <= ed(f1) + ed(f2)"
CITE_EXE = ("f(x) = xM on E x E: ed = 0 if |det M| = 1; ed = 1 if content(M) = 1 and "
            "|det M| > 1 (Smith form diag(det M, 1)); ed = 2 if content(M) > 1 "
            "(f factors through multiplication by content(M))")
CITE_EXE_INDEX = "ed(f^s) = 2 for some s implies ed(f^t) = 2 for all t >= 2"


@dataclass(frozen=True)
class Assumptions:
    is_simple: bool = False
    factors_pairwise_nonisogenous: bool = False
    is_product_of_elliptic_curves: bool = False
    subtorus_list_complete: bool = False
    jordan_constant: int | None = None
    k_L: int = 1

    def jordan(self, dim: int):
        if self.jordan_constant is not None:
            return self.jordan_constant
        return 2 if dim <= 2 else None

    def to_json(self):
        return {
            "is_simple": self.is_simple,
            "factors_pairwise_nonisogenous": self.factors_pairwise_nonisogenous,
            "is_product_of_elliptic_curves": self.is_product_of_elliptic_curves,
            "subtorus_list_complete": self.subtorus_list_complete,
            "jordan_constant": self.jordan_constant,
            "k_L": self.k_L,
        }


@dataclass
class RuleRecord:
    name: str
    kind: str               # "upper" or "lower"
    value: int
    citation: str
    witness: object = None
    conditional: bool = False
    hypotheses: dict = field(default_factory=dict)

    def to_json(self):
        w = self.witness
        if hasattr(w, "to_json"):
            w = w.to_json()
        return {"rule": self.name, "kind": self.kind, "value": self.value,
                "citation": self.citation, "witness": w,
                "conditional": self.conditional, "hypotheses": self.hypotheses}


@dataclass
class EdCertificate:
    dim: int
    lo: int
    hi: int
    rules: list = field(default_factory=list)
    conditional: bool = False
    verdict: str = ""
    notes: list = field(default_factory=list)
    iterate_threshold: int | None = None
    polarization: PolarizationReport | None = None
    assumptions: Assumptions | None = None

    def __post_init__(self):
        if not 0 <= self.lo <= self.hi <= self.dim:
            raise AssertionError(f"inconsistent bounds [{self.lo}, {self.hi}] in dim {self.dim}")

    @property
    def incompressible(self):
        return self.lo == self.dim

    def to_json(self):
        return {
            "dim": self.dim, "lo": self.lo, "hi": self.hi, "verdict": self.verdict,
            "conditional": self.conditional,
            "iterate_threshold": self.iterate_threshold,
            "rules": [r.to_json() for r in self.rules],
            "notes": self.notes,
            "polarization": self.polarization.to_json() if self.polarization else None,
            "assumptions": self.assumptions.to_json() if self.assumptions else None,
        }

    def report(self) -> str:
        lines = [f"essential dimension in [{self.lo}, {self.hi}] (dim {self.dim}): {self.verdict}"
                 + (" [conditional]" if self.conditional else "")]
        for r in self.rules:
            tag = " (conditional)" if r.conditional else ""
            sign = "<=" if r.kind == "upper" else ">="
            lines.append(f"  {r.name}: ed {sign} {r.value}{tag}")
            lines.append(f"    {r.citation}")
        if self.iterate_threshold is not None:
            lines.append(f"  iterates f^s incompressible for s >= {self.iterate_threshold}")
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)


def _ceil(x: Fraction) -> int:
    return math.ceil(x)


# upper bounds

def upper_from_kernel_rank(e: Endomorphism) -> int:
    if e.det_L == 0:
        raise NotIsogeny("endomorphism has infinite kernel")
    return min(e.dim, kernel_group(e).rank)


def upper_from_degree_one_witness(e: Endomorphism, H: int = 1, report=None):
    """``(1, witness)`` or ``None``."""
    if e.dim != 2:
        raise DimensionNotTwo("the degree-one criterion is stated for surfaces")
    report = report or classify_polarization(e)
    if not report.polarized:
        raise RuleNotApplicable("the degree-one criterion needs a polarized isogeny")
    B = degree_one_witness(e, H)
    return (1, B) if B is not None else None


def _blocks(e: Endomorphism):
    """Connected components of complex coordinates coupled by ``M`` or the lattice."""
    n = e.dim
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        parent[find(a)] = find(b)

    for i in range(n):
        for j in range(n):
            if e.M[i][j] != 0:
                union(i, j)
    lat = e.torus.lattice
    for j in range(2 * n):
        rows = [k for k in range(n) if lat[k][j] != 0]
        for k in rows[1:]:
            union(rows[0], k)
    groups = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def split_endomorphism(e: Endomorphism):
    """Block factors ``[(coords, Endomorphism)]`` of a product decomposition, if any."""
    blocks = _blocks(e)
    if len(blocks) < 2:
        raise NoSplitting("no block decomposition of the torus and the map")
    lat = e.torus.lattice
    out = []
    for coords in blocks:
        cols = [j for j in range(2 * e.dim) if any(lat[k][j] != 0 for k in coords)]
        sub_lat = [[lat[k][j] for j in cols] for k in coords]
        T = ComplexTorus(e.torus.spec, len(coords), sub_lat)
        M = [[e.M[a][b] for b in coords] for a in coords]
        out.append((coords, endo_make(T, M)))
    return out


def product_split_bound(e: Endomorphism):
    """``(hi, parts)`` summing the best upper bound of each block."""
    parts = split_endomorphism(e)
    total = 0
    detail = []
    for coords, f in parts:
        hi = upper_from_kernel_rank(f)
        total += hi
        detail.append({"coords": coords, "hi": hi})
    return min(total, e.dim), detail


# lower bounds

def kz_value(e: Endomorphism, B: Subtorus, primes) -> int:
    """``ceil(max_p dim A - dim B + (p-1)/p rank_p(Ker f ∩ B))`` capped at ``dim A``."""
    base = Fraction(e.dim - B.cdim)
    G = kernel_intersect_subtorus(e, B)
    vals = [base + Fraction(p - 1, p) * G.p_rank(p) for p in primes] or [base]
    return min(e.dim, _ceil(max(vals)))


def lower_kz(e: Endomorphism, subtori, complete: bool = False):
    """``(lo, conditional, per-subtorus table)``."""
    subtori = list(subtori)
    if not subtori:
        raise EmptyList("no subtori supplied")
    if e.det_L == 0:
        raise NotIsogeny("endomorphism has infinite kernel")
    keys = {B.key() for B in subtori}
    for extra in (trivial_subtorus(e.torus), full_subtorus(e.torus)):
        if extra.key() not in keys:
            subtori.append(extra)
            keys.add(extra.key())
    primes = prime_divisors(e.degree)
    table = [(B, kz_value(e, B, primes)) for B in subtori]
    lo = min(v for _, v in table)
    return lo, not complete, table


def lower_scalar_product_rule(e: Endomorphism, assumptions: Assumptions, report=None) -> int:
    if not assumptions.is_product_of_elliptic_curves:
        raise RuleNotApplicable("needs a product of elliptic curves")
    if scalar_action_check(e) is None:
        raise RuleNotApplicable("needs a scalar matrix")
    report = report or classify_polarization(e)
    if report.classification != POLARIZED_INTEGER:
        raise RuleNotApplicable("needs an integer-q polarized map")
    q = report.q
    return max(_ceil(Fraction(p - 1, p) * e.dim) for p in factorint(q))


# exact classification on E x E

def exe_ed(M) -> int:
    M = [list(map(int, r)) for r in M]
    d = abs(linalg.bareiss_det(M))
    if d == 0:
        raise NotIsogeny("singular matrix")
    if d == 1:
        return 0
    return 1 if linalg.content(M) == 1 else 2


@dataclass
class ExeClassification:
    ed: int
    iterates: list          # ed(M^t) for t = 1..T
    consistent: bool

    def to_json(self):
        return {"ed": self.ed, "iterates": {str(t + 1): v for t, v in enumerate(self.iterates)},
                "index_rule_consistent": self.consistent, "citation": CITE_EXE}


def exact_exe_classification(M, T: int = 4) -> ExeClassification:
    """Exact ``ed`` of ``f(x) = xM`` on ``E x E`` and of its iterates up to ``T``."""
    M = [list(map(int, r)) for r in M]
    its = []
    P = M
    for t in range(1, T + 1):
        if t > 1:
            P = linalg.matmul(P, M)
        its.append(exe_ed(P))
    consistent = True
    if 2 in its:
        consistent = all(v == 2 for v in its[1:])
    return ExeClassification(its[0], its, consistent)


# combined verdict

def _coordinate_subtori(e: Endomorphism):
    """All coordinate sub-products, or None when the lattice does not split into 1-dim blocks."""
    n = e.dim
    lat = e.torus.lattice
    for j in range(2 * n):
        if sum(1 for k in range(n) if lat[k][j] != 0) != 1:
            return None
    out = []
    for mask in range(1 << n):
        coords = [k for k in range(n) if mask >> k & 1]
        out.append(coordinate_subtorus(e.torus, coords) if coords else trivial_subtorus(e.torus))
    return out


@dataclass
class VerdictOptions:
    height: int = 1
    subtori: tuple = ()


def _check_assumptions(e: Endomorphism, a: Assumptions, options: VerdictOptions, found):
    if a.is_simple and e.dim >= 2:
        if a.is_product_of_elliptic_curves:
            raise ConflictingAssumptions("a product of elliptic curves is not simple")
        for B in list(options.subtori) + list(found):
            if 0 < B.cdim < e.dim:
                raise ConflictingAssumptions(f"asserted simple but {B} is a proper subtorus")


def incompressibility_verdict(e: Endomorphism, assumptions: Assumptions = Assumptions(),
                              options: VerdictOptions = VerdictOptions()) -> EdCertificate:
    if e.det_L == 0:
        raise NotIsogeny("endomorphism has infinite kernel")
    n = e.dim
    report = classify_polarization(e)
    found = find_1subtori(e.torus, options.height) if (n >= 2 and options.height >= 1) else []
    _check_assumptions(e, assumptions, options, found)
    rules = []
    notes = []
    scalar = scalar_action_check(e)
    q = report.q_integer

    # upper bounds
    rules.append(RuleRecord("kernel-rank", "upper", upper_from_kernel_rank(e), CITE_KERNEL_RANK,
                            witness=list(kernel_group(e).invariant_factors)))
    if n == 2 and report.polarized:
        w = upper_from_degree_one_witness(e, options.height, report)
        if w is not None:
            rules.append(RuleRecord("degree-one-witness", "upper", 1, CITE_WITNESS, witness=w[1],
                                    hypotheses={"height": options.height}))
    try:
        hi_split, detail = product_split_bound(e)
        rules.append(RuleRecord("product-split", "upper", hi_split, CITE_SPLIT, witness=detail))
    except NoSplitting:
        pass

    # lower bounds
    coordinate = _coordinate_subtori(e) if (assumptions.factors_pairwise_nonisogenous
                                            and assumptions.is_product_of_elliptic_curves) else None
    if assumptions.is_simple:
        subtori, complete = [trivial_subtorus(e.torus), full_subtorus(e.torus)], True
    elif coordinate is not None:
        # non-isogenous elliptic factors: the subtori are exactly the coordinate products
        keys = {B.key() for B in coordinate}
        for B in list(options.subtori) + list(found):
            if B.key() not in keys:
                raise ConflictingAssumptions(f"factors asserted non-isogenous but {B} is not a coordinate subtorus")
        subtori, complete = coordinate, True
    else:
        subtori = [trivial_subtorus(e.torus)] + list(options.subtori) + list(found)
        complete = assumptions.subtorus_list_complete
    lo_kz, cond, table = lower_kz(e, subtori, complete)
    rules.append(RuleRecord(
        "kollar-zhuang", "lower", lo_kz, CITE_KZ, conditional=cond,
        witness=[{"subtorus": B.to_json(), "cdim": B.cdim, "value": v} for B, v in table],
        hypotheses={"subtorus_list_complete": not cond,
                    "source": "assumption is_simple" if assumptions.is_simple else
                    "assumption factors_pairwise_nonisogenous" if coordinate is not None else
                    ("assumption subtorus_list_complete" if complete else
                     f"registered subtori plus 1-subtori of height <= {options.height}")}))
    try:
        lo_sc = lower_scalar_product_rule(e, assumptions, report)
        rules.append(RuleRecord("scalar-product", "lower", lo_sc, CITE_SCALAR, witness=str(scalar),
                                hypotheses={"is_product_of_elliptic_curves": "assumption", "q": q}))
    except RuleNotApplicable:
        pass

    exception_2 = False
    all_stable = assumptions.is_simple or (assumptions.is_product_of_elliptic_curves and scalar is not None)
    if n == 2 and q is not None and all_stable:
        if q > 2:
            rules.append(RuleRecord("surface-uniform", "lower", 2, CITE_SURFACE, witness={"q": q},
                                    hypotheses={"is_simple": assumptions.is_simple,
                                                "scalar_action": scalar is not None}))
        elif q == 2:
            exception_2 = True
            notes.append("q = 2: surface rule not applied (2-polarized exception)")

    threshold = None
    if scalar is not None and q is not None:
        J = assumptions.jordan(n)
        if J is None:
            notes.append("iterate rule skipped: Jordan constant required for dim > 2")
        else:
            # smallest integer s with q^s > J
            s = 1
            while q ** s <= J:
                s += 1
            threshold = s
            hyp = {"J": J, "J_source": "user" if assumptions.jordan_constant is not None
                   else "default for dim <= 2", "q": q}
            if s == 1:
                rules.append(RuleRecord("scalar-iterate", "lower", n, CITE_ITERATE,
                                        witness={"s_star": s}, hypotheses=hyp))
            else:
                notes.append(f"f^s certified incompressible for s >= {s} (J = {J})")

    uppers = [r.value for r in rules if r.kind == "upper"]
    lowers = [r for r in rules if r.kind == "lower"]
    hi = min([n] + uppers)
    lo = max([0] + [r.value for r in lowers])
    if lo > hi:
        raise ConflictingAssumptions(f"lower bound {lo} exceeds upper bound {hi}")
    used = [r for r in lowers if r.value == lo and lo > 0]
    conditional = bool(used) and all(r.conditional for r in used)
    if lo == n:
        verdict = "incompressible"
    elif hi < n:
        verdict = "compressible"
    elif exception_2:
        verdict = "inconclusive (2-polarized exception)"
    else:
        verdict = "inconclusive"
    return EdCertificate(n, lo, hi, rules, conditional, verdict, notes, threshold, report, assumptions)
