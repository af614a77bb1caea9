"""Subtori under iteration of an isogeny.

Subtori through the origin are compared by the Hermite normal form of their
saturated lattice, so orbit detection is exact. Orbits of infinite length
exist, hence every iteration takes a cutoff.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import gcd

from . import lattice, linalg
from .errors import DimensionNotTwo, NotComplexClosed, NotPrimitive, ValidationError
from .kernel import kernel_intersect_subtorus, lcm_list
from .torus import Endomorphism, Subtorus, delta_subtorus, subtorus_from_subspace

STABLE = "Stable"
PERIODIC = "Periodic"
UNDETECTED = "Undetected"


def image_subtorus(e: Endomorphism, B: Subtorus) -> Subtorus:
    """``f(B)``: saturation of the column lattice ``L U_B``."""
    if B.cdim == 0:
        return B
    LU = linalg.matmul([list(r) for r in e.L], B.columns())
    return Subtorus(e.torus, lattice.saturation(LU))


def restricted_degree(e: Endomorphism, B: Subtorus) -> int:
    """Degree of ``f|_B : B -> f(B)``, the order of ``Ker(f) ∩ B``."""
    return kernel_intersect_subtorus(e, B).order


@dataclass
class OrbitRecord:
    seed: Subtorus
    trajectory: list
    outcome: str
    preperiod: int | None = None
    period: int | None = None
    cutoff: int | None = None
    restricted_degrees: list = field(default_factory=list)

    def to_json(self):
        out = {
            "seed": self.seed.to_json(),
            "outcome": self.outcome,
            "trajectory": [[list(r) for r in k] for k in self.trajectory],
            "restricted_degrees": self.restricted_degrees,
        }
        if self.outcome == UNDETECTED:
            out["cutoff"] = self.cutoff
        else:
            out["preperiod"] = self.preperiod
            out["period"] = self.period
        return out


def orbit_analysis(e: Endomorphism, B: Subtorus, cutoff: int = 40) -> OrbitRecord:
    if cutoff < 1:
        raise ValueError("cutoff must be positive")
    seen = {}
    trajectory = []
    degrees = []
    cur = B
    for step in range(cutoff + 1):
        k = cur.key()
        if k in seen:
            rho = seen[k]
            pi = step - rho
            outcome = STABLE if (rho, pi) == (0, 1) else PERIODIC
            return OrbitRecord(B, trajectory, outcome, rho, pi, cutoff, degrees)
        seen[k] = step
        trajectory.append(k)
        degrees.append(restricted_degree(e, cur))
        if step < cutoff:
            cur = image_subtorus(e, cur)
    return OrbitRecord(B, trajectory, UNDETECTED, cutoff=cutoff, restricted_degrees=degrees)


def _primitive_vectors(size: int, H: int):
    """Primitive integer vectors with entries in ``[-H, H]``, one per sign class."""
    for v in itertools.product(range(-H, H + 1), repeat=size):
        nz = next((x for x in v if x), 0)
        if nz <= 0:
            continue
        g = 0
        for x in v:
            g = gcd(g, x)
        if g == 1:
            yield list(v)


_SUBTORI_CACHE: dict = {}
_CACHE_LIMIT = 64


def find_1subtori(torus, H: int):
    """All 1-dimensional subtori whose canonical basis entries are bounded by ``H``.

    Each such subtorus contains the first column of its Hermite basis, a
    primitive vector bounded by ``H``; so enumerating those vectors and taking
    ``Lambda ∩ C * (Lambda u)`` is complete within the bound.

    Results depend only on the lattice, so they are cached per ``(torus, H)``.
    """
    if H < 1:
        return []
    key = (torus.key(), H)
    hit = _SUBTORI_CACHE.get(key)
    if hit is None:
        if len(_SUBTORI_CACHE) >= _CACHE_LIMIT:
            _SUBTORI_CACHE.clear()
        hit = _SUBTORI_CACHE[key] = tuple(_enumerate_1subtori(torus, H))
    return list(hit)


def _enumerate_1subtori(torus, H: int):
    n2 = 2 * torus.dim
    found = {}
    for u in _primitive_vectors(n2, H):
        w = torus.point(u)
        try:
            B = subtorus_from_subspace(torus, [w])
        except (NotComplexClosed, NotPrimitive, ValidationError):
            continue
        if B.cdim != 1 or B.height() > H:
            continue
        found.setdefault(B.key(), B)
    return sorted(found.values(), key=Subtorus.sort_key)


def delta_subtori(torus, H: int):
    """``Delta_{p,q} = {(p x, q x)}`` for coprime ``(p, q)`` with ``|p|, |q| <= H`` (up to sign)."""
    out = {}
    for p in range(0, H + 1):
        for q in range(-H, H + 1):
            if (p, q) == (0, 0) or gcd(p, q) != 1 or (p == 0 and q < 0):
                continue
            B = delta_subtorus(torus, p, q)
            out.setdefault(B.key(), (p, q, B))
    return list(out.values())


def degree_one_witness(e: Endomorphism, H: int):
    """First 1-subtorus (canonical order) on which ``f`` restricts with degree one."""
    if e.dim != 2:
        raise DimensionNotTwo("degree-one witnesses are defined for surfaces")
    for B in find_1subtori(e.torus, H):
        if restricted_degree(e, B) == 1:
            return B
    return None


def scalar_action_check(e: Endomorphism):
    """``lam`` when ``M = lam * I``; ``None`` otherwise (which does not refute a scalar NS action)."""
    lam = e.M[0][0]
    n = e.dim
    for i in range(n):
        for j in range(n):
            if e.M[i][j] != (lam if i == j else 0):
                return None
    return lam


@dataclass
class StabilizationResult:
    v: int | None
    records: list

    @property
    def detected(self):
        return self.v is not None

    def to_json(self):
        return {"v": self.v, "detected": self.detected,
                "orbits": [r.to_json() for r in self.records]}


def stabilization_index(e: Endomorphism, seeds, cutoff: int = 40) -> StabilizationResult:
    """Least ``v`` making every seed orbit ``f^v``-stable, or undetected within ``cutoff``.

    For isogenies the image map on subtori is injective, so orbits have no
    preperiod and ``v`` is the lcm of the periods.
    """
    records = [orbit_analysis(e, B, cutoff) for B in seeds]
    if any(r.outcome == UNDETECTED for r in records):
        return StabilizationResult(None, records)
    if any(r.preperiod for r in records):
        return StabilizationResult(None, records)
    return StabilizationResult(lcm_list([r.period for r in records]), records)


@dataclass
class SurveyResult:
    height: int
    cutoff: int
    records: list

    def counts(self):
        out = {}
        for r in self.records:
            out[r.outcome] = out.get(r.outcome, 0) + 1
        return out

    @property
    def all_preperiodic(self):
        return all(r.outcome != UNDETECTED for r in self.records)

    def to_json(self):
        return {"height": self.height, "cutoff": self.cutoff, "counts": self.counts(),
                "all_preperiodic_within_cutoff": self.all_preperiodic,
                "stabilization_index": (lcm_list([r.period for r in self.records])
                                        if self.all_preperiodic and self.records else None),
                "orbits": [r.to_json() for r in self.records]}


def preperiodicity_survey(e: Endomorphism, H: int, cutoff: int = 40) -> SurveyResult:
    """Orbit outcome of every 1-subtorus up to height ``H``."""
    return SurveyResult(H, cutoff, [orbit_analysis(e, B, cutoff) for B in find_1subtori(e.torus, H)])


# integer-matrix machinery on E x E

@dataclass
class GcdPowerReport:
    contents: list          # contents[s-1] = content(M^s)
    size: int
    hypothesis: bool        # content(M^n) == 1
    violated: bool          # hypothesis holds but some content(M^k) != 1

    def to_json(self):
        return {"contents": {str(s + 1): c for s, c in enumerate(self.contents)},
                "n": self.size, "hypothesis_content_Mn_is_1": self.hypothesis,
                "violated": self.violated}


def gcd_power_test(M, S: int) -> GcdPowerReport:
    n = len(M)
    if S < n:
        raise ValueError("S must be at least the matrix size")
    M = [list(map(int, r)) for r in M]
    contents = []
    P = M
    for s in range(1, S + 1):
        if s > 1:
            P = linalg.matmul(P, M)
        contents.append(linalg.content(P))
    hyp = contents[n - 1] == 1
    violated = hyp and any(c != 1 for c in contents)
    return GcdPowerReport(contents, n, hyp, violated)


def counterexample_sequence(t: int, S: int, V=(1, 0)):
    """``(m_s, n_s) = V * M^s`` for ``M = [[0, 1], [-t, 1]]`` (row vectors), ``s = 0..S``."""
    out = [tuple(V)]
    m, n = V
    for _ in range(S):
        m, n = -t * n, m + n
        out.append((m, n))
    return out


def delta_restricted_degree_formula(M, p: int, q: int) -> int:
    """``l^2`` with ``l = gcd`` of the entries of ``M (p, q)^T`` (column convention)."""
    a, b = M[0]
    c, d = M[1]
    l = gcd(a * p + b * q, c * p + d * q)
    return l * l
