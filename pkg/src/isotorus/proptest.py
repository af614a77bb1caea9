"""Seeded property suites with counterexample shrinking.

A suite draws cases from a ``random.Random`` seeded once per run, so reports
are reproducible from the seed alone. Cases are nested lists of integers;
when a check fails the case is shrunk greedily, moving entries toward zero
while it keeps failing.
"""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from . import lattice, linalg, polys
from .certificates import VerdictOptions, exact_exe_classification, incompressibility_verdict
from .dynamics import degree_one_witness, delta_restricted_degree_formula, delta_subtori, restricted_degree
from .errors import IsotorusError, NotLatticePreserving
from .field import field_make
from .kernel import brute_force_kernel_oracle, kernel_group, prime_divisors
from .polarization import classify_polarization
from .torus import (
    elliptic_curve,
    endo_make,
    endo_power,
    induced_endomorphism,
    integer_matrix_endomorphism,
    is_stable,
    power_torus,
    torus_make,
)


class Skip(Exception):
    """The drawn case does not satisfy the suite's preconditions."""


# tori with known endomorphism orders Z[tau]

CURVES = {
    0: ([-1], lambda K: K.i),                                   # Z[i]
    1: ([-2], lambda K: K.sqrt(-2)),                            # Z[sqrt-2]
    2: ([-3], lambda K: (K.sqrt(-3) - 1) / 2),                  # Z[zeta_3]
    3: ([-1], lambda K: 2 * K.i),                               # Z + 2iZ
}


def curve(kind: int):
    gens, tau = CURVES[kind]
    K = field_make(gens)
    return K, elliptic_curve(K, tau(K)), tau(K)


def unimodular(rng: random.Random, n: int, steps: int = 4):
    W = linalg.identity(n)
    for _ in range(steps):
        i, j = rng.sample(range(n), 2)
        f = rng.choice([-1, 1])
        W = [row[:] for row in W]
        for row in W:
            row[i] += f * row[j]
    return W


def build_endomorphism(case):
    """``case = [kind, n, entries (a, b) per matrix slot, W]`` -> Endomorphism."""
    kind, n, entries, W = case
    K, E, tau = curve(kind)
    T = power_torus(E, n)
    if W:
        lat = linalg.matmul([list(r) for r in T.lattice], W)
        try:
            T = torus_make(K, n, lat)
        except IsotorusError:
            raise Skip
    M = [[K.coerce(entries[i * n + j][0]) + entries[i * n + j][1] * tau for j in range(n)]
         for i in range(n)]
    try:
        return endo_make(T, M)
    except NotLatticePreserving:
        raise Skip
    except ValueError:
        raise Skip


def draw_endomorphism(rng, max_n=2, coeff=3, real=False, twist=True):
    kind = rng.randrange(len(CURVES))
    n = rng.randint(1, max_n)
    entries = [[rng.randint(-coeff, coeff), 0 if real else rng.randint(-coeff, coeff)] for _ in range(n * n)]
    W = unimodular(rng, 2 * n) if twist and rng.random() < 0.5 else []
    return [kind, n, entries, W]


# checks

def check_field(case):
    a_c, b_c = case
    K = field_make([-1, -2])
    a = K.coerce(0)
    b = K.coerce(0)
    for m, c in enumerate(a_c):
        a = a + c * _mono(K, m)
    for m, c in enumerate(b_c):
        b = b + c * _mono(K, m)
    assert (a * b).conj() == a.conj() * b.conj()
    assert a.conj().conj() == a
    if a != 0:
        assert a * (1 / a) == 1


def _mono(K, m):
    out = K.one()
    for i in range(K.k):
        if m >> i & 1:
            out = out * K.gen(i)
    return out


def gen_field(rng, size):
    return [[rng.randint(-5, 5) for _ in range(4)], [rng.randint(-5, 5) for _ in range(4)]]


def check_snf(case):
    A = case
    if not A or not A[0]:
        raise Skip
    U, D, V = lattice.smith_normal_form(A)
    assert linalg.matmul(linalg.matmul(U, A), V) == D
    assert abs(linalg.bareiss_det(U)) == 1 and abs(linalg.bareiss_det(V)) == 1
    diag = [D[i][i] for i in range(min(len(D), len(D[0])))]
    nz = [d for d in diag if d]
    assert all(d > 0 for d in nz)
    assert all(nz[i + 1] % nz[i] == 0 for i in range(len(nz) - 1))
    assert diag[:len(nz)] == nz


def gen_snf(rng, size):
    r = rng.randint(1, 2 + size)
    c = rng.randint(1, 2 + size)
    return [[rng.randint(-9, 9) for _ in range(c)] for _ in range(r)]


def check_kernel_oracle(case):
    e = build_endomorphism(case)
    if e.det_L == 0 or e.degree > 30:
        raise Skip
    assert brute_force_kernel_oracle(e) == kernel_group(e)


def gen_kernel(rng, size):
    return draw_endomorphism(rng, max_n=2, coeff=2)


def check_coprime_index(case):
    M = case
    n = len(M)
    contents = []
    P = M
    for k in range(1, 3 * n + 1):
        if k > 1:
            P = linalg.matmul(P, M)
        contents.append(linalg.content(P))
    if contents[n - 1] == 1:
        assert all(c == 1 for c in contents), f"contents {contents}"


def gen_coprime(rng, size):
    n = rng.choice([2, 3])
    return [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]


def check_real_charpoly(case):
    e = build_endomorphism(case)
    if e.det_L == 0:
        raise Skip
    pM = [c for c in polys.charpoly([list(r) for r in e.M])]
    assert all(c.is_rational() and c.rational_value().denominator == 1 for c in pM)
    pM = [int(c.rational_value()) for c in pM]
    assert polys.mul(pM, pM) == polys.charpoly([list(r) for r in e.L])
    d = abs(int(e.det_M.rational_value()))
    G = kernel_group(e)
    assert d % G.exponent == 0
    for p in prime_divisors(d):
        assert G.p_rank(p) >= 2


def gen_real(rng, size):
    return draw_endomorphism(rng, max_n=min(1 + size, 4), coeff=3, real=True)


def check_polarization(case):
    e = build_endomorphism(case)
    if e.det_L == 0:
        raise Skip
    classify_polarization(e)        # the numeric cross-check raises on disagreement


def gen_polarization(rng, size):
    return draw_endomorphism(rng, max_n=2, coeff=3)


def check_certificate(case):
    e = build_endomorphism(case)
    if e.det_L == 0 or e.dim != 2:
        raise Skip
    cert = incompressibility_verdict(e, options=VerdictOptions(height=1))
    assert 0 <= cert.lo <= cert.hi <= cert.dim


def gen_certificate(rng, size):
    c = draw_endomorphism(rng, max_n=2, coeff=2, twist=False)
    c[1] = 2
    c[2] = c[2] + [[rng.randint(-2, 2), rng.randint(-2, 2)] for _ in range(4 - len(c[2]))]
    c[2] = c[2][:4]
    return c


def check_exe(case):
    M = case
    if linalg.bareiss_det(M) == 0:
        raise Skip
    ed = exact_exe_classification(M, 3)
    f = integer_matrix_endomorphism(power_torus(curve(0)[1], 2), M)
    for p, q, B in delta_subtori(f.torus, 2):
        assert restricted_degree(f, B) == delta_restricted_degree_formula(_int_matrix(f), p, q)
    if ed.ed == 2:
        assert degree_one_witness(f, 2) is None
    if ed.ed == 0:
        assert f.degree == 1
    assert ed.consistent


def _int_matrix(f):
    return [[int(x.rational_value()) for x in row] for row in f.M]


def gen_exe(rng, size):
    g = rng.choice([1, 1, 1, 2, 3])
    return [[g * rng.randint(-4, 4) for _ in range(2)] for _ in range(2)]


def check_quotient(case):
    e = build_endomorphism(case)
    if e.det_L == 0 or e.dim != 2:
        raise Skip
    from .dynamics import find_1subtori
    for B in find_1subtori(e.torus, 1):
        if is_stable(e, B):
            g = induced_endomorphism(e, B)
            assert e.degree == restricted_degree(e, B) * g.degree


def gen_quotient(rng, size):
    kind = rng.randrange(len(CURVES))
    a, b, c, d = (rng.randint(-3, 3) for _ in range(4))
    # upper triangular: the first factor is stable
    return [kind, 2, [[a, b], [c, d], [0, 0], [rng.randint(-3, 3), rng.randint(-3, 3)]], []]


def check_iteration(case):
    e = build_endomorphism(case)
    if e.det_L == 0:
        raise Skip
    r = classify_polarization(e, cross_check=False)
    if r.classification == "PolarizedInteger":
        r2 = classify_polarization(endo_power(e, 2), cross_check=False)
        assert r2.q == r.q ** 2


def gen_iteration(rng, size):
    return draw_endomorphism(rng, max_n=2, coeff=3)


@dataclass
class Suite:
    name: str
    generate: object
    check: object
    count: int


SUITES = [
    Suite("field-conjugation", gen_field, check_field, 200),
    Suite("smith-normal-form", gen_snf, check_snf, 200),
    Suite("kernel-oracle", gen_kernel, check_kernel_oracle, 200),
    Suite("coprime-index", gen_coprime, check_coprime_index, 1000),
    Suite("real-charpoly", gen_real, check_real_charpoly, 200),
    Suite("polarization-oracle", gen_polarization, check_polarization, 100),
    Suite("certificate-consistency", gen_certificate, check_certificate, 60),
    Suite("exe-classification", gen_exe, check_exe, 60),
    Suite("quotient-degree", gen_quotient, check_quotient, 60),
    Suite("iteration-coherence", gen_iteration, check_iteration, 100),
]


# shrinking

def _candidates(x):
    if isinstance(x, int):
        if x == 0:
            return
        yield 0
        if abs(x) > 1:
            yield x // 2 if x > 0 else -((-x) // 2)
            yield x - 1 if x > 0 else x + 1
        return
    if isinstance(x, list):
        for i in range(len(x)):
            for c in _candidates(x[i]):
                yield x[:i] + [c] + x[i + 1:]


def _fails(check, case):
    try:
        check(case)
    except Skip:
        return False
    except AssertionError:
        return True
    except Exception:
        return True
    return False


def shrink(check, case, budget=200):
    """Greedy shrink toward zero while ``check`` keeps failing."""
    steps = 0
    improved = True
    while improved and steps < budget:
        improved = False
        for cand in _candidates(case):
            steps += 1
            if _fails(check, cand):
                case = cand
                improved = True
                break
            if steps >= budget:
                break
    return case


@dataclass
class SuiteResult:
    name: str
    passed: bool
    run: int
    skipped: int
    seconds: float
    counterexample: object = None
    message: str | None = None
    size: int = 1

    def to_json(self):
        return {"suite": self.name, "size": self.size, "passed": self.passed, "run": self.run, "skipped": self.skipped,
                "seconds": round(self.seconds, 3), "counterexample": self.counterexample,
                "message": self.message}


@dataclass
class PropertyReport:
    seed: int
    results: list = field(default_factory=list)

    @property
    def passed(self):
        return all(r.passed for r in self.results)

    def to_json(self):
        return {"seed": self.seed, "passed": self.passed, "suites": [r.to_json() for r in self.results]}

    def summary(self):
        lines = [f"seed {self.seed}"]
        for r in self.results:
            lines.append(f"{'PASS' if r.passed else 'FAIL'} {r.name} (size {r.size}): {r.run} run, {r.skipped} skipped "
                         f"({r.seconds:.2f}s)")
            if not r.passed:
                lines.append(f"    counterexample: {r.counterexample} ({r.message})")
        return "\n".join(lines)


def run_suite(suite: Suite, seed: int, size: int = 1, scale: float = 1.0) -> SuiteResult:
    rng = random.Random(f"{seed}:{suite.name}")
    t0 = time.perf_counter()
    run = skipped = 0
    target = max(1, int(suite.count * scale))
    attempts = 0
    while run < target and attempts < 20 * target:
        attempts += 1
        case = suite.generate(rng, size)
        try:
            suite.check(case)
        except Skip:
            skipped += 1
            continue
        except Exception as exc:
            small = shrink(suite.check, case)
            return SuiteResult(suite.name, False, run + 1, skipped, time.perf_counter() - t0, small,
                               f"{type(exc).__name__}: {exc}", size)
        run += 1
    return SuiteResult(suite.name, True, run, skipped, time.perf_counter() - t0, size=size)


def run_property_suites(seed: int = 0, sizes=(1,), select=None, scale: float = 1.0,
                        jobs: int = 1) -> PropertyReport:
    suites = [s for s in SUITES if select is None or s.name in set(select)]
    tasks = [(s, seed, size, scale) for size in sizes for s in suites]
    if jobs > 1 and len(tasks) > 1:
        from concurrent.futures import ProcessPoolExecutor
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_run_task, tasks))
    else:
        results = [_run_task(t) for t in tasks]
    return PropertyReport(seed, results)


def _run_task(task):
    suite, seed, size, scale = task
    return run_suite(suite, seed, size, scale)
