"""Acceptance criteria 1-10.

Each criterion is a function that returns a one-line detail or raises
AssertionError. Under pytest every criterion is one test and the pass/fail
lines are printed in the terminal summary; ``python tests/test_acceptance.py``
prints the same lines directly.
"""
import random
import time
from fractions import Fraction
from math import gcd

import pytest

from isotorus import lattice, linalg, polys
from isotorus.certificates import Assumptions, VerdictOptions, exact_exe_classification, incompressibility_verdict
from isotorus.constructions import (
    GAUSS,
    diag_2_3,
    family_map,
    gaussian_curve,
    gaussian_scalar,
    h1_times_h2,
    integer_matrix_on_square,
    mult_ni,
    swap_map,
)
from isotorus.dynamics import counterexample_sequence, degree_one_witness, restricted_degree
from isotorus.kernel import AbelianGroupStructure, brute_force_kernel_oracle, kernel_group, prime_divisors, rank_index_search
from isotorus.polarization import (
    INT_AMPLIFIED,
    classify_polarization,
    eigenratio,
    eigenratio_gamma_check,
    eigenratio_numeric,
    shioda_mitani_make,
)
from isotorus.field import numeric_embed
from isotorus.proptest import Skip, build_endomorphism, draw_endomorphism
from isotorus.torus import delta_subtorus, endo_make, endo_power, power_torus, scalar_endomorphism

G = AbelianGroupStructure
LINES = {}


def criterion_1():
    t0 = time.perf_counter()
    for n in range(2, 7):
        assert kernel_group(mult_ni(n)) == G((n * n,)), n
    for copies in (1, 2):
        f = gaussian_scalar(copies)
        for s in (1, 2, 3):
            assert kernel_group(endo_power(f, s)) == G((25 ** s,) * copies), (copies, s)
    h = h1_times_h2()
    for s in range(1, 5):
        assert kernel_group(endo_power(h, s)) == G((15 ** s,)), s
    dt = time.perf_counter() - t0
    assert dt < 1.0, f"{dt:.2f}s"
    return f"Z/n^2 (n=2..6), (Z/25^s)^n, cyclic Z/15^s (s=1..4) in {dt:.2f}s"


def criterion_2(target=200, seed=20240601):
    rng = random.Random(seed)
    tested = mismatches = 0
    dims = set()
    while tested < target:
        case = draw_endomorphism(rng, max_n=2, coeff=2)
        try:
            e = build_endomorphism(case)
        except Skip:
            continue
        if e.det_L == 0 or abs(e.det_L) > 30:
            continue
        tested += 1
        dims.add(2 * e.dim)
        if brute_force_kernel_oracle(e) != kernel_group(e):
            mismatches += 1
    assert mismatches == 0, f"{mismatches} mismatches"
    return f"{tested} isogenies, |det L| <= 30, 2n in {sorted(dims)}, 0 mismatches"


def criterion_3():
    for n in range(2, 7):
        r = classify_polarization(swap_map(n), precision=256)
        assert r.polarized and r.q == n and r.numeric_check["agrees"], n
    for t in (2, 3, 5, 10):
        r = classify_polarization(family_map(t), precision=256)
        assert r.polarized and r.q == t and r.numeric_check["agrees"], t
    r = classify_polarization(h1_times_h2(), precision=256)
    assert r.classification == INT_AMPLIFIED and not r.polarized and r.numeric_check["agrees"]
    return "swap q = n, family q = t, 15^s family int-amplified only; interval oracle agrees at 256 bits"


def criterion_4():
    t0 = time.perf_counter()
    for t in (2, 3, 5, 10):
        seq = counterexample_sequence(t, 40)
        f = family_map(t)
        for s in range(1, 41):
            m, n = seq[s]
            assert gcd(m, n) == 1 and (m + n) % t == 1 % t, (t, s)
            cert = incompressibility_verdict(endo_power(f, s))
            witness = [r for r in cert.rules if r.name == "degree-one-witness"]
            assert cert.hi == 1 and witness and witness[0].value == 1, (t, s)
    dt = time.perf_counter() - t0
    assert dt < 5.0, f"{dt:.2f}s"
    return f"t in {{2,3,5,10}}, s <= 40: coprime, m+n = 1 mod t, hi = 1 by witness; {dt:.2f}s"


def criterion_5(per_size=500, seed=7):
    rng = random.Random(seed)
    checked = hypothesis_held = 0
    for n in (2, 3):
        for _ in range(per_size):
            M = [[rng.randint(-9, 9) for _ in range(n)] for _ in range(n)]
            P, contents = M, []
            for k in range(1, 3 * n + 1):
                if k > 1:
                    P = linalg.matmul(P, M)
                contents.append(linalg.content(P))
            checked += 1
            if contents[n - 1] == 1:
                hypothesis_held += 1
                assert all(c == 1 for c in contents), (M, contents)
    return f"{checked} matrices ({hypothesis_held} with content(M^n) = 1), 0 violations"


def criterion_6():
    r = rank_index_search(gaussian_scalar(2), 5)
    assert r.s == 1 and r.group.p_rank(5) == 2
    r = rank_index_search(swap_map(2), 2)
    assert r.s == 2 and r.group.p_rank(2) == 2
    scalars = [gaussian_scalar(1), gaussian_scalar(2), mult_ni(2), mult_ni(3),
               endo_power(swap_map(2), 2), endo_power(swap_map(3), 2),
               endo_power(integer_matrix_on_square([[1, 1], [1, -1]]), 2)]
    for e in scalars:
        q = classify_polarization(e).q
        for s in (1, 2, 3):
            assert q ** s % kernel_group(endo_power(e, s)).exponent == 0
    return f"s = 1 (5-rank 2), s = 2 (2-rank 2); exp | q^s on {len(scalars)} scalar cases, s <= 3"


def criterion_7(target=200, seed=99):
    rng = random.Random(seed)
    tested = 0
    while tested < target:
        case = draw_endomorphism(rng, max_n=3, coeff=4, real=True)
        try:
            e = build_endomorphism(case)
        except Skip:
            continue
        if e.det_L == 0:
            continue
        tested += 1
        pM = polys.charpoly([list(r) for r in e.M])
        assert all(c.is_rational() and c.rational_value().denominator == 1 for c in pM), case
        ints = [c.integer_value() for c in pM]
        assert polys.mul(ints, ints) == polys.charpoly([list(r) for r in e.L]), case
        d = abs(e.det_M.integer_value())
        K = kernel_group(e)
        assert d % K.exponent == 0, case
        for p in prime_divisors(d):
            assert K.p_rank(p) >= 2, (case, p)
    return f"{tested} real-entry matrices: integer p_M, p_M^2 = p_L, exp | det M, p-rank >= 2; 0 violations"


def criterion_8(target=200, seed=5):
    rng = random.Random(seed)
    EE = power_torus(gaussian_curve(), 2)
    tested = 0
    for _ in range(10 * target):
        if tested == target:
            break
        M = [[rng.randint(-6, 6) for _ in range(2)] for _ in range(2)]
        if M[0][0] * M[1][1] - M[0][1] * M[1][0] == 0:
            continue
        tested += 1
        ed = exact_exe_classification(M, 3)
        assert ed.consistent
        f = integer_matrix_on_square(M)
        cert = incompressibility_verdict(f)
        assert cert.hi >= ed.ed and (cert.conditional or cert.lo <= ed.ed), (M, cert.lo, cert.hi, ed.ed)
        if ed.ed == 0:
            assert f.degree == 1
        elif ed.ed == 1:
            # Smith form diag(1, d): the first column of V gives a degree-one Delta
            Mc = [list(r) for r in zip(*M)]
            _, _, V = lattice.smith_normal_form(Mc)
            p, q = V[0][0], V[1][0]
            assert restricted_degree(f, delta_subtorus(EE, p, q)) == 1, M
        else:
            assert degree_one_witness(f, 2) is None, M
    assert tested == target
    ed = exact_exe_classification([[1, 1], [1, -1]], 2)
    assert ed.iterates == [1, 2]
    cert = incompressibility_verdict(diag_2_3(), Assumptions(factors_pairwise_nonisogenous=True,
                                                             is_product_of_elliptic_curves=True))
    assert (cert.lo, cert.hi, cert.conditional) == (2, 2, False)
    return f"{tested} matrices agree with certificates and witnesses; [[1,1],[1,-1]] -> 1, 2; diag(2,3) lo = hi = 2"


def criterion_9(target=50, seed=11):
    T = shioda_mitani_make(1, 0, 1)
    for m in (1, 2, 3, -4, 7):
        g = eigenratio_gamma_check(endo_make(T, [[m, 0], [0, m]]), 1)
        assert g.ratio == Fraction(1, 4) and g.in_gamma
    rng = random.Random(seed)
    K = T.spec
    tested = 0
    while tested < target:
        M = [[rng.randint(-4, 4) + rng.randint(-3, 3) * K.i for _ in range(2)] for _ in range(2)]
        try:
            e = endo_make(T, M)
        except Exception:
            continue
        if e.trace_M() == 0:
            continue
        tested += 1
        exact = numeric_embed(eigenratio(e), 256)
        box = eigenratio_numeric(e, 256)
        assert (box.real.a <= exact.real.a and exact.real.b <= box.real.b
                and box.imag.a <= exact.imag.a and exact.imag.b <= box.imag.b), M
    return f"scalar ratio 1/4 in Gamma; {tested} random matrices: exact ratio inside the 256-bit enclosure"


def criterion_10():
    # dim 2 branch: J = 2 by default
    e = scalar_endomorphism(power_torus(gaussian_curve(), 2), 1 + GAUSS.i)      # q = 2
    cert = incompressibility_verdict(e, Assumptions(is_product_of_elliptic_curves=True))
    assert cert.iterate_threshold == 2 and cert.assumptions.jordan(2) == 2
    cert = incompressibility_verdict(gaussian_scalar(2), Assumptions(is_product_of_elliptic_curves=True))
    assert cert.iterate_threshold == 1 and cert.lo == 2
    # dim 3: no threshold without J, conditional on a user-supplied J otherwise
    f = gaussian_scalar(3)
    cert = incompressibility_verdict(f, Assumptions(is_product_of_elliptic_curves=True), VerdictOptions(height=0))
    assert cert.iterate_threshold is None
    for J, s in [(24, 1), (25, 2), (10 ** 6, 5)]:
        cert = incompressibility_verdict(f, Assumptions(is_product_of_elliptic_curves=True, jordan_constant=J),
                                         VerdictOptions(height=0))
        assert cert.iterate_threshold == s, (J, cert.iterate_threshold)
    return ("existence-only statements for general dimension are not computed; "
            "exercised via s* with user J (dim 3) and J = 2 (dim 2)")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


def run_criterion(k):
    try:
        detail = CRITERIA[k - 1]()
        LINES[k] = f"criterion {k}: PASS - {detail}"
        return True, LINES[k]
    except AssertionError as exc:
        LINES[k] = f"criterion {k}: FAIL - {exc}"
        return False, LINES[k]


@pytest.mark.parametrize("k", range(1, 11))
def test_criterion(k):
    ok, line = run_criterion(k)
    print(line)
    assert ok, line


if __name__ == "__main__":
    for k in range(1, 11):
        print(run_criterion(k)[1], flush=True)
