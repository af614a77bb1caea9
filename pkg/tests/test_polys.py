from fractions import Fraction

import numpy as np
import sympy
from hypothesis import assume, given, strategies as st

from isotorus import polys

from strategies import square_matrices

x = sympy.symbols("x")
int_polys = st.lists(st.integers(-6, 6), min_size=2, max_size=7).filter(lambda p: p[-1] != 0)


def to_sympy(p):
    return sympy.Poly(list(reversed(p)), x)


@given(square_matrices(sizes=(1, 2, 3, 4), lo=-5, hi=5))
def test_charpoly_matches_sympy(A):
    ours = polys.charpoly(A)
    theirs = sympy.Matrix(A).charpoly(x).all_coeffs()
    assert ours == [int(c) for c in reversed(theirs)]


@given(square_matrices(sizes=(2, 3), lo=-4, hi=4))
def test_cayley_hamilton(A):
    Z = polys.matrix_evaluate(polys.charpoly(A), A)
    assert all(v == 0 for row in Z for v in row)


@given(int_polys, int_polys)
def test_division_and_gcd(a, b):
    q, r = polys.divmod_poly(a, b)
    assert polys.add(polys.mul(q, b), r) == polys.trim([Fraction(c) for c in a])
    assert polys.degree(r) < polys.degree(b)
    g = polys.poly_gcd(a, b)
    assert sympy.Poly(list(reversed(g)), x).monic() == sympy.gcd(to_sympy(a), to_sympy(b)).monic()


@given(int_polys)
def test_squarefree_part(p):
    sf = polys.squarefree_part(p)
    assert polys.is_squarefree(sf)
    theirs = sympy.sqf_part(to_sympy(p))
    assert sympy.Poly(list(reversed(sf)), x).monic() == theirs.monic()


@given(int_polys, st.integers(-5, 5), st.integers(1, 8))
def test_sturm_counts_match_sympy(p, a, w):
    b = a + w
    distinct = set(sympy.real_roots(to_sympy(p)))
    assert polys.count_real_roots_closed(p, a, b) == len([r for r in distinct if a <= r <= b])
    assert polys.count_real_roots(p, a, b) == len([r for r in distinct if a < r <= b])


@given(int_polys)
def test_distinct_real_roots(p):
    assert polys.count_distinct_real_roots(p) == len(set(sympy.real_roots(to_sympy(p))))


@given(int_polys)
def test_schur_cohn_matches_numpy(p):
    roots = np.roots(list(reversed(p)))
    assume(all(abs(abs(r) - 1) > 1e-6 for r in roots))
    assert polys.schur_cohn_inside(p) == bool(all(abs(r) < 1 for r in roots))
    assert polys.all_roots_outside_unit_circle(p) == bool(all(abs(r) > 1 for r in roots))


def test_schur_cohn_boundary_cases():
    assert not polys.schur_cohn_inside([-1, 0, 1])     # x^2 - 1
    assert polys.schur_cohn_inside([1, 0, 4])          # 4x^2 + 1
    assert polys.all_roots_outside_unit_circle([15, -8, 1])   # (x-3)(x-5)


def test_reverse_and_to_str():
    assert polys.reverse([1, 2, 3]) == [3, 2, 1]
    assert polys.to_str([1, 0, -1]) == "-x^2 + 1"
