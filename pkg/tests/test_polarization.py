from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import assume, given, strategies as st

from isotorus.constructions import GAUSS, family_map, gaussian_curve, gaussian_scalar, h1_times_h2, integer_matrix_on_square, mult_ni, swap_map
from isotorus.errors import NonNegativeDiscriminant, ZeroTrace
from isotorus.field import field_make, numeric_embed
from isotorus.polarization import (
    INT_AMPLIFIED,
    NONE,
    NUMERICALLY_POLARIZED,
    POLARIZED_INTEGER,
    char_poly,
    classify_lattice_action,
    classify_polarization,
    eigenratio,
    eigenratio_gamma_check,
    eigenratio_numeric,
    is_diagonalizable,
    shioda_mitani_make,
    trace_integrality_scalar,
)
from isotorus.proptest import Skip, build_endomorphism
from isotorus.torus import elliptic_curve, endo_make, endo_power, identity_endomorphism, power_torus


def test_char_polys():
    assert char_poly([[0, -4], [1, 0]]) == [4, 0, 1]
    assert char_poly([[1, 0], [0, 1]]) == [1, -2, 1]
    assert char_poly([list(r) for r in family_map(3).L]) == [9, -6, 7, -2, 1]   # (x^2 - x + 3)^2


def test_diagonalizability():
    assert is_diagonalizable([[1, 0], [0, 1]])
    assert not is_diagonalizable([[1, 1], [0, 1]])
    assert is_diagonalizable([[0, -4], [1, 0]])


@pytest.mark.parametrize("n", range(2, 7))
def test_swap_map_is_n_polarized(n):
    r = classify_polarization(swap_map(n))
    assert r.classification == POLARIZED_INTEGER and r.q == n
    assert r.numeric_check["agrees"]


@pytest.mark.parametrize("t", [2, 3, 5, 10])
def test_family_is_t_polarized(t):
    r = classify_polarization(family_map(t))
    assert r.polarized and r.q == t


def test_fifteen_family_is_int_amplified_only():
    r = classify_polarization(h1_times_h2())
    assert r.classification == INT_AMPLIFIED and not r.polarized
    assert r.int_amplified and not r.equal_moduli


def test_matrix_squaring_to_2I_is_2_polarized():
    r = classify_polarization(integer_matrix_on_square([[1, 1], [1, -1]]))
    assert r.polarized and r.q == 2


def test_identity_and_unipotent():
    assert classify_polarization(identity_endomorphism(gaussian_curve())).classification == NONE
    r = classify_lattice_action([[1, 1, 0, 0], [0, 1, 0, 0], [0, 0, 2, 0], [0, 0, 0, 2]], 2)
    assert r.classification == NONE


def test_irrational_q_gets_an_interval():
    # (z1, z2) -> (z2, (1+2i) z1) has degree 5, so q = sqrt 5
    K = GAUSS
    f = endo_make(power_torus(gaussian_curve(), 2), [[0, 1], [1 + 2 * K.i, 0]])
    r = classify_polarization(f)
    assert r.classification == NUMERICALLY_POLARIZED
    assert 5 in r.q * r.q
    assert "q" in r.to_json()


def test_trace_integrality():
    K = GAUSS
    assert trace_integrality_scalar(4 + 3 * K.i, gaussian_curve()) == (8, 25)
    for n in (2, 3, 4):
        assert trace_integrality_scalar(n * K.i, mult_ni(n).torus) == (0, n * n)
    K2 = field_make([-2])
    E = elliptic_curve(K2, K2.sqrt(-2))
    assert trace_integrality_scalar(1 + K2.sqrt(-2), E) == (2, 3)


def test_shioda_mitani_tori():
    T = shioda_mitani_make(1, 0, 1)
    assert T.spec == field_make([-1]) and T.dim == 2
    T = shioda_mitani_make(1, 1, 1)
    assert T.spec == field_make([-3])
    with pytest.raises(NonNegativeDiscriminant):
        shioda_mitani_make(1, 2, 1)


@pytest.mark.parametrize("m", [1, 2, 3, -5])
def test_scalar_ratio_is_a_quarter(m):
    T = shioda_mitani_make(1, 0, 1)
    e = endo_make(T, [[m, 0], [0, m]])
    g = eigenratio_gamma_check(e, 1)
    assert g.ratio == Fraction(1, 4) and g.in_gamma and g.n_value == 4


def test_zero_trace():
    T = shioda_mitani_make(1, 0, 1)
    with pytest.raises(ZeroTrace):
        eigenratio(endo_make(T, [[1, 0], [0, -1]]))


@st.composite
def endomorphisms(draw, max_n=2):
    kind = draw(st.integers(0, 3))
    n = draw(st.integers(1, max_n))
    entries = draw(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2),
                            min_size=n * n, max_size=n * n))
    try:
        e = build_endomorphism([kind, n, entries, []])
    except Skip:
        assume(False)
    assume(e.det_L != 0)
    return e


@given(endomorphisms())
def test_classification_against_numpy_eigenvalues(e):
    r = classify_polarization(e)
    mods = np.abs(np.linalg.eigvals(np.array(e.L, dtype=float)))
    if r.polarized:
        assert np.allclose(mods ** 2, float(r.q if isinstance(r.q, int) else mpmath.mpf(r.q.mid)), rtol=1e-6)
        assert r.q ** e.dim == r.degree if isinstance(r.q, int) else True
    if r.int_amplified:
        assert np.all(mods > 1 - 1e-9)
    elif r.degree > 1:
        assert np.min(mods) < 1 + 1e-6


@given(endomorphisms())
def test_iteration_coherence(e):
    r = classify_polarization(e, cross_check=False)
    assume(r.classification == POLARIZED_INTEGER)
    for s in (2, 3):
        assert classify_polarization(endo_power(e, s), cross_check=False).q == r.q ** s


@given(endomorphisms(), st.integers(0, 3))
def test_real_characteristic_polynomial(e, _):
    from isotorus import polys
    pM = polys.charpoly([list(r) for r in e.M])
    assume(all(c.conj() == c for c in pM))
    ints = [c.integer_value() for c in pM]
    assert polys.mul(ints, ints) == char_poly([list(r) for r in e.L])


@given(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4),
       st.integers(-2, 2), st.integers(-2, 2))
def test_exact_ratio_inside_numeric_box(a, b, c, d, x, y):
    K = GAUSS
    T = shioda_mitani_make(1, 0, 1)
    M = [[a + x * K.i, b], [c, d + y * K.i]]
    try:
        e = endo_make(T, M)
    except Exception:
        assume(False)
    assume(e.trace_M() != 0)
    exact = eigenratio(e)
    box = eigenratio_numeric(e, 256)
    point = numeric_embed(exact, 256)
    assert box.real.a <= point.real.b and point.real.a <= box.real.b
    assert box.imag.a <= point.imag.b and point.imag.a <= box.imag.b
