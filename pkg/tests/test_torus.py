import pytest
from hypothesis import given, strategies as st

from isotorus import linalg
from isotorus.constructions import GAUSS, e_n, gaussian_curve, gaussian_scalar, integer_matrix_on_square, mult_ni, swap_map
from isotorus.errors import DegenerateLattice, NotComplexClosed, NotLatticePreserving, NotPrimitive, NotStable, ValidationError
from isotorus.field import field_make
from isotorus.kernel import kernel_intersect_subtorus
from isotorus.problem import parse_problem
from isotorus.torus import (
    ComplexTorus,
    coordinate_subtorus,
    delta_subtorus,
    endo_make,
    endo_power,
    full_subtorus,
    identity_endomorphism,
    induced_endomorphism,
    is_stable,
    power_torus,
    quotient_torus,
    subtorus_from_subspace,
    subtorus_make,
    torus_make,
    trivial_subtorus,
)

K = GAUSS
EE = power_torus(gaussian_curve(), 2)


def test_elliptic_curves():
    E = torus_make(K, 1, [[1, K.i]])
    assert E.realified() == [[1, 0], [0, 1]]
    E2 = torus_make(K, 1, [[1, 2 * K.i]])
    assert E2.realified() == [[1, 0], [0, 2]]
    with pytest.raises(DegenerateLattice):
        torus_make(K, 1, [[1, 2]])
    with pytest.raises(ValidationError):
        torus_make(K, 1, [[1, K.i, 2]])


def test_lattice_actions():
    assert mult_ni(2).L == ((0, -4), (1, 0))
    e = endo_make(gaussian_curve(), [[4 + 3 * K.i]])
    assert e.L == ((4, -3), (3, 4))
    assert e.degree == 25
    with pytest.raises(NotLatticePreserving):
        endo_make(gaussian_curve(), [[K.coerce("1/2")]])
    with pytest.raises(NotLatticePreserving):
        endo_make(e_n(2), [[K.i]])          # i does not preserve Z + 2iZ


def test_powers():
    e = endo_make(gaussian_curve(), [[4 + 3 * K.i]])
    e2 = endo_power(e, 2)
    assert [list(r) for r in e2.L] == linalg.matmul([list(r) for r in e.L], [list(r) for r in e.L])
    assert e2.degree == 625
    assert endo_power(e, 1).L == e.L
    f2 = endo_power(integer_matrix_on_square([[1, 1], [1, -1]]), 2)
    assert [[x.rational_value() for x in r] for r in f2.M] == [[2, 0], [0, 2]]
    with pytest.raises(ValueError):
        endo_power(e, 0)


def test_degree_is_norm_of_det():
    for n in range(2, 7):
        f = swap_map(n)
        assert f.degree == abs(f.det_L) == n * n
        assert f.det_M_norm == n * n


def test_subtori_validation():
    first = subtorus_make(EE, [[1, 0], [0, 1], [0, 0], [0, 0]])
    assert first.cdim == 1
    delta = subtorus_make(EE, [[1, 0], [0, 1], [1, 0], [0, 1]])
    assert delta.key() == delta_subtorus(EE, 1, 1).key()
    with pytest.raises(NotComplexClosed):
        subtorus_make(EE, [[1, 0], [0, 0], [0, 1], [0, 0]])
    with pytest.raises(NotPrimitive):
        subtorus_make(EE, [[2, 0], [0, 1], [0, 0], [0, 0]])
    with pytest.raises(ValidationError):
        subtorus_make(EE, [[1], [0], [0], [0]])


def test_subtorus_key_is_basis_invariant():
    a = subtorus_make(EE, [[1, 0], [0, 1], [1, 0], [0, 1]])
    b = subtorus_make(EE, [[1, 1], [0, 1], [1, 1], [0, 1]])
    assert a.key() == b.key()


def test_subtorus_from_subspace():
    B = subtorus_from_subspace(EE, [[K.one(), K.one()]])
    assert B.key() == delta_subtorus(EE, 1, 1).key()


def test_quotients():
    Y, P, R = quotient_torus(EE, coordinate_subtorus(EE, [0]))
    assert Y.dim == 1 and abs(linalg.det(Y.realified()).rational_value()) == 1
    B = delta_subtorus(EE, 1, 1)
    Y, P, R = quotient_torus(EE, B)
    assert Y.dim == 1
    assert all(v == 0 for row in linalg.matmul(P, B.columns()) for v in row)
    with pytest.raises(ValidationError):
        quotient_torus(EE, full_subtorus(EE))


def test_induced_maps():
    e = gaussian_scalar(2)
    B = coordinate_subtorus(e.torus, [0])
    g = induced_endomorphism(e, B)
    assert g.degree == 25
    assert e.degree == kernel_intersect_subtorus(e, B).order * g.degree
    ident = identity_endomorphism(EE)
    assert induced_endomorphism(ident, delta_subtorus(EE, 1, 2)).degree == 1
    f = swap_map(2)
    with pytest.raises(NotStable):
        induced_endomorphism(f, coordinate_subtorus(f.torus, [0]))


def test_trivial_and_full_are_stable():
    f = swap_map(3)
    assert is_stable(f, trivial_subtorus(f.torus))
    assert is_stable(f, full_subtorus(f.torus))


@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4))
def test_integer_matrices_preserve_any_product_lattice(m):
    M = [m[:2], m[2:]]
    f = integer_matrix_on_square(M)
    det = M[0][0] * M[1][1] - M[0][1] * M[1][0]
    assert f.det_L == det ** 2
    assert f.degree == det ** 2


@given(st.integers(-3, 3), st.integers(-3, 3), st.integers(1, 3), st.integers(1, 3))
def test_composition_multiplies_degrees(a, b, c, d):
    e1 = endo_make(gaussian_curve(), [[a + b * K.i]])
    e2 = endo_make(gaussian_curve(), [[c + d * K.i]])
    assert e1.compose(e2).degree == e1.degree * e2.degree


def test_json_round_trip():
    f = swap_map(3)
    T2 = ComplexTorus.from_json(f.torus.to_json())
    assert T2.key() == f.torus.key()
    text = ('{"torus": {"field": {"generators": [-1]}, "dim": 1, "lattice": [[1, {"coeffs": {"0": "2/1"}}]]},'
            '"endomorphism": {"matrix": [[{"coeffs": {"0": "2/1"}}]]}}')
    p = parse_problem(text)
    assert p.endomorphism.L == mult_ni(2).L


def test_field_mismatch_is_rejected():
    K2 = field_make([-2])
    with pytest.raises(ValidationError):
        endo_make(gaussian_curve(), [[K2.sqrt(-2)]])
