import pytest
from hypothesis import assume, given, strategies as st

from isotorus import lattice
from isotorus.constructions import diag_2_3, family_map, gaussian_curve, gaussian_scalar, integer_matrix_on_square, swap_map
from isotorus.dynamics import (
    PERIODIC,
    STABLE,
    UNDETECTED,
    counterexample_sequence,
    degree_one_witness,
    delta_restricted_degree_formula,
    delta_subtori,
    find_1subtori,
    gcd_power_test,
    image_subtorus,
    orbit_analysis,
    preperiodicity_survey,
    restricted_degree,
    scalar_action_check,
    stabilization_index,
)
from isotorus.errors import DimensionNotTwo
from isotorus.kernel import kernel_intersect_subtorus
from isotorus.polarization import shioda_mitani_make
from isotorus.torus import coordinate_subtorus, delta_subtorus, induced_endomorphism, is_stable, power_torus

EE = power_torus(gaussian_curve(), 2)


def test_images():
    f = swap_map(2)
    T = f.torus
    assert image_subtorus(f, coordinate_subtorus(T, [0])).key() == coordinate_subtorus(T, [1]).key()
    e = gaussian_scalar(2)
    for B in find_1subtori(e.torus, 1):
        assert image_subtorus(e, B).key() == B.key()
    g = family_map(3)
    assert image_subtorus(g, delta_subtorus(EE, 1, 0)).key() == delta_subtorus(EE, 0, 1).key()


def test_orbits():
    e = gaussian_scalar(2)
    r = orbit_analysis(e, coordinate_subtorus(e.torus, [0]))
    assert r.outcome == STABLE and (r.preperiod, r.period) == (0, 1)
    f = swap_map(2)
    r = orbit_analysis(f, coordinate_subtorus(f.torus, [0]))
    assert r.outcome == PERIODIC and (r.preperiod, r.period) == (0, 2)
    assert r.trajectory[0] == r.trajectory[0 + 2] if len(r.trajectory) > 2 else True
    for t in (2, 3, 5):
        r = orbit_analysis(family_map(t), delta_subtorus(EE, 1, 0), 40)
        assert r.outcome == UNDETECTED and r.cutoff == 40
        assert len(set(r.trajectory)) == len(r.trajectory) == 41


def test_orbit_restricted_degrees_match_kernel_analysis():
    f = family_map(3)
    r = orbit_analysis(f, delta_subtorus(EE, 1, 0), 6)
    assert all(d == 1 for d in r.restricted_degrees)
    g = integer_matrix_on_square([[2, 0], [0, 2]])
    r = orbit_analysis(g, delta_subtorus(EE, 1, 1), 3)
    assert r.restricted_degrees == [4]


def test_restricted_degrees():
    assert restricted_degree(family_map(3), delta_subtorus(EE, 1, 0)) == 1
    assert restricted_degree(integer_matrix_on_square([[2, 0], [0, 2]]), delta_subtorus(EE, 1, 1)) == 4
    f = diag_2_3()
    assert restricted_degree(f, coordinate_subtorus(f.torus, [0])) == 4


def test_find_1subtori():
    found = find_1subtori(EE, 1)
    keys = {B.key() for B in found}
    for p, q in [(1, 0), (0, 1), (1, 1), (1, -1)]:
        assert delta_subtorus(EE, p, q).key() in keys
    assert len(found) == 10
    assert len(found) > len(delta_subtori(EE, 1))          # i-twisted diagonals
    assert [B.sort_key() for B in found] == sorted(B.sort_key() for B in found)
    assert find_1subtori(shioda_mitani_make(1, 0, 1), 1)
    assert find_1subtori(EE, 0) == []


def test_find_1subtori_is_monotone_in_height():
    k1 = {B.key() for B in find_1subtori(EE, 1)}
    k2 = {B.key() for B in find_1subtori(EE, 2)}
    assert k1 < k2


def test_degree_one_witnesses():
    for t in (2, 3, 5, 10):
        w = degree_one_witness(family_map(t), 1)
        assert w is not None and restricted_degree(family_map(t), w) == 1
    assert degree_one_witness(integer_matrix_on_square([[2, 0], [0, 2]]), 2) is None
    f = swap_map(3)
    w = degree_one_witness(f, 2)
    # the kernel sits in the first factor; the second maps isomorphically onto the first
    assert w is not None and w.key() == coordinate_subtorus(f.torus, [1]).key()
    assert restricted_degree(f, coordinate_subtorus(f.torus, [0])) == 9
    with pytest.raises(DimensionNotTwo):
        degree_one_witness(gaussian_scalar(1), 1)


def test_scalar_action_check():
    assert scalar_action_check(gaussian_scalar(2)) is not None
    assert scalar_action_check(diag_2_3()) is None
    assert scalar_action_check(integer_matrix_on_square([[1, 1], [1, -1]])) is None


def test_stabilization_index():
    f = swap_map(2)
    T = f.torus
    assert stabilization_index(f, [coordinate_subtorus(T, [0]), coordinate_subtorus(T, [1])]).v == 2
    e = gaussian_scalar(2)
    assert stabilization_index(e, find_1subtori(e.torus, 1)).v == 1
    assert stabilization_index(family_map(3), [delta_subtorus(EE, 1, 0)], 30).v is None


def test_survey():
    res = preperiodicity_survey(gaussian_scalar(2), 1)
    assert res.all_preperiodic and res.counts() == {STABLE: 10}
    res = preperiodicity_survey(family_map(3), 1, 10)
    assert not res.all_preperiodic


def test_gcd_powers():
    r = gcd_power_test([[1, 1], [1, -1]], 4)
    assert r.contents[:2] == [1, 2] and not r.hypothesis and not r.violated
    assert gcd_power_test([[0, 1], [-3, 1]], 10).contents == [1] * 10
    assert gcd_power_test([[1, 0], [0, 1]], 5).contents == [1] * 5


@pytest.mark.parametrize("t", [2, 3, 5, 10])
def test_counterexample_sequence(t):
    from math import gcd
    seq = counterexample_sequence(t, 40)
    assert seq[1] == (0, 1)
    for s, (m, n) in enumerate(seq[1:], start=1):
        assert gcd(m, n) == 1 and (m + n) % t == 1 % t


@given(st.lists(st.integers(-4, 4), min_size=4, max_size=4), st.integers(0, 3), st.integers(-3, 3))
def test_delta_formula_matches_smith_form(m, p, q):
    assume((p, q) != (0, 0))
    from math import gcd
    assume(gcd(p, q) == 1)
    M = [m[:2], m[2:]]
    assume(M[0][0] * M[1][1] - M[0][1] * M[1][0] != 0)
    f = integer_matrix_on_square(M)
    B = delta_subtorus(EE, p, q)
    Mc = [[int(x.rational_value()) for x in row] for row in f.M]
    assert restricted_degree(f, B) == delta_restricted_degree_formula(Mc, p, q)


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_quotient_degree_identity(m):
    # upper triangular in column convention: the first factor is stable
    M = [[m[0], m[1]], [0, m[2]]]
    f = integer_matrix_on_square([list(r) for r in zip(*M)])
    assume(f.det_L != 0)
    for B in find_1subtori(EE, 1):
        if is_stable(f, B):
            assert f.degree == restricted_degree(f, B) * induced_endomorphism(f, B).degree


@given(st.lists(st.integers(-3, 3), min_size=4, max_size=4))
def test_images_are_valid_subtori(m):
    f = integer_matrix_on_square([m[:2], m[2:]])
    assume(f.det_L != 0)
    for B in find_1subtori(EE, 1):
        C = image_subtorus(f, B)
        assert C.cdim == B.cdim and lattice.is_primitive(C.columns())
        assert kernel_intersect_subtorus(f, B).order == restricted_degree(f, B)
