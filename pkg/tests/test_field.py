from fractions import Fraction

import mpmath
import pytest
import sympy
from hypothesis import given

from isotorus.errors import InvalidGenerator, NotCoprime, NotRational, NotSquarefree, PrecisionExhausted, SpecMismatch
from isotorus.field import (
    QQ,
    FieldElement,
    box_contains_point,
    decide,
    field_make,
    integer_nth_root,
    join_specs,
    lift,
    numeric_embed,
    squarefree_decomposition,
)

from strategies import SPEC, elements


def as_sympy(a: FieldElement):
    total = sympy.Integer(0)
    for mask, c in a.coeffs.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for i, d in enumerate(a.spec.generators):
            if mask >> i & 1:
                term *= sympy.sqrt(d)
        total += term
    return total


def same(x, y):
    return sympy.expand(x - y) == 0


@given(elements(), elements())
def test_ring_operations_match_sympy(a, b):
    assert same(as_sympy(a + b), as_sympy(a) + as_sympy(b))
    assert same(as_sympy(a * b), as_sympy(a) * as_sympy(b))
    assert same(as_sympy(a - b), as_sympy(a) - as_sympy(b))


@given(elements(), elements())
def test_conjugation_is_multiplicative_involution(a, b):
    assert (a * b).conj() == a.conj() * b.conj()
    assert a.conj().conj() == a
    assert same(as_sympy(a.conj()), sympy.conjugate(as_sympy(a)))


@given(elements())
def test_inverse(a):
    if a.is_zero():
        with pytest.raises(ZeroDivisionError):
            1 / a
    else:
        assert a * (1 / a) == SPEC.one()


@given(elements())
def test_norm_to_rationals_is_rational(a):
    # product over all sign patterns is fixed by every automorphism
    n = a * a.conj()
    assert same(as_sympy(n), sympy.expand(as_sympy(a) * sympy.conjugate(as_sympy(a))))


@given(elements())
def test_json_round_trip(a):
    assert FieldElement.from_json(SPEC, a.to_json()) == a


@given(elements())
def test_numeric_embedding_encloses_exact_value(a):
    box = numeric_embed(a, 128)
    v = complex(sympy.N(as_sympy(a), 40))
    assert box.real.a - 1e-12 <= v.real <= box.real.b + 1e-12
    assert box.imag.a - 1e-12 <= v.imag <= box.imag.b + 1e-12
    assert box.real.delta < 1e-30 and box.imag.delta < 1e-30


def test_generators_and_sqrt():
    K = field_make([-1, -2])
    assert K.sqrt(-1) * K.sqrt(-1) == -1
    assert K.sqrt(2) * K.sqrt(2) == 2          # sqrt2 = -i * sqrt(-2)
    assert K.sqrt(-8) == 2 * K.sqrt(-2)
    assert K.i == K.gen(0)
    with pytest.raises(SpecMismatch):
        K.sqrt(3)


def test_sqrt_products_use_principal_root():
    K = field_make([-1, -2])
    v = numeric_embed(K.sqrt(2), 64)
    assert v.real.a > 1.41 and abs(v.imag.b) < 1e-15


@pytest.mark.parametrize("gens,exc", [([4], NotSquarefree), ([1], InvalidGenerator), ([0], InvalidGenerator),
                                      ([6, 2], NotCoprime), ([2.0], InvalidGenerator), ([True], InvalidGenerator),
                                      ([-12], NotSquarefree)])
def test_invalid_specs(gens, exc):
    with pytest.raises(exc):
        field_make(gens)


def test_spec_is_order_independent_and_joinable():
    assert field_make([-2, -1]) == field_make([-1, -2])
    K = join_specs(field_make([-1]), field_make([-2]))
    assert K == field_make([-1, -2])
    a = field_make([-1]).i + 3
    assert lift(a, K) * lift(a, K).conj() == 10
    with pytest.raises(SpecMismatch):
        lift(field_make([5]).gen(0), K)


def test_rational_values():
    K = field_make([-1])
    assert (K.i * K.i).rational_value() == -1
    assert K.coerce(Fraction(3, 2)).rational_value() == Fraction(3, 2)
    with pytest.raises(NotRational):
        K.i.rational_value()
    with pytest.raises(NotRational):
        K.coerce(Fraction(1, 2)).integer_value()
    assert QQ.coerce(5) == 5


def test_squarefree_decomposition():
    assert squarefree_decomposition(-12) == (2, -3)
    assert squarefree_decomposition(50) == (5, 2)
    assert squarefree_decomposition(-1) == (1, -1)


def test_integer_nth_root():
    assert integer_nth_root(3 ** 40, 8) == 243
    assert integer_nth_root(3 ** 40 + 1, 8) is None
    assert integer_nth_root(-8, 3) is None


def test_decide_escalates_and_caps():
    seen = []

    def pred(p):
        seen.append(p)
        return True if p >= 212 else None

    assert decide(pred) is True
    assert seen == [53, 106, 212]
    with pytest.raises(PrecisionExhausted):
        decide(lambda p: None, cap=256)


def test_box_containment():
    iv = mpmath.iv
    assert box_contains_point(iv.mpc(iv.mpf([0, 2]), iv.mpf([0, 2])), iv.mpc(1, 1))
    assert not box_contains_point(iv.mpc(iv.mpf([0, 2]), iv.mpf([0, 2])), iv.mpc(3, 1))
