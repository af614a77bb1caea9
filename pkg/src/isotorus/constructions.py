"""Ready-made tori and isogenies used by the corpus, the tests and the demos."""
from __future__ import annotations

from .field import field_make
from .torus import (
    coordinate_subtorus,
    diagonal_endomorphism,
    elliptic_curve,
    endo_make,
    integer_matrix_endomorphism,
    power_torus,
    product_torus,
    scalar_endomorphism,
    torus_make,
)

GAUSS = field_make([-1])


def gaussian_curve():
    """``C / Z[i]``."""
    return elliptic_curve(GAUSS, GAUSS.i)


def e_n(n: int):
    """``E_n = C / (Z + n i Z)``."""
    return elliptic_curve(GAUSS, n * GAUSS.i)


def mult_ni(n: int):
    """Multiplication by ``n i`` on ``E_n``; kernel cyclic of order ``n^2``."""
    return endo_make(e_n(n), [[n * GAUSS.i]])


def swap_map(n: int):
    """``(z1, z2) -> (z2, n i z1)`` on ``E_n x E_n``."""
    T = power_torus(e_n(n), 2)
    return endo_make(T, [[0, 1], [n * GAUSS.i, 0]])


def gaussian_scalar(copies: int = 2, alpha=None):
    """Diagonal multiplication by ``alpha`` (default ``4 + 3i``) on ``(C/Z[i])^copies``."""
    alpha = GAUSS.coerce(4 + 3 * GAUSS.i if alpha is None else alpha)
    return scalar_endomorphism(power_torus(gaussian_curve(), copies), alpha)


def integer_matrix_on_square(M, curve=None):
    """``f(x) = x M`` on ``E x E`` (default ``E = C/Z[i]``)."""
    E = curve if curve is not None else gaussian_curve()
    return integer_matrix_endomorphism(power_torus(E, 2), M)


def family_matrix(t: int):
    return [[0, 1], [-t, 1]]


def family_map(t: int):
    """``x -> x [[0, 1], [-t, 1]]`` on ``(C/Z[i])^2``; characteristic polynomial ``x^2 - x + t``."""
    return integer_matrix_on_square(family_matrix(t))


def h1_times_h2():
    """``(1 + 2i) x (1 + sqrt-2)`` on ``C/Z[i] x C/Z[sqrt-2]``: degrees 5 and 3."""
    K = field_make([-1, -2])
    E1 = elliptic_curve(K, K.sqrt(-1))
    E2 = elliptic_curve(K, K.sqrt(-2))
    T = product_torus(E1, E2)
    return endo_make(T, [[1 + 2 * K.sqrt(-1), 0], [0, 1 + K.sqrt(-2)]])


def diag_2_3():
    """``2 x 3`` on ``C/Z[i] x C/Z[sqrt-2]`` (non-isogenous factors)."""
    K = field_make([-1, -2])
    T = product_torus(elliptic_curve(K, K.sqrt(-1)), elliptic_curve(K, K.sqrt(-2)))
    return diagonal_endomorphism(T, [2, 3])


def factor_subtori(torus):
    return [coordinate_subtorus(torus, [k]) for k in range(torus.dim)]


def zeta8_torus():
    """CM torus of ``Q(zeta_8)`` for the type ``{1, 3}``, with ``diag(1 + i, 1 - i)``.

    ``q = 2``. The type is induced from ``Q(sqrt-2)``, so the torus is not
    simple; it serves as the input for the 2-polarized exception branch.
    """
    K = field_make([-1, 2])
    z = (K.sqrt(2) + K.sqrt(-1) * K.sqrt(2)) / 2
    lattice = [[z ** k for k in range(4)], [z ** (3 * k) for k in range(4)]]
    T = torus_make(K, 2, lattice)
    return endo_make(T, [[1 + K.i, 0], [0, 1 - K.i]])
