"""Complex tori as explicit lattices, their endomorphisms, subtori and quotients.

Conventions
-----------
A torus ``A = C^n / Lambda`` is stored as an ``n x 2n`` matrix whose column
``j`` is the generator ``v_j`` of ``Lambda``. An endomorphism is a complex
``n x n`` matrix ``M`` acting on column vectors, together with the integer
``2n x 2n`` matrix ``L`` defined by

    M * (v_1, ..., v_2n) = (v_1, ..., v_2n) * L

so ``L`` acts on lattice coordinates. Row-vector conventions (``f(x) = x*M``)
are converted with :func:`integer_matrix_endomorphism`, which transposes.

A subtorus ``B`` is a saturated sublattice ``Lambda_B = U * Z^2m`` (columns of
``U`` in lattice coordinates) whose complex span has dimension ``m``. Its
canonical form is the column Hermite normal form of ``U``.
"""
from __future__ import annotations

from fractions import Fraction
from functools import cached_property

from . import lattice, linalg
from .errors import (
    DegenerateLattice,
    NotComplexClosed,
    NotLatticePreserving,
    NotPrimitive,
    NotStable,
    SpecMismatch,
    ValidationError,
)
from .field import FieldElement, FieldSpec, join_specs, lift, to_rectangular


def _as_tuple_matrix(rows):
    return tuple(tuple(r) for r in rows)


def field_coordinates(vec, spec: FieldSpec):
    """Rational coordinates of a vector of field elements (monomial-major per entry)."""
    out = []
    for x in vec:
        for mask in range(spec.degree):
            out.append(x.coeffs.get(mask, Fraction(0)))
    return out


class ComplexTorus:
    """``C^n / Lambda`` with ``Lambda`` given by ``2n`` generators over a multi-quadratic field."""

    def __init__(self, spec: FieldSpec, dim: int, lattice_matrix, *, check=True):
        self.spec = spec
        self.dim = dim
        self.lattice = _as_tuple_matrix(
            [[spec.coerce(x) for x in row] for row in lattice_matrix])
        if check:
            self._validate()

    def _validate(self):
        n = self.dim
        if n < 1:
            raise ValidationError("dimension must be positive")
        if len(self.lattice) != n or any(len(r) != 2 * n for r in self.lattice):
            raise ValidationError(f"lattice must be {n} x {2 * n}")
        d = linalg.det(self.realified())
        if d == 0:
            raise DegenerateLattice("lattice generators are R-linearly dependent")

    def realified(self):
        """``2n x 2n`` real matrix (entries in the extended field): real parts over imaginary parts."""
        n = self.dim
        re_rows = [[None] * (2 * n) for _ in range(n)]
        im_rows = [[None] * (2 * n) for _ in range(n)]
        for k in range(n):
            for j in range(2 * n):
                re, im, _ = to_rectangular(self.lattice[k][j])
                re_rows[k][j] = re
                im_rows[k][j] = im
        return re_rows + im_rows

    def generator(self, j):
        return [self.lattice[k][j] for k in range(self.dim)]

    def point(self, x):
        """``Lambda * x`` for an integer (or rational) coordinate vector ``x``."""
        return [sum((self.lattice[k][j] * x[j] for j in range(2 * self.dim)), self.spec.zero())
                for k in range(self.dim)]

    @cached_property
    def coordinate_matrix(self):
        """Rational ``(n * 2^k) x 2n`` matrix mapping lattice coordinates to field coordinates."""
        cols = [field_coordinates(self.generator(j), self.spec) for j in range(2 * self.dim)]
        return linalg.transpose(cols)

    def key(self):
        return (self.spec, self.dim, self.lattice)

    def __eq__(self, other):
        return isinstance(other, ComplexTorus) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        cols = ", ".join("(" + ", ".join(str(x) for x in self.generator(j)) + ")"
                         for j in range(2 * self.dim))
        return f"ComplexTorus(dim={self.dim}, {self.spec}, generators=[{cols}])"

    def to_json(self):
        return {
            "field": self.spec.to_json(),
            "dim": self.dim,
            "lattice": [[x.to_json() for x in row] for row in self.lattice],
        }

    @classmethod
    def from_json(cls, obj):
        from .field import FieldSpec as _FS
        spec = _FS.from_json(obj["field"])
        lat = [[FieldElement.from_json(spec, x) for x in row] for row in obj["lattice"]]
        return torus_make(spec, obj["dim"], lat)


def torus_make(spec: FieldSpec, dim: int, lattice_matrix) -> ComplexTorus:
    return ComplexTorus(spec, dim, lattice_matrix)


def _solve_integer_action(torus: ComplexTorus, images):
    """Integer matrix ``L`` with ``images[j] = sum_i L[i][j] v_i``, or raise."""
    A = torus.coordinate_matrix
    n2 = 2 * torus.dim
    rhs = [field_coordinates(w, torus.spec) for w in images]
    aug = [list(A[r]) + [rhs[j][r] for j in range(n2)] for r in range(len(A))]
    R, pivots = linalg.row_echelon(aug)
    if pivots[:n2] != list(range(n2)) or any(p >= n2 for p in pivots):
        raise NotLatticePreserving("matrix does not map the lattice into its rational span")
    L = [[None] * n2 for _ in range(n2)]
    for i in range(n2):
        for j in range(n2):
            x = R[i][n2 + j]
            if Fraction(x).denominator != 1:
                raise NotLatticePreserving("lattice image has non-integral coordinates")
            L[i][j] = int(x)
    return L


def _matrix_apply(M, vec):
    return [sum((M[r][c] * vec[c] for c in range(len(vec))), vec[0] * 0) for r in range(len(M))]


class Endomorphism:
    """Lattice-preserving complex-linear map of a torus, with its integer action ``L``."""

    def __init__(self, torus: ComplexTorus, M, L=None):
        self.torus = torus
        spec = torus.spec
        self.M = _as_tuple_matrix([[spec.coerce(x) for x in row] for row in M])
        n = torus.dim
        if len(self.M) != n or any(len(r) != n for r in self.M):
            raise ValidationError(f"endomorphism matrix must be {n} x {n}")
        if L is None:
            images = [_matrix_apply(self.M, torus.generator(j)) for j in range(2 * n)]
            L = _solve_integer_action(torus, images)
        else:
            self._check_relation(L)
        self.L = _as_tuple_matrix(L)
        if self.det_L != self.det_M_norm:
            raise AssertionError("det L differs from |det M|^2")

    def _check_relation(self, L):
        n2 = 2 * self.torus.dim
        for j in range(n2):
            lhs = _matrix_apply(self.M, self.torus.generator(j))
            rhs = self.torus.point([L[i][j] for i in range(n2)])
            if lhs != rhs:
                raise NotLatticePreserving("supplied L does not match M")

    @property
    def dim(self):
        return self.torus.dim

    @cached_property
    def det_M(self) -> FieldElement:
        d = linalg.det([list(r) for r in self.M])
        return self.torus.spec.coerce(d)

    @cached_property
    def det_M_norm(self) -> int:
        return (self.det_M * self.det_M.conj()).integer_value()

    @cached_property
    def det_L(self) -> int:
        return linalg.bareiss_det([list(r) for r in self.L])

    @property
    def degree(self) -> int:
        return abs(self.det_L)

    def is_isogeny(self) -> bool:
        return self.det_L != 0

    def trace_M(self) -> FieldElement:
        return sum((self.M[i][i] for i in range(self.dim)), self.torus.spec.zero())

    def compose(self, other: Endomorphism) -> Endomorphism:
        """``self o other``."""
        if other.torus != self.torus:
            raise SpecMismatch("endomorphisms of different tori")
        M = linalg.matmul([list(r) for r in self.M], [list(r) for r in other.M])
        L = linalg.matmul([list(r) for r in self.L], [list(r) for r in other.L])
        return Endomorphism(self.torus, M, L)

    def __eq__(self, other):
        return isinstance(other, Endomorphism) and self.torus == other.torus and self.M == other.M

    def __hash__(self):
        return hash((self.torus, self.M))

    def __repr__(self):
        rows = "; ".join(", ".join(str(x) for x in r) for r in self.M)
        return f"Endomorphism(M=[{rows}], deg={self.degree})"

    def to_json(self):
        return {"matrix": [[x.to_json() for x in row] for row in self.M]}


def endo_make(torus: ComplexTorus, M) -> Endomorphism:
    return Endomorphism(torus, M)


def endo_power(e: Endomorphism, s: int) -> Endomorphism:
    if s < 1:
        raise ValueError("power must be positive")
    if s == 1:
        return e
    M = linalg.matpow([list(r) for r in e.M], s)
    L = linalg.matpow([list(r) for r in e.L], s)
    M = [[e.torus.spec.coerce(x) for x in row] for row in M]
    return Endomorphism(e.torus, M, L)


def identity_endomorphism(torus: ComplexTorus) -> Endomorphism:
    n = torus.dim
    return Endomorphism(torus, linalg.identity(n), linalg.identity(2 * n))


# subtori

class Subtorus:
    """Saturated sublattice with complex span of dimension ``cdim``."""

    def __init__(self, torus: ComplexTorus, basis, *, check=True):
        self.torus = torus
        n2 = 2 * torus.dim
        cols = [list(map(int, row)) for row in basis]
        if len(cols) != n2:
            raise ValidationError(f"subtorus basis must have {n2} rows")
        width = len(cols[0]) if cols else 0
        if width and linalg.rank([[Fraction(x) for x in r] for r in cols]) != width:
            raise ValidationError("subtorus basis columns are dependent")
        if width % 2:
            raise NotComplexClosed("a subtorus lattice has even rank")
        if check and width and not lattice.is_primitive(cols):
            raise NotPrimitive("sublattice is not saturated")
        self.cdim = width // 2
        H = lattice.hermite_columns(cols) if width else [[] for _ in range(n2)]
        self.basis = _as_tuple_matrix(H)
        if check and width:
            images = self.images()
            if linalg.rank([list(r) for r in images]) != self.cdim:
                raise NotComplexClosed("real span of the sublattice is not a complex subspace")

    def images(self):
        """``n x 2m`` field matrix ``Lambda * U``."""
        n = self.torus.dim
        m2 = 2 * self.cdim
        cols = [self.torus.point([self.basis[i][j] for i in range(2 * n)]) for j in range(m2)]
        return [[cols[j][k] for j in range(m2)] for k in range(n)]

    def columns(self):
        return [list(r) for r in self.basis]

    def key(self):
        # rows of the row-HNF of U^T
        return tuple(zip(*self.basis)) if self.cdim else ()

    def sort_key(self):
        entries = [abs(x) for row in self.basis for x in row]
        height = max(entries) if entries else 0
        nnz = sum(1 for x in entries if x)
        k = self.key()
        pivots = tuple(next(i for i, x in enumerate(r) if x) for r in k)
        return (self.cdim, height, nnz, pivots, tuple(tuple(-x for x in r) for r in k))

    def height(self):
        entries = [abs(x) for row in self.basis for x in row]
        return max(entries) if entries else 0

    def __eq__(self, other):
        return isinstance(other, Subtorus) and self.torus == other.torus and self.key() == other.key()

    def __hash__(self):
        return hash((self.torus, self.key()))

    def __repr__(self):
        return f"Subtorus(cdim={self.cdim}, basis^T={[list(r) for r in self.key()]})"

    def to_json(self):
        return {"basis": [list(r) for r in self.basis]}


def subtorus_make(torus: ComplexTorus, U) -> Subtorus:
    return Subtorus(torus, U)


def trivial_subtorus(torus: ComplexTorus) -> Subtorus:
    return Subtorus(torus, [[] for _ in range(2 * torus.dim)])


def full_subtorus(torus: ComplexTorus) -> Subtorus:
    return Subtorus(torus, linalg.identity(2 * torus.dim))


def annihilator(vectors, spec: FieldSpec, n: int):
    """Rows (reduced echelon) spanning ``{r : r . w = 0 for all w}`` over the field."""
    if not vectors:
        return [[spec.one() if i == j else spec.zero() for j in range(n)] for i in range(n)]
    # nullspace of the m x n matrix whose rows are the vectors
    basis = linalg.nullspace([list(w) for w in vectors])
    if not basis:
        return []
    R, _ = linalg.row_echelon([[spec.coerce(x) for x in v] for v in basis])
    return [row for row in R if any(x != 0 for x in row)]


def sublattice_in_subspace(torus: ComplexTorus, annihilator_rows):
    """Integer basis (columns) of ``{x : R * Lambda * x = 0}``; always saturated."""
    n2 = 2 * torus.dim
    spec = torus.spec
    if not annihilator_rows:
        return linalg.identity(n2)
    # rational matrix of x -> coeffs(R Lambda x)
    rows = []
    RL = [[sum((r[k] * torus.lattice[k][j] for k in range(torus.dim)), spec.zero())
           for j in range(n2)] for r in annihilator_rows]
    for row in RL:
        for mask in range(spec.degree):
            rows.append([row[j].coeffs.get(mask, Fraction(0)) for j in range(n2)])
    rows = [r for r in rows if any(r)]
    if not rows:
        return linalg.identity(n2)
    # clear denominators row by row
    int_rows = [linalg.to_integer_vector(r) for r in rows]
    return lattice.integer_kernel(int_rows)


def subtorus_from_subspace(torus: ComplexTorus, vectors) -> Subtorus:
    """Subtorus ``Lambda ∩ span_C(vectors)``; raises if that intersection is too small."""
    R = annihilator(vectors, torus.spec, torus.dim)
    U = sublattice_in_subspace(torus, R)
    return Subtorus(torus, U)


def quotient_torus(torus: ComplexTorus, B: Subtorus):
    """``A / B`` with the integer projection of lattice coordinates.

    Returns ``(Y, P, R)`` where ``P`` is the ``2(n-m) x 2n`` integer projection
    on lattice coordinates and ``R`` the ``(n-m) x n`` complex projection
    ``C^n -> C^(n-m)`` with kernel ``span_C(B)``.
    """
    n, m = torus.dim, B.cdim
    if m >= n:
        raise ValidationError("cannot take the quotient by a full-dimensional subtorus")
    images = B.images()
    vectors = [[images[k][j] for k in range(n)] for j in range(2 * m)]
    R = annihilator(vectors, torus.spec, n)
    W = lattice.complete_basis(B.columns()) if m else linalg.identity(2 * n)
    Wi = linalg.inverse([[Fraction(x) for x in row] for row in W])
    P = [[int(x) for x in row] for row in Wi[2 * m:]]
    complement = [row[2 * m:] for row in W]
    lat = []
    for r in R:
        lat.append([sum((r[k] * torus.point([complement[i][j] for i in range(2 * n)])[k]
                         for k in range(n)), torus.spec.zero())
                    for j in range(2 * (n - m))])
    Y = ComplexTorus(torus.spec, n - m, lat)
    return Y, P, R


def is_stable(e: Endomorphism, B: Subtorus) -> bool:
    if B.cdim == 0:
        return True
    LU = linalg.matmul([list(r) for r in e.L], B.columns())
    return lattice.column_span_contains(B.columns(), LU)


def induced_endomorphism(e: Endomorphism, B: Subtorus) -> Endomorphism:
    """The map ``g`` on ``A/B`` induced by an ``e``-stable subtorus ``B``."""
    if not is_stable(e, B):
        raise NotStable("subtorus is not mapped into itself")
    Y, P, R = quotient_torus(e.torus, B)
    RM = linalg.matmul(R, [list(r) for r in e.M])
    # R is in reduced echelon form: its pivot columns carry an identity block
    pivots = [next(j for j, x in enumerate(row) if x != 0) for row in R]
    MY = [[RM[i][p] for p in pivots] for i in range(len(R))]
    check = linalg.matmul(MY, R)
    if check != RM:
        raise AssertionError("induced map does not commute with the projection")
    return Endomorphism(Y, MY)


# constructors for common tori

def elliptic_curve(spec: FieldSpec, tau) -> ComplexTorus:
    """``C / (Z + Z tau)``."""
    return torus_make(spec, 1, [[spec.one(), spec.coerce(tau)]])


def product_torus(*tori: ComplexTorus) -> ComplexTorus:
    """Product with block-diagonal lattice; generators ordered factor by factor."""
    spec = join_specs(*(t.spec for t in tori))
    n = sum(t.dim for t in tori)
    lat = [[spec.zero()] * (2 * n) for _ in range(n)]
    r = c = 0
    for t in tori:
        for k in range(t.dim):
            for j in range(2 * t.dim):
                lat[r + k][c + j] = lift(t.lattice[k][j], spec)
        r += t.dim
        c += 2 * t.dim
    return torus_make(spec, n, lat)


def power_torus(E: ComplexTorus, copies: int) -> ComplexTorus:
    return product_torus(*([E] * copies))


def diagonal_endomorphism(torus: ComplexTorus, entries) -> Endomorphism:
    spec = torus.spec
    n = torus.dim
    M = [[spec.coerce(entries[i]) if i == j else spec.zero() for j in range(n)] for i in range(n)]
    return endo_make(torus, M)


def scalar_endomorphism(torus: ComplexTorus, lam) -> Endomorphism:
    return diagonal_endomorphism(torus, [lam] * torus.dim)


def integer_matrix_endomorphism(torus: ComplexTorus, M) -> Endomorphism:
    """Endomorphism ``f(x) = x * M`` (row-vector convention) for an integer matrix ``M``.

    Stored as the column-acting complex matrix ``M^T``.
    """
    return endo_make(torus, linalg.transpose([list(r) for r in M]))


def delta_subtorus(torus: ComplexTorus, p: int, q: int) -> Subtorus:
    """``{(p x, q x) : x in E}`` inside ``E x E`` (first two coordinates)."""
    spec = torus.spec
    v = [spec.coerce(p), spec.coerce(q)] + [spec.zero()] * (torus.dim - 2)
    return subtorus_from_subspace(torus, [v])


def coordinate_subtorus(torus: ComplexTorus, coords) -> Subtorus:
    """Lattice points supported on the given complex coordinates."""
    spec = torus.spec
    vectors = []
    for k in coords:
        vectors.append([spec.one() if i == k else spec.zero() for i in range(torus.dim)])
    return subtorus_from_subspace(torus, vectors)
