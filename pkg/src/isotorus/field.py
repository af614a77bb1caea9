"""Exact arithmetic in multi-quadratic fields Q(sqrt(d_1), ..., sqrt(d_k)).

An element is stored as a map from monomials to rationals. A monomial is a
subset ``S`` of generator indices, encoded as a bitmask, standing for the
product of ``sqrt(d_i)`` over ``i`` in ``S``. Multiplication uses

    mono_S * mono_T = (prod_{i in S & T} d_i) * mono_{S ^ T}

which stays inside the basis because the generators are squarefree and
pairwise coprime.

The complex embedding is the principal one: ``sqrt(d) -> i*sqrt(|d|)`` for
``d < 0``. Numeric values are rigorous enclosures computed with
``mpmath``'s interval context.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd, isqrt

from mpmath.ctx_iv import MPIntervalContext

from . import linalg
from .errors import (
    InvalidGenerator,
    NotCoprime,
    NotRational,
    NotSquarefree,
    PrecisionExhausted,
    SpecMismatch,
)

PRECISION_CAP = 4096


def is_squarefree(n: int) -> bool:
    n = abs(n)
    if n < 2:
        return True
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1
    return True


def squarefree_decomposition(n: int) -> tuple[int, int]:
    """Return ``(f, d)`` with ``n == f*f*d`` and ``d`` squarefree (sign kept in ``d``)."""
    sign = -1 if n < 0 else 1
    n = abs(n)
    f = 1
    p = 2
    while p * p <= n:
        while n % (p * p) == 0:
            n //= p * p
            f *= p
        p += 1
    return f, sign * n


@dataclass(frozen=True)
class FieldSpec:
    generators: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.generators)

    @property
    def degree(self) -> int:
        return 1 << self.k

    @cached_property
    def mono_factor(self) -> tuple[int, ...]:
        # prod of d_i over the bits of each mask
        out = []
        for mask in range(self.degree):
            f = 1
            for i, d in enumerate(self.generators):
                if mask >> i & 1:
                    f *= d
            out.append(f)
        return tuple(out)

    @cached_property
    def conj_sign(self) -> tuple[int, ...]:
        neg = [d < 0 for d in self.generators]
        out = []
        for mask in range(self.degree):
            odd = sum(1 for i in range(self.k) if mask >> i & 1 and neg[i]) % 2
            out.append(-1 if odd else 1)
        return tuple(out)

    def zero(self) -> FieldElement:
        return FieldElement(self, {})

    def one(self) -> FieldElement:
        return FieldElement(self, {0: Fraction(1)})

    def __call__(self, value) -> FieldElement:
        return self.coerce(value)

    def coerce(self, value) -> FieldElement:
        if isinstance(value, FieldElement):
            if value.spec == self:
                return value
            return lift(value, self)
        if isinstance(value, (int, Fraction)):
            return FieldElement(self, {0: Fraction(value)})
        if isinstance(value, str):
            return FieldElement(self, {0: Fraction(value)})
        raise TypeError(f"cannot coerce {value!r} into {self}")

    def sqrt(self, d: int) -> FieldElement:
        """The element ``sqrt(d)`` for ``d`` a generator, or ``f*sqrt(d')`` when
        ``d = f^2 d'`` with ``d'`` a product of generators."""
        f, core = squarefree_decomposition(d)
        if core == 1:
            return self.coerce(f)
        mask = self._mask_for_product(core)
        if mask is None:
            raise SpecMismatch(f"sqrt({d}) is not in the field with generators {list(self.generators)}")
        # the monomial embeds as i**negs * sqrt(|core|); pick the principal root
        negs = sum(1 for i, g in enumerate(self.generators) if mask >> i & 1 and g < 0)
        sign = -1 if (negs // 2) % 2 else 1
        return FieldElement(self, {mask: Fraction(sign * f)})

    def _mask_for_product(self, core: int):
        # find a subset whose generator product equals core exactly
        for mask, val in enumerate(self.mono_factor):
            if val == core and mask:
                return mask
        return None

    def gen(self, i: int) -> FieldElement:
        return FieldElement(self, {1 << i: Fraction(1)})

    @property
    def i(self) -> FieldElement:
        """``sqrt(-1)`` if it is a generator."""
        return self.sqrt(-1)

    def to_json(self) -> dict:
        return {"generators": list(self.generators)}

    @classmethod
    def from_json(cls, obj) -> FieldSpec:
        return field_make(obj["generators"])

    def __str__(self):
        return "Q(" + ", ".join(f"sqrt({d})" for d in self.generators) + ")" if self.k else "Q"


def field_make(generators) -> FieldSpec:
    gens = []
    for d in generators:
        if isinstance(d, bool) or not isinstance(d, int):
            raise InvalidGenerator(f"generator {d!r} is not an integer")
        if d in (0, 1):
            raise InvalidGenerator(f"generator {d} is not allowed")
        if not is_squarefree(d):
            raise NotSquarefree(f"generator {d} is not squarefree")
        gens.append(d)
    gens = sorted(set(gens), key=lambda d: (abs(d), d))
    for a in range(len(gens)):
        for b in range(a + 1, len(gens)):
            if gcd(gens[a], gens[b]) != 1:
                raise NotCoprime(f"generators {gens[a]} and {gens[b]} are not coprime")
    return FieldSpec(tuple(gens))


QQ = FieldSpec(())


def join_specs(*specs: FieldSpec) -> FieldSpec:
    gens = set()
    for s in specs:
        gens.update(s.generators)
    return field_make(sorted(gens))


def lift(a: FieldElement, target: FieldSpec) -> FieldElement:
    """Re-express ``a`` in a spec whose generators include those of ``a.spec``."""
    index = {}
    for i, d in enumerate(a.spec.generators):
        if d not in target.generators:
            raise SpecMismatch(f"cannot lift {a.spec} into {target}")
        index[i] = target.generators.index(d)
    coeffs = {}
    for mask, c in a.coeffs.items():
        new = 0
        for i in range(a.spec.k):
            if mask >> i & 1:
                new |= 1 << index[i]
        coeffs[new] = c
    return FieldElement(target, coeffs)


class FieldElement:
    """Immutable element of a multi-quadratic field."""

    __slots__ = ("spec", "coeffs", "_hash")

    def __init__(self, spec: FieldSpec, coeffs: dict):
        self.spec = spec
        self.coeffs = {m: Fraction(c) for m, c in coeffs.items() if c != 0}
        self._hash = None

    # construction helpers

    @classmethod
    def from_items(cls, spec, items):
        acc = {}
        for m, c in items:
            acc[m] = acc.get(m, 0) + c
        return cls(spec, acc)

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise SpecMismatch(f"{self.spec} vs {other.spec}")
            return other
        if isinstance(other, (int, Fraction)):
            return FieldElement(self.spec, {0: Fraction(other)})
        return None

    # ring operations

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        acc = dict(self.coeffs)
        for m, c in o.coeffs.items():
            acc[m] = acc.get(m, 0) + c
        return FieldElement(self.spec, acc)

    __radd__ = __add__

    def __neg__(self):
        return FieldElement(self.spec, {m: -c for m, c in self.coeffs.items()})

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        factor = self.spec.mono_factor
        acc = {}
        for s, a in self.coeffs.items():
            for t, b in o.coeffs.items():
                m = s ^ t
                acc[m] = acc.get(m, 0) + a * b * factor[s & t]
        return FieldElement(self.spec, acc)

    __rmul__ = __mul__

    def mul_matrix(self):
        """Matrix of multiplication by ``self`` in the monomial basis (columns = images)."""
        n = self.spec.degree
        factor = self.spec.mono_factor
        M = [[Fraction(0)] * n for _ in range(n)]
        for t in range(n):
            for s, a in self.coeffs.items():
                M[s ^ t][t] += a * factor[s & t]
        return M

    def __truediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero field element")
        n = self.spec.degree
        rhs = [self.coeffs.get(m, Fraction(0)) for m in range(n)]
        x = linalg.solve(o.mul_matrix(), rhs)
        return FieldElement(self.spec, dict(enumerate(x)))

    def __rtruediv__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, e: int):
        if e < 0:
            return (self.spec.one() / self) ** (-e)
        result = self.spec.one()
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    # comparisons

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return not self.coeffs
            return self.coeffs == {0: Fraction(other)}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.spec, tuple(sorted(self.coeffs.items()))))
        return self._hash

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    # structure

    def conj(self) -> FieldElement:
        sign = self.spec.conj_sign
        return FieldElement(self.spec, {m: c * sign[m] for m, c in self.coeffs.items()})

    def is_rational(self) -> bool:
        return all(m == 0 for m in self.coeffs)

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise NotRational(f"{self} is not rational")
        return self.coeffs.get(0, Fraction(0))

    def integer_value(self) -> int:
        q = self.rational_value()
        if q.denominator != 1:
            raise NotRational(f"{self} is not an integer")
        return q.numerator

    def to_rectangular(self):
        return to_rectangular(self)

    def numeric(self, precision: int = 53):
        return numeric_embed(self, precision)

    # printing / serialization

    def _mono_str(self, mask):
        parts = [f"√{d}" for i, d in enumerate(self.spec.generators) if mask >> i & 1]
        return "·".join(parts)

    def __str__(self):
        if not self.coeffs:
            return "0"
        out = []
        for m in sorted(self.coeffs):
            c = self.coeffs[m]
            mono = self._mono_str(m)
            if not mono:
                term = str(c)
            elif c == 1:
                term = mono
            elif c == -1:
                term = "-" + mono
            else:
                term = f"{c}*{mono}" if c.denominator == 1 else f"({c})*{mono}"
            out.append(term)
        s = out[0]
        for t in out[1:]:
            s += t if t.startswith("-") else "+" + t
        return s

    def __repr__(self):
        return f"FieldElement({self})"

    def to_json(self) -> dict:
        coeffs = {}
        for m in sorted(self.coeffs):
            key = ",".join(str(i) for i in range(self.spec.k) if m >> i & 1)
            c = self.coeffs[m]
            coeffs[key] = f"{c.numerator}/{c.denominator}"
        return {"coeffs": coeffs}

    @classmethod
    def from_json(cls, spec: FieldSpec, obj) -> FieldElement:
        if isinstance(obj, bool):
            raise TypeError("booleans are not field elements")
        if isinstance(obj, (int, str)):
            return spec.coerce(Fraction(obj))
        if not isinstance(obj, dict) or set(obj) != {"coeffs"}:
            raise ValueError(f"malformed field element {obj!r}")
        coeffs = {}
        for key, val in obj["coeffs"].items():
            mask = 0
            if key != "":
                for part in key.split(","):
                    idx = int(part)
                    if not 0 <= idx < spec.k:
                        raise ValueError(f"generator index {idx} out of range")
                    mask |= 1 << idx
            coeffs[mask] = coeffs.get(mask, 0) + Fraction(val)
        return cls(spec, coeffs)


def field_arithmetic(a: FieldElement, b: FieldElement, kind: str) -> FieldElement:
    if a.spec != b.spec:
        raise SpecMismatch(f"{a.spec} vs {b.spec}")
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown operation {kind!r}")


def complex_conjugate(a: FieldElement) -> FieldElement:
    return a.conj()


def rational_value(a: FieldElement) -> Fraction:
    return a.rational_value()


@lru_cache(maxsize=None)
def extended_spec(spec: FieldSpec) -> FieldSpec:
    """Spec over ``{-1} | {|d_i| : |d_i| != 1}`` housing real and imaginary parts."""
    return field_make([-1] + [abs(d) for d in spec.generators if abs(d) != 1])


def to_rectangular(a: FieldElement):
    """Split ``a`` into real and imaginary parts in the extended spec.

    Returns ``(re, im, extended)`` with ``re + sqrt(-1)*im`` equal to ``a``
    under the principal embedding.
    """
    ext = extended_spec(a.spec)
    index = {}
    for i, d in enumerate(a.spec.generators):
        if abs(d) != 1:
            index[i] = ext.generators.index(abs(d))
    re, im = {}, {}
    for mask, c in a.coeffs.items():
        new = 0
        negs = 0
        for i, d in enumerate(a.spec.generators):
            if mask >> i & 1:
                if d < 0:
                    negs += 1
                if i in index:
                    new |= 1 << index[i]
        # i**negs
        r = negs % 4
        if r == 0:
            re[new] = re.get(new, 0) + c
        elif r == 1:
            im[new] = im.get(new, 0) + c
        elif r == 2:
            re[new] = re.get(new, 0) - c
        else:
            im[new] = im.get(new, 0) - c
    return FieldElement(ext, re), FieldElement(ext, im), ext


# numeric embedding

@lru_cache(maxsize=None)
def interval_context(precision: int) -> MPIntervalContext:
    ctx = MPIntervalContext()
    ctx.prec = precision
    return ctx


def _generator_boxes(spec: FieldSpec, ctx):
    out = []
    for d in spec.generators:
        r = ctx.sqrt(abs(d))
        out.append(ctx.mpc(0, r) if d < 0 else ctx.mpc(r, 0))
    return out


def numeric_embed(a: FieldElement, precision: int = 53):
    """Rigorous complex box (``ivmpc``) containing the embedded value of ``a``."""
    if precision < 53:
        raise ValueError("precision must be at least 53 bits")
    ctx = interval_context(precision)
    if not a.coeffs:
        return ctx.mpc(0, 0)
    gens = _generator_boxes(a.spec, ctx)
    total = ctx.mpc(0, 0)
    for mask, c in a.coeffs.items():
        term = ctx.mpc(ctx.mpf(c.numerator) / c.denominator, 0)
        for i in range(a.spec.k):
            if mask >> i & 1:
                term = term * gens[i]
        total = total + term
    return total


def decide(predicate, start: int = 53, cap: int = PRECISION_CAP):
    """Run ``predicate(precision)`` at doubling precisions until it returns a bool.

    ``predicate`` returns ``None`` while undecided.
    """
    precision = max(53, start)
    while precision <= cap:
        verdict = predicate(precision)
        if verdict is not None:
            return verdict
        precision *= 2
    raise PrecisionExhausted(f"undecided at {cap} bits")


def box_contains_point(box, point) -> bool:
    """Whether the complex interval ``box`` contains the complex interval ``point``."""
    return (box.real.a <= point.real.a and point.real.b <= box.real.b
            and box.imag.a <= point.imag.a and point.imag.b <= box.imag.b)


def boxes_overlap(x, y) -> bool:
    return not (x.real.b < y.real.a or y.real.b < x.real.a
                or x.imag.b < y.imag.a or y.imag.b < x.imag.a)


def integer_nth_root(n: int, k: int):
    """Exact integer k-th root of ``n >= 0`` or ``None``."""
    if n < 0:
        return None
    if k == 1:
        return n
    if k == 2:
        r = isqrt(n)
        return r if r * r == n else None
    lo, hi = 0, 1
    while hi ** k <= n:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if mid ** k < n:
            lo = mid + 1
        else:
            hi = mid
    return lo if lo ** k == n else None
