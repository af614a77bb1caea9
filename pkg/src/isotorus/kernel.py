"""Kernels of isogenies as finite abelian groups.

For an isogeny with lattice action ``L`` the kernel is
``L^-1 Z^2n / Z^2n``, isomorphic to ``Z^2n / L Z^2n``; its invariant factors are
the Smith diagonal of ``L``.

For a subtorus ``B`` with lattice basis ``U`` (``2n x 2m``) the intersection
``Ker(f) ∩ B`` is ``{v in Q^2m / Z^2m : L U v integral}``. Writing
``P (L U) Q = D`` in Smith form and ``v = Q w`` the condition becomes
``d_i w_i in Z``, so the group is ``⊕ Z/d_i`` over the elementary divisors of
``L U``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd, prod

import numpy as np
from sympy import factorint, isprime

from . import lattice, linalg
from .errors import CapExceeded, NotIsogeny, NotPrime, PrimeDoesNotDivideDegree
from .torus import Endomorphism, Subtorus


@dataclass(frozen=True)
class AbelianGroupStructure:
    """Finite abelian group ``⊕ Z/d_i`` with ``d_1 | d_2 | ...`` and every ``d_i >= 2``."""

    invariant_factors: tuple = ()

    def __post_init__(self):
        fs = tuple(int(d) for d in self.invariant_factors)
        if any(d < 2 for d in fs):
            raise ValueError("invariant factors must be at least 2")
        if any(fs[i + 1] % fs[i] for i in range(len(fs) - 1)):
            raise ValueError("invariant factors must form a divisibility chain")
        object.__setattr__(self, "invariant_factors", fs)

    @classmethod
    def from_diagonal(cls, diag):
        """Normalize any list of cyclic orders into invariant factors."""
        primes = {}
        for d in diag:
            d = abs(int(d))
            if d == 0:
                raise ValueError("infinite cyclic factor")
            for p, k in factorint(d).items():
                primes.setdefault(p, []).append(k)
        r = max((len(v) for v in primes.values()), default=0)
        fs = [1] * r
        for p, ks in primes.items():
            ks = sorted(ks)
            for j, k in enumerate(ks):
                fs[r - len(ks) + j] *= p ** k
        return cls(tuple(fs))

    @property
    def order(self) -> int:
        return prod(self.invariant_factors)

    @property
    def rank(self) -> int:
        return len(self.invariant_factors)

    @property
    def exponent(self) -> int:
        return self.invariant_factors[-1] if self.invariant_factors else 1

    def p_rank(self, p: int) -> int:
        return sum(1 for d in self.invariant_factors if d % p == 0)

    def to_json(self):
        return list(self.invariant_factors)

    def __str__(self):
        if not self.invariant_factors:
            return "0"
        return " x ".join(f"Z/{d}" for d in self.invariant_factors)


def _check_prime(p):
    if p is None:
        return
    if not isinstance(p, int) or not isprime(p):
        raise NotPrime(f"{p} is not prime")


def group_stats(G: AbelianGroupStructure, p=None):
    """``(order, rank, exponent, p_rank)``; ``p_rank`` is None when no prime is given."""
    _check_prime(p)
    return G.order, G.rank, G.exponent, (G.p_rank(p) if p is not None else None)


def _group_from_matrix(A) -> AbelianGroupStructure:
    return AbelianGroupStructure(tuple(d for d in lattice.invariant_factors(A) if d > 1))


def _require_isogeny(e: Endomorphism):
    if e.det_L == 0:
        raise NotIsogeny("endomorphism has infinite kernel")


def kernel_group(e: Endomorphism) -> AbelianGroupStructure:
    _require_isogeny(e)
    G = _group_from_matrix([list(r) for r in e.L])
    assert G.order == e.degree
    return G


def kernel_intersect_subtorus(e: Endomorphism, B: Subtorus) -> AbelianGroupStructure:
    _require_isogeny(e)
    if B.cdim == 0:
        return AbelianGroupStructure(())
    LU = linalg.matmul([list(r) for r in e.L], B.columns())
    return _group_from_matrix(LU)


def group_from_element_orders(orders, total: int) -> AbelianGroupStructure:
    """Rebuild invariant factors from the multiset of element orders.

    For each prime ``p`` the count ``|G[p^k]|`` of elements killed by ``p^k``
    equals ``p^(sum_i min(k, e_i))``, so successive quotients give the number
    of cyclic ``p``-factors of exponent at least ``k``.
    """
    orders = np.asarray(orders, dtype=np.int64)
    if total == 1:
        return AbelianGroupStructure(())
    diag = []
    for p, kmax in factorint(total).items():
        prev = 1
        at_least = []
        k = 1
        while True:
            count = int(np.count_nonzero((p ** k) % orders == 0))
            step = count // prev
            if step == 1:
                break
            m = 0
            while step > 1:
                step //= p
                m += 1
            at_least.append(m)
            prev = count
            k += 1
        # at_least[k-1] = #factors with exponent >= k
        for k in range(len(at_least)):
            nxt = at_least[k + 1] if k + 1 < len(at_least) else 0
            diag.extend([p ** (k + 1)] * (at_least[k] - nxt))
    return AbelianGroupStructure.from_diagonal(diag)


def brute_force_kernel_oracle(e: Endomorphism, cap: int = 2_000_000) -> AbelianGroupStructure:
    """Enumerate ``(1/D) Z^2n / Z^2n`` with ``D = |det L|`` and keep ``L v`` integral."""
    _require_isogeny(e)
    D = e.degree
    n2 = 2 * e.dim
    if D ** n2 > cap:
        raise CapExceeded(f"{D}^{n2} grid points exceed cap {cap}")
    if D == 1:
        return AbelianGroupStructure(())
    L = np.array(e.L, dtype=np.int64) % D
    grid = np.indices((D,) * n2).reshape(n2, -1)      # columns w, v = w / D
    image = (L @ grid) % D
    kept = grid[:, np.all(image == 0, axis=0)]
    g = np.gcd.reduce(np.vstack([kept, np.full((1, kept.shape[1]), D)]), axis=0)
    orders = D // g
    return group_from_element_orders(orders, kept.shape[1])


@dataclass
class RankSearchResult:
    """Outcome of a rank-index sweep; ``s is None`` means not found up to ``s_max``."""

    prime: int
    s: int | None
    group: AbelianGroupStructure | None
    table: list = field(default_factory=list)   # rows (s, invariant factors, p_rank)

    @property
    def found(self):
        return self.s is not None

    def to_json(self):
        return {
            "prime": self.prime,
            "s": self.s,
            "found": self.found,
            "group": self.group.to_json() if self.group else None,
            "table": [{"s": s, "kernel": list(fs), "p_rank": r} for s, fs, r in self.table],
        }


def prime_divisors(n: int):
    return sorted(factorint(abs(n)).keys())


def rank_index_search(e: Endomorphism, p: int, s_max: int = 12) -> RankSearchResult:
    """Least ``s <= s_max`` with ``rank_p Ker(e^s) >= dim``."""
    _check_prime(p)
    _require_isogeny(e)
    if e.degree % p:
        raise PrimeDoesNotDivideDegree(f"{p} does not divide deg = {e.degree}")
    if s_max < 1:
        raise ValueError("s_max must be positive")
    L = [list(r) for r in e.L]
    Ls = L
    table = []
    for s in range(1, s_max + 1):
        if s > 1:
            Ls = linalg.matmul(Ls, L)
        G = _group_from_matrix(Ls)
        r = G.p_rank(p)
        table.append((s, G.invariant_factors, r))
        if r >= e.dim:
            return RankSearchResult(p, s, G, table)
    return RankSearchResult(p, None, None, table)


def exponent_divides(G: AbelianGroupStructure, m: int) -> bool:
    return m % G.exponent == 0


def lcm_list(xs):
    out = 1
    for x in xs:
        out = out * x // gcd(out, x)
    return out
