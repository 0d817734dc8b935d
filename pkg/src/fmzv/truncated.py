"""Truncated multiple harmonic sums over a range ``a < n_1 < ... < n_r < b``.

Entries may be any integers: ``k_i <= 0`` puts ``n_i^{-k_i}`` in the
numerator.  The default range for the per-prime value is ``(0, p)``.

The fast path is a prefix-state recurrence: with ``S_0 = 1`` and
``S_j(m+1) = S_j(m) + m^{-k_j} S_{j-1}(m)`` the answer is ``S_r(b)``, for
``(b - a - 1) * r`` ring updates in total.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .arith import ModResidue, inverse_mod, is_prime, signed_power
from .errors import DenominatorCollision, SizeGuard
from .index import Index

__all__ = [
    "TruncationRange",
    "DPStats",
    "zeta_trunc_exact",
    "zeta_trunc_prefix",
    "zeta_trunc_mod",
    "zeta_trunc_bruteforce",
    "BRUTEFORCE_LIMIT",
]

BRUTEFORCE_LIMIT = 10**7


@dataclass(frozen=True)
class TruncationRange:
    lower: int
    upper: int

    def __post_init__(self):
        if self.lower < 0:
            raise ValueError("lower bound must be non-negative")
        if self.lower > self.upper:
            raise ValueError(f"empty range needs lower <= upper, got ({self.lower}, {self.upper})")

    @classmethod
    def coerce(cls, rng: Union["TruncationRange", Sequence[int]]) -> "TruncationRange":
        if isinstance(rng, TruncationRange):
            return rng
        a, b = rng
        return cls(int(a), int(b))


RangeLike = Union[TruncationRange, Sequence[int]]


@dataclass
class DPStats:
    """Counts inner updates of the prefix-state recurrence."""

    updates: int = 0


def _exact_run(k: Index, a: int, b: int, stats: Optional[DPStats]):
    """Yield ``S_r`` after each step ``m = a+1 .. b-1`` (exact rationals)."""
    r = len(k)
    state: list = [1] + [0] * r
    for m in range(a + 1, b):
        for j in range(r, 0, -1):
            prev = state[j - 1]
            if prev:
                state[j] = state[j] + signed_power(m, -k[j - 1]) * prev
        if stats is not None:
            stats.updates += r
        yield state[r]


def zeta_trunc_exact(k: Index, rng: RangeLike, *, stats: Optional[DPStats] = None) -> Fraction:
    """``sum_{a<n_1<...<n_r<b} prod n_i^{-k_i}`` as an exact rational.

    >>> zeta_trunc_exact((1,), (0, 5))
    Fraction(25, 12)
    """
    rng = TruncationRange.coerce(rng)
    k = tuple(k)
    value = Fraction(1) if not k else Fraction(0)
    for value in _exact_run(k, rng.lower, rng.upper, stats):
        pass
    return Fraction(value)


def zeta_trunc_prefix(k: Index, a: int, b_max: int) -> list[Fraction]:
    """Values for every range ``(a, b)`` with ``a < b <= b_max`` from one DP pass.

    Element ``i`` of the result belongs to ``b = a + 1 + i``.
    """
    k = tuple(k)
    if b_max <= a:
        return []
    out = [Fraction(1) if not k else Fraction(0)]  # b = a + 1: empty range
    out.extend(Fraction(v) for v in _exact_run(k, a, b_max, None))
    return out


def zeta_trunc_mod(
    k: Index,
    p: int,
    n: int,
    rng: Optional[RangeLike] = None,
    *,
    stats: Optional[DPStats] = None,
) -> ModResidue:
    """``zeta_trunc_exact(k, rng)`` reduced modulo ``p**n``, computed directly in Z/p^nZ.

    The range defaults to ``(0, p)``.  A summand needing ``1/m`` with ``p | m``
    raises :class:`DenominatorCollision`; that can only happen for ``b > p``.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    rng = TruncationRange.coerce(rng) if rng is not None else TruncationRange(0, p)
    k = tuple(k)
    q = p**n
    r = len(k)
    a, b = rng.lower, rng.upper
    state = [1 % q] + [0] * r
    for m in range(a + 1, b):
        inv_m = None
        for j in range(r, 0, -1):
            prev = state[j - 1]
            if not prev:
                continue
            e = -k[j - 1]
            if e >= 0:
                factor = pow(m, e, q)
            else:
                if inv_m is None:
                    if m % p == 0:
                        raise DenominatorCollision(p, m)
                    inv_m = inverse_mod(m, q)
                factor = pow(inv_m, -e, q)
            state[j] = (state[j] + factor * prev) % q
        if stats is not None:
            stats.updates += r
    return ModResidue(p, n, state[r])


def zeta_trunc_bruteforce(k: Index, rng: RangeLike, *, limit: int = BRUTEFORCE_LIMIT) -> Fraction:
    """Literal nested-loop evaluation; the independent check for the DP."""
    rng = TruncationRange.coerce(rng)
    k = tuple(k)
    width = rng.upper - rng.lower
    if max(width, 0) ** len(k) > limit:
        raise SizeGuard(f"({width})^{len(k)} exceeds the enumeration limit {limit}")
    total = Fraction(0)
    for ns in itertools.combinations(range(rng.lower + 1, rng.upper), len(k)):
        term = Fraction(1)
        for n_i, k_i in zip(ns, k):
            if k_i >= 0:
                term /= n_i**k_i
            else:
                term *= n_i ** (-k_i)
        total += term
    return total
