"""Exact arithmetic: rationals, residues mod p^n, Bernoulli numbers, power sums.

Rationals are :class:`fractions.Fraction` (always normalized, denominator > 0).

Bernoulli numbers follow the Seki convention ``z e^z / (e^z - 1)``, so
``B_1 = +1/2``; equivalently ``B_n = B_n(1)`` for the Bernoulli polynomials
``z e^{xz} / (e^z - 1)``.  Every power evaluation goes through :func:`power`,
which fixes ``0**0 == 1``.
"""
from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, isqrt
from typing import Union

from .errors import DenominatorCollision, NotInvertible

Rational = Fraction
RationalLike = Union[int, Fraction]

__all__ = [
    "Rational",
    "power",
    "signed_power",
    "bernoulli_numbers",
    "bernoulli",
    "bernoulli_polynomial",
    "faulhaber_weights",
    "faulhaber_closed",
    "PolyQ",
    "is_prime",
    "primes_between",
    "inverse_mod",
    "ModResidue",
    "mod_embed",
]


def power(base, exponent: int):
    """``base**exponent`` for ``exponent >= 0`` with the convention ``0**0 == 1``."""
    if exponent < 0:
        raise ValueError("power() takes a non-negative exponent; use signed_power")
    if exponent == 0:
        return base * 0 + 1 if not isinstance(base, int) else 1
    return base**exponent


def signed_power(m: int, exponent: int) -> RationalLike:
    """``m**exponent`` as an exact int (exponent >= 0) or Fraction (exponent < 0)."""
    if exponent >= 0:
        return power(m, exponent)
    return Fraction(1, m ** (-exponent))


# ---------------------------------------------------------------------------
# Bernoulli numbers and polynomials


_BERNOULLI: list[Fraction] = [Fraction(1)]
_BERNOULLI_LOCK = threading.Lock()


def bernoulli_numbers(n: int) -> list[Fraction]:
    """Return ``[B_0, ..., B_n]`` with ``B_1 = 1/2``.

    >>> bernoulli_numbers(4)
    [Fraction(1, 1), Fraction(1, 2), Fraction(1, 6), Fraction(0, 1), Fraction(-1, 30)]
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    with _BERNOULLI_LOCK:
        # Seki convention: sum_{j=0}^{m} C(m+1, j) B_j = m + 1
        for m in range(len(_BERNOULLI), n + 1):
            acc = sum((comb(m + 1, j) * b for j, b in enumerate(_BERNOULLI)), Fraction(0))
            _BERNOULLI.append((Fraction(m + 1) - acc) / (m + 1))
        return _BERNOULLI[: n + 1]


def bernoulli(n: int) -> Fraction:
    return bernoulli_numbers(n)[n]


class PolyQ:
    """Univariate polynomial over the rationals, stored sparsely as ``{degree: coeff}``."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c: dict[int, Fraction] = {}
        if coeffs:
            items = coeffs.items() if isinstance(coeffs, dict) else enumerate(coeffs)
            for d, v in items:
                if d < 0:
                    raise ValueError("negative degree")
                v = Fraction(v)
                if v:
                    c[d] = c.get(d, Fraction(0)) + v
                    if not c[d]:
                        del c[d]
        self._c = c

    @property
    def coefficients(self) -> dict[int, Fraction]:
        return dict(self._c)

    @property
    def degree(self) -> int:
        return max(self._c, default=-1)

    def __getitem__(self, d: int) -> Fraction:
        return self._c.get(d, Fraction(0))

    def __call__(self, x):
        acc = x * 0
        for d, v in self._c.items():
            acc = acc + v * power(x, d)
        return acc

    def __eq__(self, other):
        if isinstance(other, PolyQ):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({0: Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other):
        if not isinstance(other, PolyQ):
            other = PolyQ({0: other})
        c = dict(self._c)
        for d, v in other._c.items():
            c[d] = c.get(d, Fraction(0)) + v
        return PolyQ(c)

    __radd__ = __add__

    def __neg__(self):
        return PolyQ({d: -v for d, v in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, PolyQ):
            return PolyQ({d: v * other for d, v in self._c.items()})
        c: dict[int, Fraction] = {}
        for d1, v1 in self._c.items():
            for d2, v2 in other._c.items():
                c[d1 + d2] = c.get(d1 + d2, Fraction(0)) + v1 * v2
        return PolyQ(c)

    __rmul__ = __mul__

    def __repr__(self):
        if not self._c:
            return "PolyQ(0)"
        terms = []
        for d in sorted(self._c, reverse=True):
            terms.append(f"{self._c[d]}*x^{d}" if d else str(self._c[d]))
        return "PolyQ(" + " + ".join(terms) + ")"


def bernoulli_polynomial(n: int) -> PolyQ:
    """``B_n(x)`` from ``z e^{xz}/(e^z - 1)``; ``B_n(1)`` is the Seki number ``B_n``.

    Expanded as ``sum_k C(n, k) B_k(0) x^{n-k}`` where ``B_k(0) = (-1)^k B_k``.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    bs = bernoulli_numbers(n)
    return PolyQ({n - k: comb(n, k) * (-1) ** k * bs[k] for k in range(n + 1)})


# ---------------------------------------------------------------------------
# Faulhaber


@lru_cache(maxsize=None)
def faulhaber_weights(k: int) -> tuple[Fraction, ...]:
    """The weights ``C(k+1, j) B_j / (k+1)`` for ``j = 0..k+1``.

    With these, ``sum_{a<n<b} n^k = sum_j w_j ((-1)^j b^(k+1-j) - a^(k+1-j))``.
    Every reduction step in the library is built from this tuple.
    """
    if k < 0:
        raise ValueError("k must be >= 0")
    bs = bernoulli_numbers(k + 1)
    return tuple(Fraction(comb(k + 1, j)) * bs[j] / (k + 1) for j in range(k + 2))


def faulhaber_closed(k: int, a: int, b: int) -> Fraction:
    """``sum_{a<n<b} n^k`` through the Bernoulli closed form.

    >>> faulhaber_closed(2, 1, 4)
    Fraction(13, 1)
    """
    if k < 0 or a < 0:
        raise ValueError("k and a must be non-negative")
    if a >= b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    total = Fraction(0)
    for j, w in enumerate(faulhaber_weights(k)):
        if w:
            e = k + 1 - j
            total += w * ((-1) ** j * power(b, e) - power(a, e))
    return total


# ---------------------------------------------------------------------------
# primes and residues


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def primes_between(lo: int, hi: int) -> list[int]:
    """All primes ``p`` with ``lo <= p <= hi`` (sieve)."""
    if hi < 2:
        return []
    sieve = bytearray([1]) * (hi + 1)
    sieve[0:2] = b"\x00\x00"
    for d in range(2, isqrt(hi) + 1):
        if sieve[d]:
            sieve[d * d :: d] = bytearray(len(range(d * d, hi + 1, d)))
    return [p for p in range(max(lo, 2), hi + 1) if sieve[p]]


def inverse_mod(a: int, m: int) -> int:
    """Inverse of ``a`` modulo ``m`` by the extended Euclidean algorithm."""
    old_r, r = a % m, m
    old_s, s = 1, 0
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
    if old_r != 1:
        raise NotInvertible(f"{a} is not invertible modulo {m}")
    return old_s % m


@dataclass(frozen=True)
class ModResidue:
    """An element of Z/p^nZ, remembering ``p`` and ``n``."""

    prime: int
    exponent: int
    value: int

    def __post_init__(self):
        if self.exponent < 1:
            raise ValueError("exponent must be positive")
        if not is_prime(self.prime):
            raise ValueError(f"{self.prime} is not prime")
        if not 0 <= self.value < self.modulus:
            object.__setattr__(self, "value", self.value % self.modulus)

    @property
    def modulus(self) -> int:
        return self.prime**self.exponent

    def _coerce(self, other) -> int:
        if isinstance(other, ModResidue):
            if (other.prime, other.exponent) != (self.prime, self.exponent):
                raise ValueError("residues live in different rings")
            return other.value
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return mod_embed(other, self.prime, self.exponent).value
        return NotImplemented

    def _make(self, v: int) -> "ModResidue":
        return ModResidue(self.prime, self.exponent, v % self.modulus)

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value + o)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value - o)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(o - self.value)

    def __neg__(self):
        return self._make(-self.value)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else self._make(self.value * o)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        return self._make(pow(self.value, e, self.modulus))

    def inverse(self) -> "ModResidue":
        if self.value % self.prime == 0:
            raise NotInvertible(f"{self.value} is not a unit modulo {self.prime}^{self.exponent}")
        return self._make(inverse_mod(self.value, self.modulus))

    def __eq__(self, other):
        if isinstance(other, ModResidue):
            return (self.prime, self.exponent, self.value) == (other.prime, other.exponent, other.value)
        if isinstance(other, int):
            return self.value == other % self.modulus
        return NotImplemented

    def __hash__(self):
        return hash((self.prime, self.exponent, self.value))

    def __int__(self):
        return self.value


def mod_embed(q: RationalLike, p: int, n: int) -> ModResidue:
    """Image of ``q`` in Z/p^nZ.  Raises :class:`DenominatorCollision` if ``p | den(q)``."""
    q = Fraction(q)
    if q.denominator % p == 0:
        raise DenominatorCollision(p, q.denominator)
    m = p**n
    return ModResidue(p, n, q.numerator * inverse_mod(q.denominator, m) % m)

