"""Indices, two-variable rational polynomials and formal linear combinations.

An index is a plain ``tuple[int, ...]``.  A :class:`Combination` maps indices
to :class:`Poly2` coefficients; the two polynomial variables are written
``x+`` and ``x-`` and stand for the lower and upper end of the summation
range (``t+``/``t-`` on the analytic side, ``0``/``p`` for the default range).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Tuple

from .arith import power
from .errors import ParseError

Index = Tuple[int, ...]
Monomial = Tuple[int, int]

__all__ = [
    "Index",
    "IndexInfo",
    "classify",
    "is_positive",
    "parse_index",
    "format_index",
    "Poly2",
    "Combination",
]


@dataclass(frozen=True)
class IndexInfo:
    depth: int
    weight: Optional[int]  # None for indices with a non-positive entry
    is_positive: bool
    is_admissible: bool
    positive_count: int
    positive_sum: int


def is_positive(k: Index) -> bool:
    return all(e > 0 for e in k)


def classify(k: Index) -> IndexInfo:
    pos = [e for e in k if e > 0]
    positive = len(pos) == len(k)
    return IndexInfo(
        depth=len(k),
        weight=sum(k) if positive else None,
        is_positive=positive,
        is_admissible=positive and (not k or k[-1] >= 2),
        positive_count=len(pos),
        positive_sum=sum(pos),
    )


_INT = re.compile(r"[+-]?\d+\Z")


def parse_index(text: str) -> Index:
    """Parse ``"k1,k2,...,kr"``; the empty string is the empty index.

    Whitespace around entries is tolerated.
    """
    if text.strip() == "":
        return ()
    out = []
    pos = 0
    for field in text.split(","):
        stripped = field.strip()
        if not _INT.match(stripped):
            offset = pos + (len(field) - len(field.lstrip()))
            what = "empty entry" if not stripped else f"not an integer: {stripped!r}"
            raise ParseError(what, offset)
        out.append(int(stripped))
        pos += len(field) + 1
    return tuple(out)


def format_index(k: Index) -> str:
    return ",".join(str(e) for e in k)


class Poly2:
    """Polynomial over Q in two variables, stored as ``{(d_plus, d_minus): coeff}``.

    Instances are treated as immutable.  Arithmetic accepts ints and Fractions
    as constants.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Optional[Mapping[Monomial, object]] = None, *, _trusted: bool = False):
        if _trusted:
            self._c = coeffs
        else:
            c: dict[Monomial, Fraction] = {}
            if coeffs:
                for (dp, dm), v in coeffs.items():
                    if dp < 0 or dm < 0:
                        raise ValueError("negative exponent")
                    v = Fraction(v)
                    if v:
                        c[dp, dm] = v
            self._c = c
        self._hash = None

    # -- constructors -------------------------------------------------------
    @classmethod
    def const(cls, v) -> "Poly2":
        return cls({(0, 0): v})

    @classmethod
    def x_plus(cls, e: int = 1) -> "Poly2":
        return cls({(e, 0): 1})

    @classmethod
    def x_minus(cls, e: int = 1) -> "Poly2":
        return cls({(0, e): 1})

    # -- access -------------------------------------------------------------
    @property
    def coefficients(self) -> dict[Monomial, Fraction]:
        return dict(self._c)

    def items(self) -> Iterator[tuple[Monomial, Fraction]]:
        return iter(sorted(self._c.items(), key=_monomial_order))

    def __bool__(self):
        return bool(self._c)

    def __getitem__(self, m: Monomial) -> Fraction:
        return self._c.get(m, Fraction(0))

    @property
    def degree(self) -> int:
        return max((dp + dm for dp, dm in self._c), default=-1)

    def is_constant(self) -> bool:
        return all(m == (0, 0) for m in self._c)

    def __eq__(self, other):
        if isinstance(other, Poly2):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == ({(0, 0): Fraction(other)} if other else {})
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    # -- ring operations ----------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly2.const(other)
        elif not isinstance(other, Poly2):
            return NotImplemented
        c = dict(self._c)
        for m, v in other._c.items():
            s = c.get(m, 0) + v
            if s:
                c[m] = s
            else:
                c.pop(m, None)
        return Poly2(c, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly2({m: -v for m, v in self._c.items()}, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly2()
            return Poly2({m: v * other for m, v in self._c.items()}, _trusted=True)
        if not isinstance(other, Poly2):
            return NotImplemented
        c: dict[Monomial, Fraction] = {}
        for (p1, m1), v1 in self._c.items():
            for (p2, m2), v2 in other._c.items():
                key = (p1 + p2, m1 + m2)
                c[key] = c.get(key, 0) + v1 * v2
        return Poly2({m: v for m, v in c.items() if v}, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        out = Poly2.const(1)
        for _ in range(e):
            out = out * self
        return out

    # -- evaluation / substitution -------------------------------------------
    def __call__(self, x_plus, x_minus):
        """Evaluate at ``(x_plus, x_minus)``; works for ints, Fractions, complex, residues."""
        acc = None
        for (dp, dm), v in self._c.items():
            term = power(x_plus, dp) * power(x_minus, dm) * v
            acc = term if acc is None else acc + term
        if acc is None:
            return x_plus * 0 if not isinstance(x_plus, int) else Fraction(0)
        return acc

    def specialize_single(self) -> "Poly2":
        """Substitute ``x+ = 0`` (with ``0**0 == 1``): keep the monomials free of ``x+``."""
        return Poly2({m: v for m, v in self._c.items() if m[0] == 0}, _trusted=True)

    def swap(self) -> "Poly2":
        return Poly2({(dm, dp): v for (dp, dm), v in self._c.items()}, _trusted=True)

    def denominators(self) -> set[int]:
        return {v.denominator for v in self._c.values()}

    # -- text ---------------------------------------------------------------
    def format(self, names: tuple[str, str] = ("x+", "x-")) -> str:
        if not self._c:
            return "0"
        out = []
        for (dp, dm), v in self.items():
            factors = [_var(names[1], dm), _var(names[0], dp)]
            mono = "*".join(f for f in factors if f)
            mag = abs(v)
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            sign = "-" if v < 0 else "+"
            out.append((sign, body))
        first_sign, first = out[0]
        text = ("-" if first_sign == "-" else "") + first
        for sign, body in out[1:]:
            text += f" {sign} {body}"
        return text

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Poly2({self.format()})"


def _monomial_order(item):
    (dp, dm), _ = item
    return (-(dp + dm), -dm, -dp)


def _var(name: str, e: int) -> str:
    if e == 0:
        return ""
    return name if e == 1 else f"{name}^{e}"


class Combination:
    """A finite formal sum ``sum_l coeff_l * zeta(l)`` with :class:`Poly2` coefficients.

    Keys are compared by their exact entry sequence.  Zero coefficients are
    never stored.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Optional[Mapping[Index, object] | Iterable[tuple[Index, object]]] = None):
        t: dict[Index, Poly2] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, c in items:
                k = tuple(int(e) for e in k)
                c = c if isinstance(c, Poly2) else Poly2.const(c)
                s = t[k] + c if k in t else c
                if s:
                    t[k] = s
                else:
                    t.pop(k, None)
        self._terms = t

    @classmethod
    def single(cls, k: Index, coeff=1) -> "Combination":
        return cls({k: coeff})

    # -- mapping-like access --------------------------------------------------
    def __getitem__(self, k: Index) -> Poly2:
        return self._terms.get(tuple(k), Poly2())

    def __contains__(self, k) -> bool:
        return tuple(k) in self._terms

    def __len__(self):
        return len(self._terms)

    def __iter__(self):
        return iter(self.keys())

    def keys(self) -> list[Index]:
        return sorted(self._terms, key=_index_order)

    def items(self) -> list[tuple[Index, Poly2]]:
        return [(k, self._terms[k]) for k in self.keys()]

    def as_dict(self) -> dict[Index, Poly2]:
        return dict(self._terms)

    def __eq__(self, other):
        if isinstance(other, Combination):
            return self._terms == other._terms
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # -- algebra ------------------------------------------------------------
    def __add__(self, other: "Combination") -> "Combination":
        if not isinstance(other, Combination):
            return NotImplemented
        t = dict(self._terms)
        for k, c in other._terms.items():
            s = t[k] + c if k in t else c
            if s:
                t[k] = s
            else:
                t.pop(k, None)
        return Combination._raw(t)

    def __neg__(self):
        return Combination._raw({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, factor) -> "Combination":
        """Multiply every coefficient by ``factor`` (a Poly2 or rational constant)."""
        t = {}
        for k, c in self._terms.items():
            v = c * factor
            if v:
                t[k] = v
        return Combination._raw(t)

    def __mul__(self, factor):
        return self.scale(factor)

    __rmul__ = __mul__

    def specialize_single(self) -> "Combination":
        """Coefficients in one variable: ``x+ -> 0``, ``x-`` becomes ``x``."""
        return Combination((k, c.specialize_single()) for k, c in self._terms.items())

    def denominators(self) -> set[int]:
        out: set[int] = set()
        for c in self._terms.values():
            out |= c.denominators()
        return out

    @classmethod
    def _raw(cls, terms: dict[Index, Poly2]) -> "Combination":
        obj = cls.__new__(cls)
        obj._terms = terms
        return obj

    def format(self, names: tuple[str, str] = ("x+", "x-")) -> str:
        if not self._terms:
            return "{}"
        parts = [f"({format_index(k)}): {c.format(names)}" for k, c in self.items()]
        return "{" + ", ".join(parts) + "}"

    def __repr__(self):
        return f"Combination({self.format()})"


def _index_order(k: Index):
    return (-len(k), k)
