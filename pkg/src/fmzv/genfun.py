"""Generating functions for the values at non-positive integer points.

``G_r(z_1..z_r; y+, y-) = sum_k P_r(k; y+, y-) prod z_i^{k_i} / k_i!``

is built exactly as a truncated multivariate power series whose coefficients
are polynomials in ``y+`` (stored as ``x+``) and ``y-`` (``x-``).  The
divisions by ``1 - e^w`` that occur are never performed on a series with
zero constant term: ``1 - e^w = -w * u(w)`` with the unit
``u(w) = (e^w - 1)/w``, so only ``u`` is inverted and the ``1/w`` is handled
separately (a monomial prefactor for the recurrence, exact division by a
linear form for the closed form).  A surviving pole raises
:class:`PoleResidue`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Optional, Sequence

from .arith import bernoulli_numbers
from .errors import PoleResidue, SizeGuard, TruncationTooSmall
from .index import Poly2
from .truncated import BRUTEFORCE_LIMIT

__all__ = [
    "TruncSeries",
    "g1_series",
    "gr_recurrence",
    "gr_series",
    "gr_closed_form",
    "extract_P",
    "P_value",
    "integer_powersum_oracle",
]

Exponent = tuple[int, ...]


def _is_zero(v) -> bool:
    return not v


@dataclass(frozen=True)
class TruncSeries:
    """Power series in ``nvars`` variables, exact for total degree below ``trunc``.

    The represented series is ``z**prefactor * sum coeffs[e] z**e``; stored
    exponents are non-negative, the prefactor may be negative.  Coefficients
    are Fractions or :class:`Poly2` values.
    """

    nvars: int
    trunc: int
    coeffs: dict
    prefactor: Exponent = ()

    def __post_init__(self):
        if not self.prefactor:
            object.__setattr__(self, "prefactor", (0,) * self.nvars)
        if len(self.prefactor) != self.nvars:
            raise ValueError("prefactor length must equal the number of variables")

    # -- construction -------------------------------------------------------
    @classmethod
    def from_terms(cls, nvars: int, trunc: int, terms: Iterable[tuple[Exponent, object]]) -> "TruncSeries":
        c: dict = {}
        for e, v in terms:
            if sum(e) < trunc and not _is_zero(v):
                c[e] = c[e] + v if e in c else v
        return cls(nvars, trunc, {e: v for e, v in c.items() if not _is_zero(v)})

    @classmethod
    def univariate(cls, nvars: int, var: int, trunc: int, coeffs: Sequence) -> "TruncSeries":
        """``sum_n coeffs[n] z_var^n``."""
        def unit(n):
            e = [0] * nvars
            e[var] = n
            return tuple(e)

        return cls.from_terms(nvars, trunc, ((unit(n), v) for n, v in enumerate(coeffs[:trunc])))

    @classmethod
    def along_form(cls, nvars: int, form: Sequence[int], trunc: int, coeffs: Sequence) -> "TruncSeries":
        """``f(w)`` for ``f = sum_n coeffs[n] w^n`` and the linear form ``w = sum_{v in form} z_v``."""
        terms = []
        form = list(form)
        for n, v in enumerate(coeffs[:trunc]):
            if _is_zero(v):
                continue
            # multinomial expansion of w^n
            for split in _compositions(n, len(form)):
                mult = factorial(n)
                e = [0] * nvars
                for var, part in zip(form, split):
                    mult //= factorial(part)
                    e[var] = part
                terms.append((tuple(e), v * mult))
        return cls.from_terms(nvars, trunc, terms)

    # -- queries --------------------------------------------------------------
    def __getitem__(self, e: Exponent):
        """Coefficient of the effective monomial ``z**e``."""
        stored = tuple(x - p for x, p in zip(e, self.prefactor))
        if any(s < 0 for s in stored):
            return Fraction(0)
        if sum(stored) >= self.trunc:
            raise TruncationTooSmall(f"degree {sum(stored)} not available below truncation {self.trunc}")
        return self.coeffs.get(stored, Fraction(0))

    def is_regular(self) -> bool:
        return all(p >= 0 for p in self.prefactor)

    # -- arithmetic ---------------------------------------------------------
    def _check(self, other: "TruncSeries"):
        if self.nvars != other.nvars:
            raise ValueError("series have different numbers of variables")

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        self._check(other)
        if self.prefactor != other.prefactor:
            raise ValueError("cannot add series with different prefactors")
        trunc = min(self.trunc, other.trunc)
        return TruncSeries.from_terms(
            self.nvars, trunc, itertools.chain(self.coeffs.items(), other.coeffs.items())
        )._with_prefactor(self.prefactor)

    def __neg__(self):
        return TruncSeries(self.nvars, self.trunc, {e: -v for e, v in self.coeffs.items()}, self.prefactor)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TruncSeries):
            if _is_zero(other):
                return TruncSeries(self.nvars, self.trunc, {}, self.prefactor)
            return TruncSeries(self.nvars, self.trunc, {e: v * other for e, v in self.coeffs.items()}, self.prefactor)
        self._check(other)
        trunc = min(self.trunc, other.trunc)
        c: dict = {}
        right = sorted(other.coeffs.items(), key=lambda kv: sum(kv[0]))
        for e1, v1 in self.coeffs.items():
            d1 = sum(e1)
            if d1 >= trunc:
                continue
            for e2, v2 in right:
                if d1 + sum(e2) >= trunc:
                    break
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = v1 * v2
                c[e] = c[e] + prod if e in c else prod
        pf = tuple(a + b for a, b in zip(self.prefactor, other.prefactor))
        return TruncSeries(self.nvars, trunc, {e: v for e, v in c.items() if not _is_zero(v)}, pf)

    __rmul__ = __mul__

    def _with_prefactor(self, pf: Exponent) -> "TruncSeries":
        return TruncSeries(self.nvars, self.trunc, self.coeffs, pf)

    def divide_by_monomial(self, var: int) -> "TruncSeries":
        """Record a factor ``1/z_var`` in the prefactor."""
        pf = list(self.prefactor)
        pf[var] -= 1
        return self._with_prefactor(tuple(pf))

    def regularize(self) -> "TruncSeries":
        """Absorb a negative prefactor into the stored exponents.

        Every stored monomial must be divisible by the pole; otherwise the
        pole did not cancel and :class:`PoleResidue` is raised.  The result is
        exact below ``trunc + sum(negative prefactor)``.
        """
        neg = tuple(min(p, 0) for p in self.prefactor)
        if not any(neg):
            return self
        c = {}
        for e, v in self.coeffs.items():
            shifted = tuple(a + p for a, p in zip(e, neg))
            if any(s < 0 for s in shifted):
                raise PoleResidue(f"coefficient {v} at exponent {e} survives prefactor {self.prefactor}")
            c[shifted] = v
        trunc = self.trunc + sum(neg)
        pf = tuple(p - n for p, n in zip(self.prefactor, neg))
        return TruncSeries.from_terms(self.nvars, trunc, c.items())._with_prefactor(pf)

    def substitute_sum(self, src: int, extra: int, nvars: int) -> "TruncSeries":
        """Embed into ``nvars`` variables and replace ``z_src`` by ``z_src + z_extra``."""
        terms = []
        for e, v in self.coeffs.items():
            base = list(e) + [0] * (nvars - self.nvars)
            m = base[src]
            for i in range(m + 1):
                new = list(base)
                new[src] = m - i
                new[extra] += i
                terms.append((tuple(new), v * comb(m, i)))
        if any(self.prefactor):
            raise ValueError("substitute_sum needs a regular series")
        return TruncSeries.from_terms(nvars, self.trunc, terms)

    def embed(self, nvars: int) -> "TruncSeries":
        pad = (0,) * (nvars - self.nvars)
        return TruncSeries(nvars, self.trunc, {e + pad: v for e, v in self.coeffs.items()}, self.prefactor + pad)

    def divide_by_form(self, form: Sequence[int]) -> "TruncSeries":
        """Exact quotient by the linear form ``sum_{v in form} z_v``.

        Within each total degree the quotient is solved in decreasing powers
        of the form's first variable; the product is then checked against the
        dividend and a non-zero remainder raises :class:`PoleResidue`.
        """
        if any(self.prefactor):
            raise ValueError("divide_by_form needs a regular series")
        form = sorted(form)
        lead, others = form[0], form[1:]
        out_trunc = self.trunc - 1
        q: dict = {}
        by_degree: dict[int, list[Exponent]] = {}
        for e in self.coeffs:
            by_degree.setdefault(sum(e), []).append(e)
        for d in range(1, self.trunc):
            # quotient exponents of degree d - 1 that can be non-zero: those hit
            # directly by the dividend, closed under g -> g - e_lead + e_v
            cands = set()
            for e in by_degree.get(d, ()):
                if e[lead] > 0:
                    f = list(e)
                    f[lead] -= 1
                    cands.add(tuple(f))
            frontier = list(cands)
            while frontier:
                g = frontier.pop()
                if g[lead] == 0:
                    continue
                for v in others:
                    f = list(g)
                    f[lead] -= 1
                    f[v] += 1
                    f = tuple(f)
                    if f not in cands:
                        cands.add(f)
                        frontier.append(f)
            for f in sorted(cands, key=lambda f: -f[lead]):
                num = list(f)
                num[lead] += 1
                val = self.coeffs.get(tuple(num), Fraction(0))
                for v in others:
                    if f[v] > 0:
                        g = list(f)
                        g[lead] += 1
                        g[v] -= 1
                        val = val - q.get(tuple(g), Fraction(0))
                if not _is_zero(val):
                    q[f] = val
        quotient = TruncSeries(self.nvars, out_trunc, q)
        # w has no constant term, so quotient * w is exact one degree higher
        check = TruncSeries(self.nvars, self.trunc, q) * TruncSeries.along_form(self.nvars, form, self.trunc, [0, 1])
        residue = TruncSeries.from_terms(
            self.nvars, self.trunc, itertools.chain(self.coeffs.items(), ((e, -v) for e, v in check.coeffs.items()))
        )
        if residue.coeffs:
            e, v = next(iter(residue.coeffs.items()))
            raise PoleResidue(f"division by form {form} leaves remainder {v} at {e}")
        return quotient

    def truncate(self, trunc: int) -> "TruncSeries":
        if trunc > self.trunc:
            raise TruncationTooSmall(f"cannot raise truncation from {self.trunc} to {trunc}")
        return TruncSeries.from_terms(self.nvars, trunc, self.coeffs.items())._with_prefactor(self.prefactor)

    def coefficient_equal(self, other: "TruncSeries") -> bool:
        """Coefficientwise equality below the common truncation."""
        t = min(self.trunc, other.trunc)
        a = self.truncate(t)
        b = other.truncate(t)
        return a.prefactor == b.prefactor and a.coeffs == b.coeffs


def _compositions(n: int, parts: int):
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in _compositions(n - first, parts - 1):
            yield (first,) + rest


# ---------------------------------------------------------------------------
# elementary univariate coefficient lists


def _exp_coeffs(scale: Poly2 | int, trunc: int) -> list:
    """Coefficients of ``exp(scale * w)``."""
    out: list = []
    p = Poly2.const(1)
    for n in range(trunc):
        out.append(p * Fraction(1, factorial(n)))
        p = p * scale
    return out


def _bernoulli_plus(trunc: int) -> list[Fraction]:
    """``w e^w / (e^w - 1) = e^w / u(w)``."""
    bs = bernoulli_numbers(max(trunc - 1, 0))
    return [b / factorial(n) for n, b in enumerate(bs)][:trunc]


def _bernoulli_minus(trunc: int) -> list[Fraction]:
    """``w / (e^w - 1) = 1 / u(w)``."""
    bs = bernoulli_numbers(max(trunc - 1, 0))
    return [(-b if n == 1 else b) / factorial(n) for n, b in enumerate(bs)][:trunc]


Y_PLUS = Poly2.x_plus()
Y_MINUS = Poly2.x_minus()


# ---------------------------------------------------------------------------
# G_1 and the recurrence


def g1_series(N: int) -> TruncSeries:
    """``G_1(z) = e^{y+ z} e^z/(1 - e^z) - e^{y- z}/(1 - e^z)`` below degree ``N``.

    Both summands have a simple pole at ``z = 0``; they are combined as
    ``-(1/z) (e^{y+ z} e^z/u(z) - e^{y- z}/u(z))`` and the pole is checked to cancel.
    """
    if N < 1:
        raise ValueError("truncation must be >= 1")
    T = N + 1
    plus = TruncSeries.univariate(1, 0, T, _exp_coeffs(Y_PLUS, T)) * TruncSeries.univariate(1, 0, T, _bernoulli_plus(T))
    minus = TruncSeries.univariate(1, 0, T, _exp_coeffs(Y_MINUS, T)) * TruncSeries.univariate(1, 0, T, _bernoulli_minus(T))
    return (-(plus - minus)).divide_by_monomial(0).regularize()


def gr_recurrence(G_prev: TruncSeries, N: int) -> TruncSeries:
    """``G_r`` from ``G_{r-1}`` below degree ``N``.

    ``G_r = G_{r-1}(.., z_{r-1} + z_r) e^{z_r}/(1 - e^{z_r}) - G_{r-1}(.., z_{r-1}) e^{y- z_r}/(1 - e^{z_r})``.
    Dividing by ``z_r`` costs one degree, so ``G_prev`` must be exact below ``N + 1``.
    """
    if not G_prev.is_regular() or any(G_prev.prefactor):
        raise ValueError("G_prev must be a regular series")
    if G_prev.trunc < N + 1:
        raise TruncationTooSmall(f"need G_prev exact below degree {N + 1}, have {G_prev.trunc}")
    r = G_prev.nvars + 1
    T = N + 1
    last = r - 1
    shifted = G_prev.truncate(T).substitute_sum(r - 2, last, r)
    plain = G_prev.truncate(T).embed(r)
    e_z = TruncSeries.univariate(r, last, T, _exp_coeffs(1, T))
    e_yz = TruncSeries.univariate(r, last, T, _exp_coeffs(Y_MINUS, T))
    inv_u = TruncSeries.univariate(r, last, T, _bernoulli_minus(T))
    bracket = shifted * e_z - plain * e_yz
    return (-(bracket * inv_u)).divide_by_monomial(last).regularize()


def gr_series(r: int, N: int) -> TruncSeries:
    """``G_r`` below degree ``N`` by iterating the recurrence from ``G_1``."""
    if r < 1:
        raise ValueError("depth must be >= 1")
    G = g1_series(N + r - 1)
    for depth in range(2, r + 1):
        G = gr_recurrence(G, N + r - depth)
    return G


# ---------------------------------------------------------------------------
# closed form


def gr_closed_form(r: int, N: int) -> TruncSeries:
    """``G_r`` below degree ``N`` from the explicit sum over split positions ``i = 0..r``.

    Term ``i`` is ``(-1)^{r-i} e^{y+(z_1+..+z_i) + y-(z_{i+1}+..+z_r)}``
    times ``e^w/(1 - e^w)`` for ``w = z_l+..+z_i`` (``l <= i``) and
    ``1/(1 - e^w)`` for ``w = z_{i+1}+..+z_l`` (``l > i``).  Every such ``w``
    is an interval sum of variables; the whole sum is multiplied by the
    product ``D`` of all interval forms, which makes each term a power
    series, and ``D`` is then divided back out exactly.
    """
    if r < 1:
        raise ValueError("depth must be >= 1")
    intervals = [tuple(range(lo, hi + 1)) for lo in range(r) for hi in range(lo, r)]
    T = N + len(intervals)
    total = TruncSeries(r, T, {})
    for i in range(r + 1):
        used = [tuple(range(l, i)) for l in range(i)] + [tuple(range(i, l + 1)) for l in range(i, r)]
        # each 1/(1 - e^w) = -(1/u(w)) / w contributes a sign
        sign = (-1) ** (r - i) * (-1) ** len(used)
        term = TruncSeries.along_form(r, tuple(range(i)), T, _exp_coeffs(Y_PLUS, T)) if i else None
        minus_part = TruncSeries.along_form(r, tuple(range(i, r)), T, _exp_coeffs(Y_MINUS, T)) if i < r else None
        factors = [f for f in (term, minus_part) if f is not None]
        factors += [TruncSeries.along_form(r, w, T, _bernoulli_plus(T)) for w in used[:i]]
        factors += [TruncSeries.along_form(r, w, T, _bernoulli_minus(T)) for w in used[i:]]
        factors += [TruncSeries.along_form(r, w, T, [0, 1]) for w in intervals if w not in used]
        prod = factors[0]
        for f in factors[1:]:
            prod = prod * f
        total = total + prod * sign
    for w in intervals:
        total = total.divide_by_form(w)
    return total


# ---------------------------------------------------------------------------
# coefficient table


def extract_P(r: int, kmax: int, series: Optional[TruncSeries] = None) -> dict[tuple[int, ...], Poly2]:
    """``P_r(k; y+, y-) = (prod k_i!) [z^k] G_r`` for all ``0 <= k_i <= kmax``."""
    need = r * kmax + 1
    if series is None:
        series = gr_series(r, need)
    if series.nvars != r:
        raise ValueError("series depth does not match r")
    if series.trunc < need:
        raise TruncationTooSmall(f"need truncation >= {need}, series has {series.trunc}")
    table = {}
    for k in itertools.product(range(kmax + 1), repeat=r):
        c = series[k]
        scale = 1
        for ki in k:
            scale *= factorial(ki)
        table[k] = c * scale if isinstance(c, Poly2) else Poly2.const(c * scale)
    return table


def P_value(k: Sequence[int]) -> Poly2:
    """``P_r(k)`` for a single tuple."""
    k = tuple(k)
    return extract_P(len(k), max(k, default=0))[k] if k else Poly2.const(1)


def integer_powersum_oracle(k: Sequence[int], a: int, b: int, *, limit: int = BRUTEFORCE_LIMIT) -> int:
    """``sum_{a<n_1<...<n_r<b} prod n_i^{k_i}`` by enumeration."""
    if a >= b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    k = tuple(k)
    if (b - a) ** len(k) > limit:
        raise SizeGuard(f"({b - a})^{len(k)} exceeds the enumeration limit {limit}")
    total = 0
    for ns in itertools.combinations(range(a + 1, b), len(k)):
        term = 1
        for n_i, k_i in zip(ns, k):
            term *= n_i**k_i
        total += term
    return total
