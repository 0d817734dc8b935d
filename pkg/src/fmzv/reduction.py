"""Rewrite a general index as a combination of positive indices.

One elimination step removes an entry ``k_i = -k <= 0`` by summing the
power ``n_i^k`` over the gap between its neighbours with Faulhaber's
formula.  Writing ``w_j = C(k+1, j) B_j / (k+1)`` and ``e_j = k + 1 - j``:

* first entry:   ``sum_j w_j ((-1)^j Z(k_2 - e_j, ...) - x+^{e_j} Z(k_2, ...))``
* inner entry:   ``sum_j w_j ((-1)^j Z(..., k_{i+1} - e_j, ...) - Z(..., k_{i-1} - e_j, ...))``
* last entry:    ``sum_j w_j ((-1)^j x-^{e_j} Z(..., k_{r-1}) - Z(..., k_{r-1} - e_j))``
* depth one:     ``sum_j w_j ((-1)^j x-^{e_j} - x+^{e_j})`` times the empty index

``x+``/``x-`` are the lower/upper summation bounds.  Specializing ``x+ = 0``
and ``x- = p`` gives the per-prime identities; the same coefficients serve
the analytic side with ``x+ = t+`` and ``x- = t-``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Literal, Optional, Sequence

from .arith import ModResidue, faulhaber_weights, is_prime, mod_embed
from .index import Combination, Index, Poly2, classify
from .truncated import TruncationRange, zeta_trunc_exact, zeta_trunc_mod, zeta_trunc_prefix

__all__ = [
    "Step",
    "ReductionTrace",
    "elimination_terms",
    "reduce_entry",
    "reduce_depth1",
    "reduce_full",
    "reduce",
    "evaluate_combination",
    "evaluate_combination_exact",
    "evaluate_combination_exact_prefix",
]

Strategy = Literal["leftmost", "rightmost"]
CaseTag = Literal["head", "middle", "tail", "base"]


def _case(r: int, i: int) -> CaseTag:
    if r == 1:
        return "base"
    if i == 1:
        return "head"
    if i == r:
        return "tail"
    return "middle"


def elimination_terms(entries: Sequence, i: int, k: int) -> list[tuple[tuple, Poly2]]:
    """Terms produced by removing position ``i`` (1-based) holding the value ``-k``.

    ``entries`` may hold ints or complex numbers; only subtraction of an
    integer is applied to them.  Requires ``len(entries) >= 2``.
    """
    entries = tuple(entries)
    r = len(entries)
    terms: list[tuple[tuple, Poly2]] = []
    for j, w in enumerate(faulhaber_weights(k)):
        if not w:
            continue
        e = k + 1 - j
        sign = -w if j % 2 else w
        if i == 1:
            rest = entries[1:]
            terms.append(((rest[0] - e,) + rest[1:], Poly2.const(sign)))
            terms.append((rest, Poly2({(e, 0): -w})))
        elif i == r:
            rest = entries[:-1]
            terms.append((rest, Poly2({(0, e): sign})))
            terms.append((rest[:-1] + (rest[-1] - e,), Poly2.const(-w)))
        else:
            right = entries[: i - 1] + (entries[i] - e,) + entries[i + 1 :]
            left = entries[: i - 2] + (entries[i - 2] - e,) + entries[i:]
            terms.append((right, Poly2.const(sign)))
            terms.append((left, Poly2.const(-w)))
    return terms


def reduce_entry(k: Index, i: int) -> Combination:
    """Eliminate the non-positive entry at 1-based position ``i`` of ``k`` (depth >= 2).

    >>> reduce_entry((3, -1), 2).format()
    '{(1): -1/2, (2): -1/2, (3): 1/2*x-^2 - 1/2*x-}'
    """
    k = tuple(k)
    r = len(k)
    if r < 2:
        raise ValueError("reduce_entry needs depth >= 2; use reduce_depth1")
    if not 1 <= i <= r:
        raise ValueError(f"position {i} out of range for depth {r}")
    if k[i - 1] > 0:
        raise ValueError(f"entry {k[i - 1]} at position {i} is positive")
    return Combination(elimination_terms(k, i, -k[i - 1]))


def reduce_depth1(entry: int) -> Poly2:
    """Coefficient of the empty index for the depth-one index ``(entry,)``, ``entry <= 0``.

    >>> reduce_depth1(0).format()
    'x- - x+ - 1'
    """
    if entry > 0:
        raise ValueError(f"reduce_depth1 takes a non-positive entry, got {entry}")
    kk = -entry
    c: dict = {}
    for j, w in enumerate(faulhaber_weights(kk)):
        if not w:
            continue
        e = kk + 1 - j
        c[0, e] = c.get((0, e), 0) + (-w if j % 2 else w)
        c[e, 0] = c.get((e, 0), 0) - w
    return Poly2(c)


@dataclass(frozen=True)
class Step:
    index: Index
    position: int  # 1-based
    case: CaseTag


@dataclass(frozen=True)
class ReductionTrace:
    """Every elimination performed, in order, and the resulting combination."""

    steps: tuple[Step, ...]
    final: Combination
    source: Index = field(default=())


def _pick(k: Index, strategy: Strategy) -> Optional[int]:
    positions = [i + 1 for i, e in enumerate(k) if e <= 0]
    if not positions:
        return None
    return positions[0] if strategy == "leftmost" else positions[-1]


def _eliminate(k: Index, i: int) -> Combination:
    if len(k) == 1:
        return Combination({(): reduce_depth1(k[0])})
    return reduce_entry(k, i)


def reduce_full(k: Index, strategy: Strategy = "leftmost") -> ReductionTrace:
    """Reduce ``k`` completely to positive indices.

    Works on a pool of pending terms: the deepest non-positive key is expanded
    first, so keys produced along different branches merge before they are
    expanded themselves.
    """
    if strategy not in ("leftmost", "rightmost"):
        raise ValueError(f"unknown strategy {strategy!r}")
    k = tuple(k)
    pool = Combination.single(k)
    steps: list[Step] = []
    while True:
        pending = [key for key in pool.keys() if not classify(key).is_positive]
        if not pending:
            break
        # keys() sorts deepest first, then lexicographically
        key = pending[0]
        i = _pick(key, strategy)
        steps.append(Step(key, i, _case(len(key), i)))
        coeff = pool[key]
        pool = pool - Combination.single(key, coeff) + _eliminate(key, i).scale(coeff)
    return ReductionTrace(tuple(steps), pool, k)


def reduce(k: Index, strategy: Strategy = "leftmost") -> Combination:
    return reduce_full(k, strategy).final


def _coefficient_mod(c: Poly2, p: int, n: int, a: int, b: int) -> ModResidue:
    q = p**n
    total = 0
    for (dp, dm), v in c.coefficients.items():
        total += mod_embed(v, p, n).value * pow(a, dp, q) * pow(b, dm, q)
    return ModResidue(p, n, total % q)


def evaluate_combination(
    c: Combination,
    p: int,
    n: int,
    a: int = 0,
    b: Optional[int] = None,
    *,
    cache: Optional[dict] = None,
) -> ModResidue:
    """``sum_l coeff_l(a, b) * zeta_trunc_mod(l, p, n, (a, b))`` in Z/p^nZ.

    Raises :class:`DenominatorCollision` when a coefficient's denominator is
    divisible by ``p``.  ``cache`` may be shared across calls with the same
    ``(p, n, a, b)`` to reuse the per-index sums.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    b = p if b is None else b
    rng = TruncationRange(a, b)
    total = ModResidue(p, n, 0)
    for key, coeff in c.items():
        cm = _coefficient_mod(coeff, p, n, a, b)
        if cm.value == 0:
            continue
        if cache is not None:
            ck = (key, p, n, a, b)
            if ck not in cache:
                cache[ck] = zeta_trunc_mod(key, p, n, rng)
            z = cache[ck]
        else:
            z = zeta_trunc_mod(key, p, n, rng)
        total = total + cm * z
    return total


def evaluate_combination_exact(c: Combination, a: int, b: int) -> Fraction:
    """Exact value of the combination on the range ``(a, b)``."""
    if a >= b:
        raise ValueError(f"need a < b, got a={a}, b={b}")
    total = Fraction(0)
    for key, coeff in c.items():
        total += coeff(a, b) * zeta_trunc_exact(key, (a, b))
    return total


def evaluate_combination_exact_prefix(c: Combination, a: int, b_max: int) -> list[Fraction]:
    """Exact values for every range ``(a, b)``, ``a < b <= b_max``; one DP pass per key."""
    bs = range(a + 1, b_max + 1)
    totals = [Fraction(0)] * len(bs)
    for key, coeff in c.items():
        sums = zeta_trunc_prefix(key, a, b_max)
        for idx, b in enumerate(bs):
            if sums[idx]:
                totals[idx] += coeff(a, b) * sums[idx]
    return totals
