"""Double-precision evaluation on the analytic side.

* :func:`hurwitz_mzv_series` -- ``sum_{0<n_1<...<n_r} prod (n_i - t)^{-s_i}``,
  principal branch, truncated at ``n_r <= N``.
* :func:`zeta_hatU_numeric` -- the two-sided function
  ``sum_i (-1)^{s_{i+1}+..+s_r} zeta(s_1..s_i; -t+) zeta(s_r..s_{i+1}; t-)``
  with ``(-1)^s = exp(pi i s)``.
* :func:`zeta_hatU_at_negative_slot` -- the same function with ``s_i = -k``,
  summed over ordered chains of lattice points with the gap sum
  ``F_a^b(-k)`` in closed form.
* :func:`check_thm14` -- compares the last one with the Bernoulli-weighted
  sum of depth ``r - 1`` values.

Every value comes back as an :class:`Estimate` carrying a computed bound on
its truncation plus rounding error.
"""
from __future__ import annotations

import cmath
import math
import random
from dataclasses import dataclass
from typing import Literal, Optional, Sequence

import numpy as np

from .arith import faulhaber_weights, power
from .errors import DomainError, OrderViolation
from .reduction import elimination_terms

__all__ = [
    "Estimate",
    "ComplexPoint",
    "LatticePoint",
    "minus_one_power",
    "hurwitz_mzv_series",
    "zeta_hatU_numeric",
    "F_ab_closed",
    "zeta_hatU_at_negative_slot",
    "zeta_hatU_nonpositive",
    "CheckResult",
    "check_thm14",
    "sample_check",
    "T_PLUS_CHOICES",
    "T_MINUS_CHOICES",
]

EPS = float(np.finfo(float).eps)
T_PLUS_CHOICES = (0.0, 0.25, 0.1 + 0.2j)
T_MINUS_CHOICES = (0.0, -0.25, -0.1 - 0.2j)

Case = Literal["head", "middle", "tail"]


@dataclass(frozen=True)
class Estimate:
    value: complex
    error: float

    def __add__(self, other: "Estimate") -> "Estimate":
        return Estimate(self.value + other.value, self.error + other.error)

    def __sub__(self, other: "Estimate") -> "Estimate":
        return Estimate(self.value - other.value, self.error + other.error)

    def scale(self, c: complex) -> "Estimate":
        return Estimate(self.value * c, self.error * abs(c))

    def __mul__(self, other: "Estimate") -> "Estimate":
        err = self.error * abs(other.value) + (abs(self.value) + self.error) * other.error
        return Estimate(self.value * other.value, err)


ONE = Estimate(1.0 + 0j, 0.0)


def minus_one_power(s: complex) -> complex:
    """``(-1)^s = exp(pi i s)``."""
    return cmath.exp(1j * math.pi * s)


# ---------------------------------------------------------------------------
# domain checks


def _check_t(t: complex, what: str = "t"):
    t = complex(t)
    if t.imag == 0 and t.real >= 1:
        raise DomainError(f"{what}={t} lies on the cut [1, inf)")


def _check_region(s: Sequence[complex]):
    r = len(s)
    for j in range(r):
        tail = sum(complex(x).real for x in s[j:])
        if not tail > r - j:
            raise DomainError(
                f"series diverges: Re(s_{j + 1}) + ... + Re(s_{r}) = {tail:g} must exceed {r - j}"
            )


@dataclass(frozen=True)
class ComplexPoint:
    s: tuple[complex, ...]
    t_plus: complex = 0.0
    t_minus: complex = 0.0

    def __post_init__(self):
        object.__setattr__(self, "s", tuple(complex(x) for x in self.s))
        tp, tm = complex(self.t_plus), complex(self.t_minus)
        if tp.imag == 0 and tp.real <= -1:
            raise DomainError(f"t+={tp} lies on the cut (-inf, -1]")
        if tm.imag == 0 and tm.real >= 1:
            raise DomainError(f"t-={tm} lies on the cut [1, inf)")
        object.__setattr__(self, "t_plus", tp)
        object.__setattr__(self, "t_minus", tm)


# ---------------------------------------------------------------------------
# truncation-error model


def _ratio_lower_bound(t: complex) -> float:
    """A lower bound ``c`` with ``|x - t| >= c x`` for all real ``x >= 1``."""
    t = complex(t)
    if t == 0:
        return 1.0
    # |x - t| / x = |1 - t u| with u = 1/x in (0, 1]
    cands = [1.0, abs(1 - t)]
    u = t.real / abs(t) ** 2
    if 0 < u <= 1:
        cands.append(abs(1 - t * u))
    return min(cands)


def _slot_constant(s: complex, t: complex) -> float:
    """``K`` with ``|(x - t)^{-s}| <= K x^{-Re s}`` for ``x >= 1``."""
    sigma, tau = s.real, s.imag
    arg_max = abs(cmath.phase(1 - t))
    k = math.exp(abs(tau) * arg_max)
    if sigma >= 0:
        return k * _ratio_lower_bound(t) ** (-sigma)
    return k * (1 + abs(t)) ** (-sigma)


def _prefix_growth(sigma: float) -> tuple[float, float]:
    """``(alpha, e)`` with ``sum_{x<n} x^{-sigma} <= alpha n^e`` for ``n >= 2``."""
    if sigma > 1:
        return sigma / (sigma - 1), 0.0
    if sigma == 1:
        # 1 + log n <= 1 + n^d / d
        d = 0.1
        return 1 + 1 / d, d
    if sigma > 0:
        return 1 + 1 / (1 - sigma), 1 - sigma
    return 1 / (1 - sigma), 1 - sigma


def tail_bound(s: Sequence[complex], t: complex, N: int) -> float:
    """Upper bound on ``|sum over n_r > N|`` of the depth-``r`` series.

    Inner sums are bounded without the ordering constraint, each by
    ``alpha n^e``; the remaining one-dimensional tail is compared with
    ``int_N^inf x^{-mu} dx`` where ``mu = Re s_r - sum e``.
    """
    if not s:
        return 0.0
    s = [complex(x) for x in s]
    const = _slot_constant(s[-1], t)
    growth = 0.0
    for x in s[:-1]:
        alpha, e = _prefix_growth(x.real)
        const *= _slot_constant(x, t) * alpha
        growth += e
    mu = s[-1].real - growth
    if mu <= 1:
        return math.inf
    return const * N ** (1 - mu) / (mu - 1)


# ---------------------------------------------------------------------------
# series


def hurwitz_mzv_series(s: Sequence[complex], t: complex, N: int) -> Estimate:
    """``sum_{0<n_1<...<n_r<=N} prod (n_i - t)^{-s_i}`` with its error bound.

    >>> round(hurwitz_mzv_series((2,), 0, 10**6).value.real, 5)
    1.64493
    """
    s = tuple(complex(x) for x in s)
    t = complex(t)
    _check_t(t)
    if not s:
        return ONE
    _check_region(s)
    if N < 1:
        raise ValueError("N must be positive")
    log_base = np.log(np.arange(1, N + 1, dtype=float) - t)
    inner = np.ones(N, dtype=complex)
    total = 0j
    for j, sj in enumerate(s):
        term = np.exp(-sj * log_base) * inner
        if j == len(s) - 1:
            total = complex(term.sum())
        else:
            # strictly smaller n only
            inner = np.empty(N, dtype=complex)
            inner[0] = 0
            np.cumsum(term[:-1], out=inner[1:])
    scale = float(np.abs(term).sum())
    rounding = 4 * EPS * len(s) * N * max(scale, 1.0)
    return Estimate(total, tail_bound(s, t, N) + rounding)


def zeta_hatU_numeric(point: ComplexPoint | Sequence[complex], N: int, t_plus=0.0, t_minus=0.0) -> Estimate:
    """Two-sided sum over split positions ``i = 0..r``; empty ``s`` gives 1."""
    pt = point if isinstance(point, ComplexPoint) else ComplexPoint(tuple(point), t_plus, t_minus)
    s = pt.s
    r = len(s)
    total = Estimate(0j, 0.0)
    for i in range(r + 1):
        left = hurwitz_mzv_series(s[:i], -pt.t_plus, N)
        right = hurwitz_mzv_series(tuple(reversed(s[i:])), pt.t_minus, N)
        total = total + (left * right).scale(minus_one_power(sum(s[i:])))
    return total


# ---------------------------------------------------------------------------
# lattice points and the gap sum


@dataclass(frozen=True, order=False)
class LatticePoint:
    """``n + t+`` (side ``"plus"``) or ``-n + t-`` (side ``"minus"``)."""

    side: Literal["plus", "minus"]
    n: int

    def __post_init__(self):
        if self.side not in ("plus", "minus"):
            raise ValueError(f"side must be 'plus' or 'minus', got {self.side!r}")
        if self.n < 0:
            raise ValueError("n must be non-negative")

    @property
    def key(self) -> tuple[int, int]:
        # plus side ascending, then the minus side descending in n
        return (0, self.n) if self.side == "plus" else (1, -self.n)

    def precedes(self, other: "LatticePoint") -> bool:
        return self.key < other.key

    def value(self, t_plus: complex, t_minus: complex) -> complex:
        return self.n + complex(t_plus) if self.side == "plus" else -self.n + complex(t_minus)

    def inverse_power(self, s: complex, t_plus: complex, t_minus: complex) -> complex:
        """``1/a^s``; on the minus side this is ``(-1)^s / (n - t-)^s``."""
        if self.side == "plus":
            return cmath.exp(-s * cmath.log(self.n + complex(t_plus)))
        return minus_one_power(s) * cmath.exp(-s * cmath.log(self.n - complex(t_minus)))


def F_ab_closed(k: int, a: LatticePoint, b: LatticePoint, t_plus: complex, t_minus: complex) -> complex:
    """``F_a^b(-k) = sum_j w_j ((-1)^j b^{k+1-j} - a^{k+1-j})`` at the point values of ``a``, ``b``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if not a.precedes(b):
        raise OrderViolation(f"{a} does not precede {b}")
    av = a.value(t_plus, t_minus)
    bv = b.value(t_plus, t_minus)
    total = 0j
    for j, w in enumerate(faulhaber_weights(k)):
        e = k + 1 - j
        total += float(w) * ((-1) ** j * power(bv, e) - power(av, e))
    return total


def zeta_hatU_at_negative_slot(
    s: Sequence[complex], i: int, t_plus: complex, t_minus: complex, N: int
) -> Estimate:
    """Value at ``s_i = -k`` from the chain sum with the gap ``F(-k)`` inserted.

    Chains are split by where the two neighbours of slot ``i`` sit:

    * both on the plus side: slot ``i`` is an ordinary slot with exponent ``-k``
      inside a plus-side series;
    * both on the minus side: likewise inside a minus-side series;
    * straddling: the gap runs across the infinite middle and is replaced by
      the closed form, expanded in powers of the two neighbour values.

    Requires ``Re s_j > k + 2`` for every ``j != i``.
    """
    s = tuple(complex(x) for x in s)
    r = len(s)
    if not 1 <= i <= r:
        raise ValueError(f"position {i} out of range for depth {r}")
    si = s[i - 1]
    if si.imag != 0 or si.real > 0 or si.real != int(si.real):
        raise ValueError(f"s_{i} must be a non-positive integer, got {si}")
    k = -int(si.real)
    for j, x in enumerate(s, start=1):
        if j != i and not x.real > k + 2:
            raise DomainError(f"need Re(s_{j}) > {k + 2}, got {x.real:g}")
    ComplexPoint(s, t_plus, t_minus)
    tp, tm = complex(t_plus), complex(t_minus)

    def plus(xs):
        return hurwitz_mzv_series(xs, -tp, N)

    def minus(xs):
        return hurwitz_mzv_series(tuple(reversed(xs)), tm, N)

    total = Estimate(0j, 0.0)
    # neighbours on the plus side: positions 1..q on the plus side, q >= i+1
    for q in range(i + 1, r + 1):
        term = plus(s[:q]) * minus(s[q:])
        total = total + term.scale(minus_one_power(sum(s[q:])))
    # neighbours on the minus side: positions q+1..r on the minus side, q <= i-2
    for q in range(0, i - 1):
        term = plus(s[:q]) * minus(s[q:])
        total = total + term.scale(minus_one_power(sum(s[q:])))
    # straddling
    sign_right = minus_one_power(sum(s[i:]))

    def left_weight(m: int) -> Estimate:
        if i == 1:
            return Estimate(power(tp, m), 0.0)
        return plus(s[: i - 2] + (s[i - 2] - m,))

    def right_weight(m: int) -> Estimate:
        if i == r:
            return Estimate(power(tm, m), 0.0)
        shifted = (s[i] - m,) + s[i + 1 :]
        return minus(shifted).scale(sign_right * (-1) ** m)

    L0, R0 = left_weight(0), right_weight(0)
    for j, w in enumerate(faulhaber_weights(k)):
        if not w:
            continue
        e = k + 1 - j
        piece = (L0 * right_weight(e)).scale((-1) ** j) - left_weight(e) * R0
        total = total + piece.scale(float(w))
    return total


def zeta_hatU_nonpositive(ks: Sequence[int], t_plus: complex, t_minus: complex) -> complex:
    """Value at ``(-k_1, ..., -k_r)`` using only closed-form gap sums.

    Depth one is ``F_{t+}^{t-}(-k)``; deeper values remove the last slot,
    whose gap runs from the previous point up to ``t-``.
    """
    ks = tuple(ks)
    if not ks:
        return 1 + 0j
    if any(k < 0 for k in ks):
        raise ValueError("entries must be non-negative")
    if len(ks) == 1:
        return F_ab_closed(ks[0], LatticePoint("plus", 0), LatticePoint("minus", 0), t_plus, t_minus)
    total = 0j
    for entries, coeff in elimination_terms(tuple(-k for k in ks), len(ks), ks[-1]):
        total += complex(coeff(complex(t_plus), complex(t_minus))) * zeta_hatU_nonpositive(
            tuple(-x for x in entries), t_plus, t_minus
        )
    return total


# ---------------------------------------------------------------------------
# checking the elimination identity numerically


@dataclass(frozen=True)
class CheckResult:
    case: str
    s: tuple[complex, ...]
    position: int
    k: int
    t_plus: complex
    t_minus: complex
    N: int
    lhs: Estimate
    rhs: Estimate

    @property
    def residual(self) -> float:
        return abs(self.lhs.value - self.rhs.value)

    @property
    def budget(self) -> float:
        return self.lhs.error + self.rhs.error


def _case_of(r: int, i: int) -> Case:
    return "head" if i == 1 else "tail" if i == r else "middle"


def check_thm14(
    case: Optional[Case],
    s: Sequence[complex],
    i: Optional[int],
    k: int,
    t_plus: complex,
    t_minus: complex,
    N: int,
) -> CheckResult:
    """Residual between the chain-sum value at ``s_i = -k`` and the eliminated form.

    ``s[i-1]`` is overwritten with ``-k``.  ``i`` defaults to 1 for ``head``
    and ``len(s)`` for ``tail``.
    """
    s = [complex(x) for x in s]
    r = len(s)
    if r < 2:
        raise ValueError("depth must be at least 2")
    if i is None:
        if case == "head":
            i = 1
        elif case == "tail":
            i = r
        else:
            raise ValueError("middle case needs an explicit position")
    actual = _case_of(r, i)
    if case is not None and case != actual:
        raise ValueError(f"position {i} of depth {r} is a {actual} case, not {case}")
    for j, x in enumerate(s, start=1):
        if j != i and not x.real > k + 3:
            raise DomainError(f"need Re(s_{j}) > {k + 3} so every shifted series converges")
    s[i - 1] = complex(-k)
    s = tuple(s)
    lhs = zeta_hatU_at_negative_slot(s, i, t_plus, t_minus, N)
    tp, tm = complex(t_plus), complex(t_minus)
    rhs = Estimate(0j, 0.0)
    for entries, coeff in elimination_terms(s, i, k):
        rhs = rhs + zeta_hatU_numeric(ComplexPoint(entries, tp, tm), N).scale(complex(coeff(tp, tm)))
    return CheckResult(actual, s, i, k, tp, tm, N, lhs, rhs)


def sample_check(case: Case, rng: random.Random, N: Optional[int] = None, depth: Optional[int] = None) -> CheckResult:
    """Draw one parameter set and run :func:`check_thm14`.

    ``k`` is drawn from ``{0, 1, 2}``, the real parts of the other entries
    from ``[max(5, k + 3.5), 9]`` with imaginary parts in ``[-0.5, 0.5]``, and
    ``t+``/``t-`` from :data:`T_PLUS_CHOICES`/:data:`T_MINUS_CHOICES`.
    Head and tail cases default to depth 2 and ``N = 10**5``; the middle
    case to depth 3 and ``N = 10**4``.
    """
    if depth is None:
        depth = 3 if case == "middle" else 2
    if case == "middle" and depth < 3:
        raise ValueError("middle case needs depth >= 3")
    if N is None:
        N = 10**4 if depth >= 3 else 10**5
    k = rng.randint(0, 2)
    i = 1 if case == "head" else depth if case == "tail" else rng.randint(2, depth - 1)
    lo = max(5.0, k + 3.5)
    s = [complex(rng.uniform(lo, 9.0), rng.uniform(-0.5, 0.5)) for _ in range(depth)]
    s[i - 1] = complex(-k)
    tp = rng.choice(T_PLUS_CHOICES)
    tm = rng.choice(T_MINUS_CHOICES)
    return check_thm14(case, s, i, k, tp, tm, N)
