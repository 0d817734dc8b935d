"""Check the reduction identity prime by prime, in parallel.

For every prime ``p`` in the requested range the reduced combination is
evaluated in ``Z/p^nZ`` and compared with the direct truncated sum.  Primes
dividing a coefficient denominator are recorded as skipped, not failed.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .arith import primes_between
from .errors import DenominatorCollision
from .index import Combination, Index, format_index
from .reduction import evaluate_combination, reduce
from .serialize import SCHEMA
from .truncated import zeta_trunc_mod

__all__ = ["SweepReport", "worker_count", "check_reduce", "check_prime"]

STRATEGIES = ("leftmost", "rightmost")


def worker_count(default: int = 4) -> int:
    """``FMZV_THREADS`` if set, otherwise ``min(default, cpu count)``."""
    env = os.environ.get("FMZV_THREADS")
    if env:
        try:
            n = int(env)
        except ValueError:
            raise ValueError(f"FMZV_THREADS must be an integer, got {env!r}") from None
        if n < 1:
            raise ValueError("FMZV_THREADS must be positive")
        return n
    return max(1, min(default, os.cpu_count() or 1))


@dataclass(frozen=True)
class Failure:
    prime: int
    strategy: str
    lhs: int
    rhs: int


@dataclass
class SweepReport:
    index: Index
    exponent: int
    strategies: tuple[str, ...]
    primes_checked: list[int] = field(default_factory=list)
    primes_skipped: list[tuple[int, str]] = field(default_factory=list)
    first_failure: Optional[Failure] = None

    @property
    def all_passed(self) -> bool:
        return self.first_failure is None

    def to_json(self) -> dict:
        f = self.first_failure
        return {
            "schema": SCHEMA,
            "index": format_index(self.index),
            "exponent": self.exponent,
            "strategies": list(self.strategies),
            "primes_checked": self.primes_checked,
            "primes_skipped": [{"prime": p, "reason": why} for p, why in self.primes_skipped],
            "all_passed": self.all_passed,
            "first_failure": None
            if f is None
            else {"prime": f.prime, "strategy": f.strategy, "lhs": str(f.lhs), "rhs": str(f.rhs)},
        }


def check_prime(k: Index, combos: Sequence[tuple[str, Combination]], p: int, n: int):
    """Outcome for one prime: ``("ok", None)``, ``("skip", reason)`` or ``("fail", Failure)``."""
    rhs = zeta_trunc_mod(k, p, n).value
    cache: dict = {}
    for name, c in combos:
        try:
            lhs = evaluate_combination(c, p, n, cache=cache).value
        except DenominatorCollision as exc:
            return p, "skip", f"DenominatorCollision: {exc}"
        if lhs != rhs:
            return p, "fail", Failure(p, name, lhs, rhs)
    return p, "ok", None


def _task(args):
    return check_prime(*args)


def check_reduce(
    k: Index,
    primes_up_to: int,
    n: int = 1,
    *,
    strategies: Sequence[str] = STRATEGIES,
    primes_from: int = 2,
    workers: Optional[int] = None,
    combos: Optional[Sequence[tuple[str, Combination]]] = None,
) -> SweepReport:
    """Compare the reduced form with the direct sum for primes in ``[primes_from, primes_up_to]``.

    ``combos`` may pass precomputed reductions keyed by strategy name.
    One worker process per task; results are merged in prime order.
    """
    k = tuple(k)
    if n < 1:
        raise ValueError("exponent must be positive")
    for s in strategies:
        if s not in STRATEGIES:
            raise ValueError(f"unknown strategy {s!r}")
    if combos is None:
        combos = [(s, reduce(k, s)) for s in strategies]
    primes = primes_between(primes_from, primes_up_to)
    workers = worker_count() if workers is None else workers
    jobs = [(k, combos, p, n) for p in primes]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_task, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    else:
        results = [_task(j) for j in jobs]
    report = SweepReport(k, n, tuple(s for s, _ in combos))
    for p, status, detail in sorted(results, key=lambda t: t[0]):
        if status == "skip":
            report.primes_skipped.append((p, detail))
            continue
        report.primes_checked.append(p)
        if status == "fail" and report.first_failure is None:
            report.first_failure = detail
    return report
