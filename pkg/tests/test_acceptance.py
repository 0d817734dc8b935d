"""The nine acceptance criteria, each at its stated tolerance and time limit.

Every test prints one ``[criterion N] PASS/FAIL`` line, even without ``-s``.
"""
import contextlib
import io
import itertools
import random
import time
from fractions import Fraction

import pytest

from fmzv.arith import faulhaber_closed, primes_between
from fmzv.cli import main as cli_main
from fmzv.genfun import extract_P, gr_closed_form, gr_series, integer_powersum_oracle
from fmzv.index import classify
from fmzv.numeric import sample_check
from fmzv.reduction import evaluate_combination_exact_prefix, reduce, reduce_full
from fmzv.sweep import check_reduce
from fmzv.truncated import zeta_trunc_bruteforce, zeta_trunc_mod, zeta_trunc_prefix


def suite_indices(count=30, seed=20240607):
    rng = random.Random(seed)
    out = []
    while len(out) < count:
        k = tuple(rng.randint(-4, 6) for _ in range(rng.randint(1, 4)))
        if k not in out:
            out.append(k)
    return out


SUITE = suite_indices()


@pytest.fixture
def report(capsys):
    def emit(n, ok, elapsed, limit, detail=""):
        status = "PASS" if ok and elapsed < limit else "FAIL"
        with capsys.disabled():
            print(f"\n[criterion {n}] {status} in {elapsed:.2f}s (limit {limit}s) {detail}".rstrip())
        assert ok, detail
        assert elapsed < limit, f"took {elapsed:.1f}s, limit {limit}s"

    return emit


def run_cli(*args):
    buf = io.StringIO()
    with contextlib.redirect_stdout(buf):
        code = cli_main(list(args))
    return code, buf.getvalue()


def test_criterion_1_published_example(report):
    t = time.perf_counter()
    bad = []
    for k in (3, 4, 5):
        code, out = run_cli("reduce", f"{k},-1", "--single-var")
        want = f"{{({k - 2}): -1/2, ({k - 1}): -1/2, ({k}): 1/2*x^2 - 1/2*x}}\n"
        if code != 0 or out != want:
            bad.append((k, out))
    report(1, not bad, time.perf_counter() - t, 1, f"mismatches={bad}" if bad else "k=3,4,5")


def test_criterion_2_exact_identity(report):
    t = time.perf_counter()
    failures = 0
    checks = 0
    for k in SUITE:
        c = reduce_full(k).final
        for a in range(25):
            got = evaluate_combination_exact_prefix(c, a, 25)
            want = zeta_trunc_prefix(k, a, 25)
            checks += len(want)
            failures += sum(g != w for g, w in zip(got, want))
    report(2, failures == 0, time.perf_counter() - t, 120, f"{checks} ranges, {failures} failures")


def test_criterion_3_modular_sweep(report):
    t = time.perf_counter()
    problems = []
    checked = 0
    for k in SUITE:
        combos = [(s, reduce(k, s)) for s in ("leftmost", "rightmost")]
        dens = set().union(*(c.denominators() for _, c in combos))
        expected_skips = {p for p in primes_between(5, 200) if any(d % p == 0 for d in dens)}
        for n in (1, 2, 3):
            rep = check_reduce(k, 200, n, primes_from=5, workers=4, combos=combos)
            checked += len(rep.primes_checked)
            if not rep.all_passed:
                problems.append((k, n, rep.first_failure))
            if {p for p, _ in rep.primes_skipped} != expected_skips:
                problems.append((k, n, "skip set"))
    report(3, not problems, time.perf_counter() - t, 300, f"{checked} prime checks, problems={problems[:3]}")


def test_criterion_4_depth_weight_bounds(report):
    t = time.perf_counter()
    grid = [k for r in range(4) for k in itertools.product(range(-2, 4), repeat=r)]
    bad = []
    for k in SUITE + grid:
        info = classify(k)
        for key in reduce_full(k).final.keys():
            ki = classify(key)
            if not (ki.is_positive and ki.depth <= info.positive_count and ki.weight <= info.positive_sum):
                bad.append((k, key))
    report(4, not bad, time.perf_counter() - t, 60, f"{len(SUITE) + len(grid)} indices, violations={bad[:3]}")


def test_criterion_5_faulhaber(report):
    t = time.perf_counter()
    bad = []
    for k in range(13):
        powers = [n**k for n in range(41)]
        for b in range(1, 41):
            for a in range(b):
                if faulhaber_closed(k, a, b) != sum(powers[a + 1 : b]):
                    bad.append((k, a, b))
    report(5, not bad, time.perf_counter() - t, 10, f"mismatches={bad[:3]}")


def test_criterion_6_powersum_identity(report):
    t = time.perf_counter()
    bad = []
    checks = 0
    for r in (1, 2, 3):
        table = extract_P(r, 3)
        for k, poly in table.items():
            for b in range(1, 21):
                for a in range(b):
                    checks += 1
                    if poly(a, b) != integer_powersum_oracle(k, a, b):
                        bad.append((k, a, b))
    report(6, not bad, time.perf_counter() - t, 120, f"{checks} evaluations, mismatches={bad[:3]}")


def test_criterion_7_genfun_consistency(report):
    t = time.perf_counter()
    bad = []
    for r in (1, 2, 3):
        table = extract_P(r, 4)
        for k, poly in table.items():
            if reduce_full(tuple(-x for x in k)).final[()] != poly:
                bad.append(("reduce", k))
        for N in range(1, 7):
            if not gr_closed_form(r, N).coefficient_equal(gr_series(r, N)):
                bad.append(("closed form", r, N))
    report(7, not bad, time.perf_counter() - t, 60, f"mismatches={bad[:3]}")


def test_criterion_8_numerical_identity(report):
    t = time.perf_counter()
    rng = random.Random(8)
    worst = {}
    bad = []
    for case in ("head", "middle", "tail"):
        for _ in range(10):
            res = sample_check(case, rng)
            assert res.N == (10**4 if case == "middle" else 10**5)
            worst[case] = max(worst.get(case, 0.0), res.residual)
            if not res.residual < 1e-6:
                bad.append((case, res.s, res.residual))
    detail = ", ".join(f"{c} max residual {v:.1e}" for c, v in worst.items())
    report(8, not bad, time.perf_counter() - t, 180, detail)


def _enumerated_table(k, top):
    """Naive enumeration over (0, top), aggregated by (first, last) element.

    ``T[i][j]`` sums the products over chains with ``n_1 = i`` and ``n_r = j``;
    the value on ``(a, b)`` is then the sum of ``T[i][j]`` over ``a < i``, ``j < b``.
    """
    T = [[Fraction(0)] * top for _ in range(top)]
    for ns in itertools.combinations(range(1, top), len(k)):
        term = Fraction(1)
        for n, e in zip(ns, k):
            term = term / n**e if e >= 0 else term * n ** (-e)
        T[ns[0]][ns[-1]] += term
    # R[i][b] = sum_{j < b} T[i][j];  S[a][b] = sum_{i > a} R[i][b]
    R = [list(itertools.accumulate(row, initial=Fraction(0))) for row in T]
    S = [[Fraction(0)] * (top + 1) for _ in range(top)]
    for a in range(top - 2, -1, -1):
        S[a] = [x + y for x, y in zip(S[a + 1], R[a + 1])]
    return S


def test_criterion_9_dp_vs_enumeration(report):
    t = time.perf_counter()
    top = 31
    grid = [k for r in range(1, 4) for k in itertools.product(range(-3, 5), repeat=r)]
    bad = []
    literal = 0
    sample = random.Random(9)
    for k in grid:
        S = _enumerated_table(k, top)
        for a in range(top):
            dp = zeta_trunc_prefix(k, a, top)
            for b, v in zip(range(a + 1, top + 1), dp):
                if v != S[a][b]:
                    bad.append((k, a, b))
        # the literal nested-loop oracle on a few ranges per index
        for _ in range(2):
            a = sample.randrange(0, top - 1)
            b = sample.randrange(a + 1, top + 1)
            literal += 1
            if zeta_trunc_bruteforce(k, (a, b)) != S[a][b]:
                bad.append(("literal", k, a, b))
    wolstenholme = [p for p in primes_between(5, 97) if zeta_trunc_mod((1,), p, 2) != 0]
    ok = not bad and not wolstenholme
    detail = f"{len(grid)} indices x {top * (top + 1) // 2} ranges, {literal} literal spot checks; " \
             f"mismatches={bad[:3]} wolstenholme failures={wolstenholme}"
    report(9, ok, time.perf_counter() - t, 60, detail)
