import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fmzv.arith import primes_between
from fmzv.genfun import extract_P
from fmzv.index import Combination, Poly2
from fmzv.reduction import reduce
from fmzv.serialize import (
    combination_from_json,
    combination_to_csv,
    combination_to_json,
    dumps,
    rational_from_json,
    rational_to_json,
    table_to_csv,
    table_to_json,
)
from fmzv.sweep import check_reduce, worker_count


@given(st.fractions())
def test_rational_roundtrip(q):
    assert rational_from_json(json.loads(json.dumps(rational_to_json(q)))) == q


@pytest.mark.parametrize("k", [(3, -1), (-1, -1), (-2, 1, -1), (), (2,)])
def test_combination_roundtrip(k):
    c = reduce(k)
    doc = json.loads(dumps(combination_to_json(c)))
    assert doc["schema"] == "fmzv/1"
    assert combination_from_json(doc) == c


def test_large_rationals_survive():
    c = Combination({(1,): Poly2.const(10**40 + 1) * Poly2.x_minus(3)})
    assert combination_from_json(json.loads(dumps(combination_to_json(c)))) == c


def test_csv_forms():
    text = combination_to_csv(reduce((3, -1)))
    assert text.splitlines()[0] == "index,dplus,dminus,num,den"
    assert "3,0,2,1,2" in text
    table = extract_P(1, 1)
    assert table_to_csv(table).splitlines()[1:3] == ["0,0,1,1,1", "0,1,0,-1,1"]
    assert [e["k"] for e in table_to_json(table, 1, 1)["entries"]] == ["0", "1"]


def test_report_partition_and_order():
    rep = check_reduce((-2, 1, -1), 60, 2, workers=3)
    checked = set(rep.primes_checked)
    skipped = {p for p, _ in rep.primes_skipped}
    assert not checked & skipped
    assert checked | skipped == set(primes_between(2, 60))
    assert rep.primes_checked == sorted(rep.primes_checked)
    assert rep.all_passed and rep.first_failure is None


def test_skips_are_exactly_denominator_primes():
    k = (-4, 6, -3, 2)
    c = reduce(k)
    dens = c.denominators()
    rep = check_reduce(k, 100, 1, strategies=("leftmost",), primes_from=5)
    assert {p for p, _ in rep.primes_skipped} == {p for p in primes_between(5, 100) if any(d % p == 0 for d in dens)}


def test_parallel_equals_serial():
    a = check_reduce((3, -2, 1), 80, 2, workers=1)
    b = check_reduce((3, -2, 1), 80, 2, workers=4)
    assert dumps(a.to_json()) == dumps(b.to_json())


def test_failure_is_reported():
    wrong = Combination({(1,): Poly2.x_minus()})  # deliberately not the reduction of (3, -1)
    rep = check_reduce((3, -1), 30, 1, combos=[("leftmost", wrong)], workers=2)
    assert not rep.all_passed
    f = rep.first_failure
    assert f.prime == 3 and f.lhs != f.rhs  # p = 2 agrees by accident
    # later primes are still checked
    assert rep.primes_checked[-1] == 29


def test_worker_count_env(monkeypatch):
    monkeypatch.setenv("FMZV_THREADS", "3")
    assert worker_count() == 3
    monkeypatch.setenv("FMZV_THREADS", "zero")
    with pytest.raises(ValueError):
        worker_count()
    monkeypatch.delenv("FMZV_THREADS")
    assert 1 <= worker_count() <= 4
