from fractions import Fraction

import pytest

from fmzv.arith import bernoulli_polynomial
from fmzv.errors import PoleResidue, TruncationTooSmall
from fmzv.genfun import (
    TruncSeries,
    extract_P,
    g1_series,
    gr_closed_form,
    gr_recurrence,
    gr_series,
    integer_powersum_oracle,
)
from fmzv.index import Poly2
from fmzv.reduction import reduce

H = Fraction(1, 2)
YP, YM = Poly2.x_plus(), Poly2.x_minus()


def poly_of_univariate(p, var):
    """Substitute a univariate PolyQ into y+ (var=0) or y- (var=1), with sign flip for y+."""
    out = Poly2()
    for d, c in p.coefficients.items():
        out = out + (YM**d if var else (-YP) ** d) * c
    return out


class TestG1:
    def test_low_coefficients(self):
        g = g1_series(4)
        assert g.is_regular() and g.prefactor == (0,)
        assert g[(0,)] == YM - YP - 1
        assert g[(1,)] == (YM * YM - YM - YP * YP - YP) * H

    @pytest.mark.parametrize("k", range(11))
    def test_bernoulli_polynomial_form(self, k):
        # P_1(k) = B_{k+1}(y-)/(k+1) + (-1)^k B_{k+1}(-y+)/(k+1)
        b = bernoulli_polynomial(k + 1)
        want = (poly_of_univariate(b, 1) + poly_of_univariate(b, 0) * (-1) ** k) * Fraction(1, k + 1)
        assert extract_P(1, 10)[(k,)] == want


class TestDepth2:
    def test_counting_coefficient(self):
        g = gr_recurrence(g1_series(5), 4)
        c = g[(0, 0)]
        assert c == (YM - YP - 1) * (YM - YP - 2) * H
        assert c(0, 5) == 6

    def test_recurrence_needs_one_extra_degree(self):
        with pytest.raises(TruncationTooSmall):
            gr_recurrence(g1_series(4), 4)

    def test_closed_form_r1(self):
        assert gr_closed_form(1, 6).coefficient_equal(g1_series(6))


@pytest.mark.parametrize("r,N", [(1, 6), (2, 4), (2, 6), (3, 4)])
def test_closed_form_matches_recurrence(r, N):
    closed = gr_closed_form(r, N)
    rec = gr_series(r, N)
    assert closed.is_regular() and rec.is_regular()
    assert closed.coefficient_equal(rec)


def test_oracle_examples():
    assert integer_powersum_oracle((1, 1), 0, 5) == 35
    assert integer_powersum_oracle((2,), 1, 4) == 13
    assert integer_powersum_oracle((0,), 0, 5) == 4


@pytest.mark.parametrize("r", [1, 2, 3])
def test_powersum_identity(r):
    table = extract_P(r, 3)
    for k, poly in table.items():
        for b in range(1, 13):
            for a in range(b):
                assert poly(a, b) == integer_powersum_oracle(k, a, b)


@pytest.mark.parametrize("r", [1, 2, 3])
def test_matches_reduction(r):
    table = extract_P(r, 3)
    for k in table:
        assert reduce(tuple(-x for x in k))[()] == table[k]


class TestSeries:
    def test_multiplication_truncates(self):
        a = TruncSeries.univariate(1, 0, 3, [1, 1, 1])
        b = TruncSeries.univariate(1, 0, 5, [1, 1, 1, 1, 1])
        prod = a * b
        assert prod.trunc == 3
        assert [prod[(d,)] for d in range(3)] == [1, 2, 3]
        with pytest.raises(TruncationTooSmall):
            prod[(3,)]

    def test_divide_by_form_exact(self):
        # (z0 + z1)(1 + z0) divided by z0 + z1
        form = TruncSeries.along_form(2, (0, 1), 6, [0, 1])
        f = form * TruncSeries.univariate(2, 0, 6, [1, 1])
        q = f.divide_by_form((0, 1))
        assert q.coefficient_equal(TruncSeries.univariate(2, 0, 5, [1, 1]))

    def test_divide_by_form_remainder(self):
        f = TruncSeries.univariate(2, 0, 4, [0, 0, 1])  # z0^2 is not divisible by z0 + z1
        with pytest.raises(PoleResidue):
            f.divide_by_form((0, 1))

    def test_uncancelled_pole(self):
        s = TruncSeries.univariate(1, 0, 4, [1, 1]).divide_by_monomial(0)
        assert not s.is_regular()
        with pytest.raises(PoleResidue):
            s.regularize()

    def test_substitute_sum(self):
        s = TruncSeries.univariate(1, 0, 4, [0, 0, 1])  # z0^2
        t = s.substitute_sum(0, 1, 2)
        assert {e: v for e, v in t.coeffs.items()} == {(2, 0): 1, (1, 1): 2, (0, 2): 1}

    def test_extract_needs_enough_terms(self):
        with pytest.raises(TruncationTooSmall):
            extract_P(2, 3, gr_series(2, 4))


def test_regular_everywhere():
    for r in (1, 2, 3):
        g = gr_series(r, 5)
        assert all(p == 0 for p in g.prefactor)
        assert all(min(e) >= 0 for e in g.coeffs)
