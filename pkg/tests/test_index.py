from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from fmzv.errors import ParseError
from fmzv.index import Combination, Poly2, classify, format_index, parse_index

indices = st.lists(st.integers(-9, 9), max_size=6).map(tuple)
small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=7)
polys = st.dictionaries(
    st.tuples(st.integers(0, 3), st.integers(0, 3)), small_fracs, max_size=4
).map(Poly2)
combos = st.dictionaries(st.lists(st.integers(-2, 3), max_size=3).map(tuple), polys, max_size=4).map(Combination)


class TestClassify:
    def test_examples(self):
        info = classify((1, 2))
        assert (info.depth, info.weight, info.is_positive, info.is_admissible) == (2, 3, True, True)
        assert (info.positive_count, info.positive_sum) == (2, 3)
        empty = classify(())
        assert (empty.depth, empty.weight, empty.is_positive, empty.is_admissible) == (0, 0, True, True)
        mixed = classify((3, -1))
        assert mixed.weight is None and not mixed.is_positive and not mixed.is_admissible
        assert (mixed.positive_count, mixed.positive_sum) == (1, 3)
        assert not classify((2, 1)).is_admissible

    @given(indices)
    def test_weight_bound(self, k):
        info = classify(k)
        dominated = tuple(e for e in k if e > 0)
        assert sum(dominated) <= info.positive_sum
        assert len(dominated) == info.positive_count


class TestParse:
    def test_examples(self):
        assert parse_index("3,-1") == (3, -1)
        assert parse_index("") == ()
        assert parse_index(" 4 , +2 ") == (4, 2)

    @pytest.mark.parametrize(
        "text,pos",
        [("3,,1", 2), ("a", 0), ("1,2,x", 4), ("1.5", 0), ("1,", 2), ("1, 2x", 3)],
    )
    def test_errors_report_position(self, text, pos):
        with pytest.raises(ParseError) as info:
            parse_index(text)
        assert info.value.position == pos

    @given(indices)
    def test_roundtrip(self, k):
        assert parse_index(format_index(k)) == k


class TestPoly2:
    def test_format_and_eval(self):
        p = Poly2({(0, 2): Fraction(1, 2), (0, 1): Fraction(-1, 2)})
        assert p.format() == "1/2*x-^2 - 1/2*x-"
        assert p(0, 5) == 10
        assert Poly2().format() == "0"

    def test_specialize(self):
        p = Poly2({(0, 2): Fraction(1, 2), (0, 1): Fraction(-1, 2), (1, 0): -1})
        assert p.specialize_single() == Poly2({(0, 2): Fraction(1, 2), (0, 1): Fraction(-1, 2)})

    @given(polys, polys, polys)
    def test_ring_laws(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a - a == Poly2()

    @given(polys, polys, small_fracs, small_fracs)
    def test_evaluation_is_homomorphism(self, a, b, x, y):
        assert (a * b)(x, y) == a(x, y) * b(x, y)
        assert (a + b)(x, y) == a(x, y) + b(x, y)


class TestCombination:
    def test_examples(self):
        assert Combination.single((1,), 3).scale(2) == Combination.single((1,), 6)
        assert len(Combination.single((1,)) + Combination.single((1,), -1)) == 0
        c = Combination({(3,): Poly2({(0, 2): Fraction(1, 2), (0, 1): Fraction(-1, 2), (1, 0): -1})})
        assert c.specialize_single() == Combination({(3,): Poly2({(0, 2): Fraction(1, 2), (0, 1): Fraction(-1, 2)})})

    def test_keys_not_normalized(self):
        c = Combination({(1, 2): 1, (2, 1): 1})
        assert c[(1, 2)] == 1 and c[(2, 1)] == 1 and len(c) == 2

    def test_canonical_order(self):
        c = Combination({(1,): 1, (): 1, (2, 1): 1, (1, 2): 1})
        assert c.keys() == [(1, 2), (2, 1), (1,), ()]

    @given(combos, combos, combos)
    def test_module_laws(self, a, b, c):
        assert (a + b) + c == a + (b + c)
        assert a + b == b + a

    @given(combos, combos, polys, polys)
    def test_scalar_laws(self, a, b, p, q):
        assert (a + b).scale(p) == a.scale(p) + b.scale(p)
        assert a.scale(p).scale(q) == a.scale(p * q)
        assert a.scale(p + q) == a.scale(p) + a.scale(q)
