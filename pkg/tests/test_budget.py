import math
from decimal import Decimal, getcontext
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from relgraph.budget import (Budget, BudgetRule, Metric, at_most_n_over_e, ceil_sqrt,
                             e_bracket, floor_power, iroot)
from relgraph.graph import INF

getcontext().prec = 80
E = Decimal(1).exp()


@given(st.integers(0, 10 ** 40), st.integers(1, 7))
def test_iroot_is_floor_root(x, k):
    r = iroot(x, k)
    assert r ** k <= x < (r + 1) ** k


@given(st.integers(0, 10 ** 12), st.fractions(min_value=0, max_value=3, max_denominator=50))
def test_floor_power(n, p):
    r = floor_power(n, p)
    # r <= n^p < r + 1, checked exactly on integer powers
    num, den = p.numerator, p.denominator
    assert r ** den <= n ** num < (r + 1) ** den or (n == 0 and r == 0)


def test_ceil_sqrt():
    assert [ceil_sqrt(x) for x in range(10)] == [0, 1, 2, 2, 2, 3, 3, 3, 3, 3]


def test_e_bracket_contains_e():
    for terms in (4, 8, 16, 32):
        lo, hi = e_bracket(terms)
        assert Decimal(lo.numerator) / lo.denominator < E < Decimal(hi.numerator) / hi.denominator


def test_n_over_e_matches_high_precision_reference():
    for n in range(0, 3000):
        bound = Decimal(n) / E
        for x in (int(bound) - 1, int(bound), int(bound) + 1):
            if x >= 0:
                assert at_most_n_over_e(x, n) == (x <= bound), (x, n)


def test_budget_admits_is_exact():
    for n in range(0, 500):
        assert Budget(Metric.MAXDEG, BudgetRule.SQRT, n).floor() == math.isqrt(n)
        assert Budget(Metric.EDITS, BudgetRule.THIRD, n).floor() == n // 3
        b = Budget(Metric.EDITS, BudgetRule.FOUR_THIRDS, n)
        f = b.floor()
        assert f ** 3 <= n ** 4 < (f + 1) ** 3
        assert b.admits(f) and not b.admits(f + 1)
        ds = Budget(Metric.EDITS, BudgetRule.OVER_E, n).floor()
        assert ds == int(Decimal(n) / E)


def test_budget_rejects_infinity_and_negative():
    b = Budget(Metric.EDITS, BudgetRule.THIRD, 9)
    assert not b.admits(INF)
    with pytest.raises(ValueError):
        b.admits(-1)


@pytest.mark.parametrize("rule, n, text, value", [
    (BudgetRule.ONE, 10, "1", Fraction(1)),
    (BudgetRule.THIRD, 10, "10/3", Fraction(10, 3)),
    (BudgetRule.THIRD, 9, "3", Fraction(3)),
    (BudgetRule.OVER_E, 10, "10/e", None),
    (BudgetRule.SQRT, 10, "10^(1/2)", None),
    (BudgetRule.SQRT, 16, "4", Fraction(4)),
    (BudgetRule.FOUR_THIRDS, 10, "10^(4/3)", None),
    (BudgetRule.FOUR_THIRDS, 27, "81", Fraction(81)),
])
def test_budget_text(rule, n, text, value):
    b = Budget(Metric.EDITS, rule, n)
    assert b.text == text and b.value == value
