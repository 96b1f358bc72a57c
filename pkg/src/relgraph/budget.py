"""Exact edit budgets d(n) and the integer predicates used to enforce them.

No floating point enters an accept/reject decision.  Rational budgets are
compared as :class:`fractions.Fraction`; the irrational ones (``sqrt(n)``,
``n^(4/3)``, ``n/e``) are compared through equivalent integer inequalities:

* ``x <= sqrt(n)``     iff ``x*x <= n``
* ``x <= n^(4/3)``     iff ``x**3 <= n**4``
* ``x <= n/e``         decided by bracketing ``e`` between two rationals
  until the bracket separates ``x*e`` from ``n`` (it always does for
  ``x >= 1`` because ``e`` is irrational).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction


class Metric(str, enum.Enum):
    MAXDEG = "maxdeg"
    EDITS = "edits"


def iroot(x: int, k: int) -> int:
    """Largest integer r with r**k <= x."""
    if x < 0 or k < 1:
        raise ValueError("iroot needs x >= 0 and k >= 1")
    if x < 2 or k == 1:
        return x
    if k == 2:
        return math.isqrt(x)
    r = 1 << ((x.bit_length() + k - 1) // k)
    # Newton from above converges monotonically to the floor root.
    while True:
        s = ((k - 1) * r + x // r ** (k - 1)) // k
        if s >= r:
            break
        r = s
    while r ** k > x:
        r -= 1
    while (r + 1) ** k <= x:
        r += 1
    return r


def floor_power(n: int, exponent: Fraction) -> int:
    """floor(n ** exponent) for n >= 0 and a non-negative rational exponent."""
    exponent = Fraction(exponent)
    if exponent < 0:
        raise ValueError("negative exponent")
    if n == 0:
        return 1 if exponent == 0 else 0
    return iroot(n ** exponent.numerator, exponent.denominator)


def ceil_sqrt(x: int) -> int:
    r = math.isqrt(x)
    return r if r * r == x else r + 1


def e_bracket(terms: int) -> tuple[Fraction, Fraction]:
    """Rationals (lo, hi) with lo < e < hi and hi - lo = 1/(terms! * terms).

    lo is the partial sum of 1/j! for j <= terms; the tail is bounded by
    1/(terms! * terms).
    """
    if terms < 1:
        raise ValueError("terms must be positive")
    lo = Fraction(0)
    fact = 1
    for j in range(terms + 1):
        if j:
            fact *= j
        lo += Fraction(1, fact)
    return lo, lo + Fraction(1, fact * terms)


def at_most_n_over_e(x: int, n: int) -> bool:
    """Exact test of x <= n/e for integers x, n >= 0."""
    if x <= 0:
        return True
    terms = 8
    while True:
        lo, hi = e_bracket(terms)
        if x * hi <= n:
            return True
        if x * lo > n:
            return False
        terms *= 2


class BudgetRule(str, enum.Enum):
    ONE = "1"
    THIRD = "n/3"
    OVER_E = "n/e"
    SQRT = "n^(1/2)"
    FOUR_THIRDS = "n^(4/3)"


@dataclass(frozen=True)
class Budget:
    """The bound d(n) for one (metric, rule) pair evaluated at a concrete n."""

    kind: Metric
    rule: BudgetRule
    n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", Metric(self.kind))
        object.__setattr__(self, "rule", BudgetRule(self.rule))
        if self.n < 0:
            raise ValueError("budget needs n >= 0")

    @property
    def value(self) -> Fraction | None:
        """The bound as an exact rational, or None when it is irrational."""
        n = self.n
        if self.rule is BudgetRule.ONE:
            return Fraction(1)
        if self.rule is BudgetRule.THIRD:
            return Fraction(n, 3)
        if self.rule is BudgetRule.SQRT:
            r = math.isqrt(n)
            return Fraction(r) if r * r == n else None
        if self.rule is BudgetRule.FOUR_THIRDS:
            r = iroot(n, 3)
            return Fraction(r ** 4) if r ** 3 == n else None
        return Fraction(0) if n == 0 else None

    def admits(self, x) -> bool:
        """True iff the (integer or infinite) distance x is within budget."""
        if not isinstance(x, int):
            return False
        if x < 0:
            raise ValueError("distances are non-negative")
        n = self.n
        if self.rule is BudgetRule.ONE:
            return x <= 1
        if self.rule is BudgetRule.THIRD:
            return 3 * x <= n
        if self.rule is BudgetRule.SQRT:
            return x * x <= n
        if self.rule is BudgetRule.FOUR_THIRDS:
            return x ** 3 <= n ** 4
        return at_most_n_over_e(x, n)

    def floor(self) -> int:
        """Largest integer distance the budget admits."""
        n = self.n
        if self.rule is BudgetRule.ONE:
            return 1
        if self.rule is BudgetRule.THIRD:
            return n // 3
        if self.rule is BudgetRule.SQRT:
            return math.isqrt(n)
        if self.rule is BudgetRule.FOUR_THIRDS:
            return iroot(n ** 4, 3)
        x = n // 3  # n/e > n/3
        while self.admits(x + 1):
            x += 1
        return x

    @property
    def text(self) -> str:
        """Exact textual form with n substituted, e.g. ``10/3`` or ``10^(1/2)``."""
        val = self.value
        if val is not None:
            return str(val)
        if self.rule is BudgetRule.OVER_E:
            return f"{self.n}/e"
        return self.rule.value.replace("n", str(self.n), 1)

    def __str__(self) -> str:
        return self.text
