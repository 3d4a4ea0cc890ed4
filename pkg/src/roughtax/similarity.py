"""Similarity between characterization sets.

Two sets are compared through a 2x2 contingency table over their elements:
``a`` shared, ``b`` only in the first, ``c`` only in the second, ``d`` in the
element universe but in neither.  The interval-valued similarity pairs the
Braun (lower) and Simpson (upper) coefficients.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .characterize import CharacterizationSet, element_universe
from .errors import ConfigError, RoughTaxError, UndefinedMeasureError


class Measure(str, enum.Enum):
    MATCHING = "matching"
    JACCARD = "jaccard"
    CHI2 = "chi2"
    POINT_CORRELATION = "point_correlation"
    KULCZYNSKI = "kulczynski"
    OCHIAI = "ochiai"
    SIMPSON = "simpson"
    BRAUN = "braun"
    INTERVAL = "interval"

    @classmethod
    def parse(cls, name) -> "Measure":
        if isinstance(name, cls):
            return name
        try:
            return cls(str(name).strip().lower().replace("-", "_"))
        except ValueError:
            names = ", ".join(m.value for m in cls)
            raise ConfigError(f"unknown measure {name!r}; choose one of {names}") from None


SINGLE_VALUED = tuple(m for m in Measure if m is not Measure.INTERVAL)


class UniverseError(RoughTaxError, ValueError):
    """Characterization elements missing from the declared element universe."""


@dataclass(frozen=True)
class ContingencyCounts:
    a: int
    b: int
    c: int
    d: int = 0

    def __post_init__(self):
        if min(self.a, self.b, self.c, self.d) < 0:
            raise ValueError(f"negative contingency count in {self}")

    @property
    def n(self) -> int:
        return self.a + self.b + self.c + self.d

    def transposed(self) -> "ContingencyCounts":
        return ContingencyCounts(self.a, self.c, self.b, self.d)


@dataclass(frozen=True)
class IntervalSimilarity:
    """``[lo, hi]`` = ``[Braun, Simpson]``, both exact rationals."""

    lo: Fraction
    hi: Fraction

    @property
    def key(self) -> tuple:
        """Sort key realising the interval order: upper bound first, then lower."""
        return (self.hi, self.lo)

    def __str__(self):
        return f"[{self.lo}, {self.hi}]"

    def __lt__(self, other):
        return self.key < other.key

    def __le__(self, other):
        return self.key <= other.key

    def __gt__(self, other):
        return self.key > other.key

    def __ge__(self, other):
        return self.key >= other.key


ZERO_INTERVAL = IntervalSimilarity(Fraction(0), Fraction(0))


def contingency(l1: CharacterizationSet, l2: CharacterizationSet,
                universe: Optional[Iterable] = None) -> ContingencyCounts:
    """Element-match counts between two characterization sets.

    ``universe`` defaults to the union of the two sets, which makes ``d = 0``.
    """
    s1, s2 = l1.element_set, l2.element_set
    uni = element_universe((l1, l2)) if universe is None else frozenset(universe)
    missing = (s1 | s2) - uni
    if missing:
        shown = ", ".join(sorted(str(e) for e in missing))
        raise UniverseError(f"elements outside the universe: {shown}")
    return ContingencyCounts(
        a=len(s1 & s2),
        b=len(s1 - s2),
        c=len(s2 - s1),
        d=len(uni - (s1 | s2)),
    )


def measure(cc: ContingencyCounts, kind):
    """Evaluate one of the eight single-valued similarity measures.

    Rational measures come back as :class:`~fractions.Fraction`; Ochiai and
    the point correlation involve a square root and come back as ``float``.
    The chi-square and point correlation use ``M = (a+b)(b+c)(c+d)(d+a)``.
    """
    kind = Measure.parse(kind)
    a, b, c, d = cc.a, cc.b, cc.c, cc.d

    def need(denominator, what):
        if denominator == 0:
            raise UndefinedMeasureError(kind.value, f"{what} is zero for {cc}")

    if kind is Measure.MATCHING:
        return Fraction(a)
    if kind is Measure.JACCARD:
        need(a + b + c, "a+b+c")
        return Fraction(a, a + b + c)
    if kind in (Measure.CHI2, Measure.POINT_CORRELATION):
        m = (a + b) * (b + c) * (c + d) * (d + a)
        need(m, "M")
        if kind is Measure.CHI2:
            return Fraction(cc.n * (a * d - b * c) ** 2, m)
        return (a * d - b * c) / math.sqrt(m)
    need((a + b) * (a + c), "a+b or a+c")
    if kind is Measure.KULCZYNSKI:
        return (Fraction(a, a + b) + Fraction(a, a + c)) / 2
    if kind is Measure.OCHIAI:
        return a / math.sqrt((a + b) * (a + c))
    if kind is Measure.SIMPSON:
        return Fraction(a, min(a + b, a + c))
    if kind is Measure.BRAUN:
        return Fraction(a, max(a + b, a + c))
    raise ConfigError(f"{kind.value!r} is not a single-valued measure")


def interval_from_counts(cc: ContingencyCounts) -> IntervalSimilarity:
    if cc.a + cc.b == 0 or cc.a + cc.c == 0:
        raise UndefinedMeasureError("interval", "empty characterization set")
    return IntervalSimilarity(measure(cc, Measure.BRAUN), measure(cc, Measure.SIMPSON))


def interval(l1: CharacterizationSet, l2: CharacterizationSet,
             universe: Optional[Iterable] = None) -> IntervalSimilarity:
    """Interval-valued similarity ``[a/max(|L1|,|L2|), a/min(|L1|,|L2|)]``."""
    if not l1.elements or not l2.elements:
        empty = l1.label if not l1.elements else l2.label
        raise UndefinedMeasureError("interval", f"characterization of {empty!r} is empty")
    return interval_from_counts(contingency(l1, l2, universe))


def compare_intervals(x: IntervalSimilarity, y: IntervalSimilarity) -> int:
    """Three-way comparison: -1, 0 or 1 as ``x`` is less than, equal to or greater than ``y``.

    Upper bounds decide; equal upper bounds fall back to the lower bounds.
    """
    if x.key == y.key:
        return 0
    return 1 if x.key > y.key else -1
