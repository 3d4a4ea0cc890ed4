"""Characterization sets: per-class sets of attribute-scoped value disjunctions.

At a coverage threshold of 1.0 the element for attribute ``a`` is the
disjunction of every ``a``-value seen among the class's cases.  Elements whose
value set spans the whole observed domain are tautologies and are dropped.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from .errors import ConfigError
from .formula import Descriptor, Formula, disj
from .table import DecisionTable


@dataclass(frozen=True, eq=False)
class ValueDisjunction:
    """``[a = v1] ∨ [a = v2] ∨ ...`` over a single attribute.

    Identity is the attribute name plus the *set* of values; ``values`` keeps
    the domain order only for display.
    """

    attribute: str
    values: tuple

    def __post_init__(self):
        if not self.values:
            raise ValueError(f"empty value disjunction for {self.attribute!r}")
        object.__setattr__(self, "values", tuple(dict.fromkeys(self.values)))

    @property
    def value_set(self) -> frozenset:
        return frozenset(self.values)

    def __eq__(self, other):
        if not isinstance(other, ValueDisjunction):
            return NotImplemented
        return self.attribute == other.attribute and self.value_set == other.value_set

    def __hash__(self):
        return hash((self.attribute, self.value_set))

    def __repr__(self):
        return f"ValueDisjunction({self.attribute!r}, {self.values!r})"

    def __str__(self):
        text = str(self.as_formula())
        return f"({text})" if len(self.values) > 1 else text

    def as_formula(self) -> Formula:
        return disj(*(Descriptor(self.attribute, v) for v in self.values))


@dataclass(frozen=True)
class CharacterizationSet:
    """The elements characterizing one class (or merged group) at a coverage threshold."""

    label: str
    elements: tuple
    kappa_threshold: Fraction = Fraction(1)

    @property
    def element_set(self) -> frozenset:
        return frozenset(self.elements)

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __contains__(self, item):
        return item in self.element_set

    def by_attribute(self) -> dict:
        return {e.attribute: e for e in self.elements}

    def __str__(self):
        return "{" + ", ".join(str(e) for e in self.elements) + "}"


def as_ratio(x) -> Fraction:
    """Turn ``0.75``, ``"3/4"`` or ``Fraction(3, 4)`` into an exact Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(repr(x))
    return Fraction(x)


def _check_kappa(delta_kappa) -> Fraction:
    try:
        dk = as_ratio(delta_kappa)
    except (ValueError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"delta_kappa must be a ratio, got {delta_kappa!r}") from exc
    if not 0 < dk <= 1:
        raise ConfigError(f"delta_kappa must lie in (0, 1], got {delta_kappa!r}")
    return dk


def characterize(t: DecisionTable, label: str, delta_kappa=1) -> CharacterizationSet:
    """Characterization set of class ``label`` at coverage threshold ``delta_kappa``.

    For each condition attribute, values are accumulated in decreasing order of
    their frequency within the class (ties broken by domain order) until the
    accumulated coverage reaches ``delta_kappa``.  At 1.0 this collects exactly
    the values occurring in the class.  The element is kept only when its value
    set is a proper subset of the attribute's domain.
    """
    dk = _check_kappa(delta_kappa)
    target = t.class_cases(label)
    elements = []
    for attr in t.conditions:
        counts = [(len(t.cases_with(attr.name, v) & target), i, v)
                  for i, v in enumerate(attr.domain)]
        counts.sort(key=lambda c: (-c[0], c[1]))
        chosen, covered = [], 0
        for n, _, v in counts:
            if Fraction(covered, len(target)) >= dk:
                break
            chosen.append(v)
            covered += n
        if len(chosen) < len(attr.domain):
            order = {v: i for i, v in enumerate(attr.domain)}
            chosen.sort(key=order.__getitem__)
            elements.append(ValueDisjunction(attr.name, tuple(chosen)))
    return CharacterizationSet(label, tuple(elements), dk)


def characterize_all(t: DecisionTable, delta_kappa=1) -> list:
    return [characterize(t, c, delta_kappa) for c in t.classes]


class Relation(str, enum.Enum):
    INDEPENDENT = "independent"
    OVERLAPPED = "overlapped"
    SUBCATEGORY = "subcategory"


def relation_type(l1: CharacterizationSet, l2: CharacterizationSet) -> Relation:
    s1, s2 = l1.element_set, l2.element_set
    if not s1 & s2:
        return Relation.INDEPENDENT
    if s1 <= s2 or s2 <= s1:
        return Relation.SUBCATEGORY
    return Relation.OVERLAPPED


def element_universe(sets: Iterable[CharacterizationSet]) -> frozenset:
    """Union of all elements across ``sets``: the universe used for the d cell."""
    out = set()
    for s in sets:
        out.update(s.elements)
    return frozenset(out)
