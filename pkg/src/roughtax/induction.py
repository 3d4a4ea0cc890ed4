"""Multi-stage rule induction down a taxonomy.

The rule for a leaf class is the conjunction of one subrule per level on the
path from the root: at every ancestor the path takes one child, and the
off-path sibling is excluded by negating its characterization.  At the
leaf's own parent, when the sibling is a leaf too, the two classes are told
apart by the attributes on which their value sets are disjoint.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional

from .characterize import CharacterizationSet, as_ratio
from .errors import ConfigError, RoughTaxError
from .formula import TRUE, Formula, Not, conj, disj
from .grouping import TaxonomyNode
from .simplify import simplify as simplify_formula
from .table import DecisionTable, accuracy, coverage, meaning

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Subrule:
    level: str      # id of the internal node where the path branches
    sibling: str    # id of the off-path child
    formula: Formula
    kind: str       # "exclude" or "discriminate"


@dataclass(frozen=True)
class Rule:
    """``condition → conclusion`` with its statistics on the source table.

    ``accuracy`` is None when the condition matches no case.
    """

    condition: Formula
    conclusion: str
    accuracy: Optional[Fraction]
    coverage: Fraction
    derivation: tuple
    unsimplified: Formula
    extension: frozenset = frozenset()
    degenerate: bool = False

    def passes(self, delta_alpha, delta_kappa) -> bool:
        acc = Fraction(0) if self.accuracy is None else self.accuracy
        return acc >= delta_alpha and self.coverage >= delta_kappa

    def __str__(self):
        return f"{self.condition} → {self.conclusion}"


@dataclass(frozen=True)
class RuleSet:
    rules: tuple
    delta_alpha: Fraction = Fraction(0)
    delta_kappa: Fraction = Fraction(0)
    warnings: tuple = field(default=())

    def __iter__(self):
        return iter(self.rules)

    def __len__(self):
        return len(self.rules)

    def for_class(self, label: str) -> Optional[Rule]:
        return next((r for r in self.rules if r.conclusion == label), None)


def negate_characterization(char: CharacterizationSet) -> Formula:
    """``¬R1 ∨ ¬R2 ∨ ...`` over the elements of ``char``."""
    if not char.elements:
        raise RoughTaxError(f"cannot negate the empty characterization of {char.label!r}")
    return disj(*(Not(e.as_formula()) for e in char.elements))


def positive_characterization(char: CharacterizationSet) -> Formula:
    """``R1 ∧ R2 ∧ ...`` over the elements of ``char``."""
    return conj(*(e.as_formula() for e in char.elements))


def discriminate_within(own: CharacterizationSet, sibling: CharacterizationSet) -> Formula:
    """Conjunction of ``own``'s elements on attributes where the two value sets are disjoint.

    Returns TRUE when no such attribute exists.
    """
    theirs = sibling.by_attribute()
    picked = [e for e in own.elements
              if e.attribute in theirs and not e.value_set & theirs[e.attribute].value_set]
    return conj(*(e.as_formula() for e in picked))


def merge_subrules(node: TaxonomyNode) -> tuple:
    """The pair of subrules a merge contributes, oriented left/right.

    The left child is separated by negating the right child's characterization;
    the right child is recognised by the conjunction of its own.  Returns
    ``((formula, "¬right"), (formula, "right"))`` or None for leaves and for an
    empty right-hand characterization.
    """
    if node.is_leaf:
        return None
    _, right = node.children
    if not right.characterization.elements:
        return None
    return ((negate_characterization(right.characterization), f"¬{right.id}"),
            (positive_characterization(right.characterization), right.id))


def build_rule(leaf: str, taxonomy: TaxonomyNode, t: DecisionTable,
               simplify: bool = True) -> Rule:
    """Induce the rule for class ``leaf`` from its path in ``taxonomy``."""
    path = taxonomy.path_to(leaf)
    if path is None or not path[-1].is_leaf:
        raise RoughTaxError(f"class {leaf!r} is not a leaf of taxonomy {taxonomy.id!r}")
    own = path[-1].characterization
    subrules = []
    degenerate = False
    for depth, node in enumerate(path[:-1]):
        on_path = path[depth + 1]
        sibling = next(c for c in node.children if c is not on_path)
        if on_path.is_leaf and sibling.is_leaf:
            f = discriminate_within(own, sibling.characterization)
            if f == TRUE:
                degenerate = True
            subrules.append(Subrule(node.id, sibling.id, f, "discriminate"))
        elif sibling.characterization.elements:
            subrules.append(Subrule(node.id, sibling.id,
                                    negate_characterization(sibling.characterization), "exclude"))
    if len(path) == 1:
        degenerate = True
    raw = conj(*(s.formula for s in subrules))
    condition = simplify_formula(raw, t) if simplify else raw
    ext = meaning(condition, t)
    acc = accuracy(condition, leaf, t) if ext else None
    return Rule(condition, leaf, acc, coverage(condition, leaf, t), tuple(subrules), raw,
                ext, degenerate)


def induce_rules(roots, t: DecisionTable, simplify: bool = True) -> RuleSet:
    """One rule per leaf class across all trees in ``roots``."""
    if isinstance(roots, TaxonomyNode):
        roots = [roots]
    rules, warnings = [], []
    for label in t.classes:
        root = next((r for r in roots if r.path_to(label) is not None), None)
        if root is None:
            raise RoughTaxError(f"class {label!r} does not occur in the taxonomy")
        rule = build_rule(label, root, t, simplify=simplify)
        if rule.degenerate:
            msg = f"{label}: no attribute separates this class from its sibling; leaf term is TRUE"
            log.warning(msg)
            warnings.append(msg)
        if rule.accuracy is None:
            msg = f"{label}: rule matches no case; accuracy undefined"
            log.warning(msg)
            warnings.append(msg)
        rules.append(rule)
    return RuleSet(tuple(rules), warnings=tuple(warnings))


def filter_probabilistic(rs: RuleSet, delta_alpha, delta_kappa) -> RuleSet:
    """Keep the rules with accuracy ≥ ``delta_alpha`` and coverage ≥ ``delta_kappa``."""
    da, dk = as_ratio(delta_alpha), as_ratio(delta_kappa)
    for name, v in (("delta_alpha", da), ("delta_kappa", dk)):
        if not 0 <= v <= 1:
            raise ConfigError(f"{name} must lie in [0, 1], got {v}")
    kept = tuple(r for r in rs.rules if r.passes(da, dk))
    return replace(rs, rules=kept, delta_alpha=da, delta_kappa=dk)
