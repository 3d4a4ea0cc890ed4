"""Rough-set mining of diagnostic taxonomies and multi-stage classification rules."""

from .characterize import (
    CharacterizationSet,
    Relation,
    ValueDisjunction,
    characterize,
    characterize_all,
    relation_type,
)
from .errors import RoughTaxError
from .formula import FALSE, TRUE, And, Descriptor, Not, Or, attr_subset, parse_formula
from .grouping import GroupingConfig, TaxonomyNode, group, intersect_characterizations
from .induction import (
    Rule,
    RuleSet,
    build_rule,
    discriminate_within,
    filter_probabilistic,
    induce_rules,
    negate_characterization,
)
from .similarity import (
    ContingencyCounts,
    IntervalSimilarity,
    Measure,
    compare_intervals,
    contingency,
    interval,
    measure,
)
from .simplify import simplify
from .table import AttributeSchema, DecisionTable, accuracy, coverage, meaning, parse_table

__version__ = "0.1.0"

__all__ = [
    "AttributeSchema", "And", "CharacterizationSet", "ContingencyCounts", "DecisionTable",
    "Descriptor", "FALSE", "GroupingConfig", "IntervalSimilarity", "Measure", "Not", "Or",
    "Relation", "RoughTaxError", "Rule", "RuleSet", "TRUE", "TaxonomyNode", "ValueDisjunction",
    "accuracy", "attr_subset", "build_rule", "characterize", "characterize_all",
    "compare_intervals", "contingency", "coverage", "discriminate_within", "filter_probabilistic",
    "group", "induce_rules", "interval", "intersect_characterizations", "meaning", "measure",
    "negate_characterization", "parse_formula", "parse_table", "relation_type", "simplify",
]
