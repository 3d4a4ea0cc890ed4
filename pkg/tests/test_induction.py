import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from oracles import random_table, scan_extension, scan_stats
from reference_values import COMMON_RULE_SIMPLIFIED
from roughtax.characterize import CharacterizationSet, ValueDisjunction, characterize
from roughtax.errors import ConfigError, RoughTaxError
from roughtax.formula import TRUE, And, Descriptor, Not, conj, parse_formula
from roughtax.grouping import GroupingConfig, group
from roughtax.induction import (
    Rule,
    RuleSet,
    build_rule,
    discriminate_within,
    filter_probabilistic,
    induce_rules,
    merge_subrules,
    negate_characterization,
)
from roughtax.table import meaning, parse_table

NEG_D8 = parse_formula("¬[nat = per] ∨ ¬[prod = 0]")
NEG_IML = parse_formula(
    "¬([loc = ocular] ∨ [loc = whole]) ∨ ¬[nat = per] ∨ ¬([his = subacute] ∨ [his = chronic])"
    " ∨ ¬[prod = 0] ∨ ¬[jolt = 1] ∨ ¬[M1 = 0] ∨ ¬[M2 = 0]")


def char(label, mapping):
    return CharacterizationSet(label, tuple(ValueDisjunction(a, tuple(v)) for a, v in mapping))


class TestNegate:
    def test_group(self):
        d8 = char("D8", [("nat", ("per",)), ("prod", ("0",))])
        assert negate_characterization(d8) == NEG_D8

    def test_leaf_with_multivalued_elements(self, headache):
        assert negate_characterization(characterize(headache, "i.m.l.")) == NEG_IML

    def test_singleton(self):
        assert negate_characterization(char("x", [("x", ("v",))])) == Not(Descriptor("x", "v"))

    def test_empty(self):
        with pytest.raises(RoughTaxError):
            negate_characterization(CharacterizationSet("D9", ()))


class TestDiscriminate:
    def test_common_vs_classic(self, headache):
        got = discriminate_within(characterize(headache, "common"), characterize(headache, "classic"))
        assert got == Descriptor("prod", "0")

    def test_classic_vs_common(self, headache):
        got = discriminate_within(characterize(headache, "classic"), characterize(headache, "common"))
        assert got == Descriptor("prod", "1")

    def test_self(self, headache):
        l = characterize(headache, "m.c.h.")
        assert discriminate_within(l, l) == TRUE


class TestBuildRule:
    def test_common_unsimplified(self, headache, headache_taxonomy):
        root, _ = headache_taxonomy
        rule = build_rule("common", root, headache)
        assert rule.unsimplified == And((NEG_D8, NEG_IML, Descriptor("prod", "0")))
        assert [(s.level, s.sibling, s.kind) for s in rule.derivation] == [
            ("D9", "D8", "exclude"), ("D7", "i.m.l.", "exclude"), ("D6", "classic", "discriminate")]

    def test_common(self, headache, headache_taxonomy):
        root, _ = headache_taxonomy
        rule = build_rule("common", root, headache)
        assert rule.extension == {3, 9}
        assert scan_extension(rule.condition, headache) == {3, 9}
        assert meaning(parse_formula(COMMON_RULE_SIMPLIFIED), headache) == {3, 9}
        assert (rule.accuracy, rule.coverage) == (1, 1)
        assert not rule.degenerate

    def test_classic(self, headache, headache_taxonomy):
        root, _ = headache_taxonomy
        rule = build_rule("classic", root, headache)
        assert rule.unsimplified == And((NEG_D8, NEG_IML, Descriptor("prod", "1")))
        assert rule.extension == {4}
        assert (rule.accuracy, rule.coverage) == (1, 1)

    def test_without_simplification(self, headache, headache_taxonomy):
        root, _ = headache_taxonomy
        rule = build_rule("common", root, headache, simplify=False)
        assert rule.condition == rule.unsimplified

    def test_indiscernible_leaves_are_degenerate(self, headache, headache_taxonomy):
        root, _ = headache_taxonomy
        rule = build_rule("psycho", root, headache)
        assert rule.degenerate
        assert rule.derivation[-1].formula == TRUE

    def test_two_class_taxonomy(self):
        t = parse_table("a,b,c\nx,u,p\ny,u,q\n", class_column="c")
        roots, _ = group(t, GroupingConfig(single_tree=True))
        rule = build_rule("p", roots[0], t)
        assert rule.condition == Descriptor("a", "x")
        assert rule.extension == {1}

    def test_leaf_missing(self, headache, headache_taxonomy):
        root, _ = headache_taxonomy
        with pytest.raises(RoughTaxError):
            build_rule("cluster", root, headache)

    def test_unjoined_forest_gives_true_rules(self, headache):
        roots, _ = group(headache, GroupingConfig(theta_g="4/5"))
        rs = induce_rules(roots, headache)
        assert all(r.condition == TRUE and r.degenerate for r in rs)
        assert len(rs.warnings) == 5


class TestWorkedRuleSet:
    def test_statistics_match_row_scan(self, headache, headache_taxonomy):
        root, _ = headache_taxonomy
        rs = induce_rules(root, headache)
        assert [r.conclusion for r in rs] == list(headache.classes)
        for r in rs:
            assert (r.accuracy, r.coverage) == scan_stats(r.condition, r.conclusion, headache)

    def test_rows_one_and_five_are_indiscernible(self, headache):
        # no condition can separate these rows, so m.c.h. and psycho cannot both reach 1/1
        conds = [a.name for a in headache.conditions]
        assert all(headache.value(1, a) == headache.value(5, a) for a in conds)
        assert headache.value(1, "class") != headache.value(5, "class")

    def test_documented_statistics(self, headache, headache_taxonomy):
        root, _ = headache_taxonomy
        rs = induce_rules(root, headache)
        stats = {r.conclusion: (r.accuracy, r.coverage) for r in rs}
        assert stats == {
            "m.c.h.": (Fraction(3, 4), 1),
            "common": (1, 1),
            "classic": (1, 1),
            "psycho": (Fraction(1, 4), Fraction(1, 2)),
            "i.m.l.": (None, 0),
        }
        assert any("i.m.l." in w for w in rs.warnings)

    def test_filter_at_experiment_thresholds(self, headache, headache_taxonomy):
        root, _ = headache_taxonomy
        kept = filter_probabilistic(induce_rules(root, headache), 0.75, 0.5)
        assert [r.conclusion for r in kept] == ["m.c.h.", "common", "classic"]
        assert (kept.delta_alpha, kept.delta_kappa) == (Fraction(3, 4), Fraction(1, 2))


class TestMergeSubrules:
    def test_root_of_worked_example(self, headache_taxonomy):
        root, _ = headache_taxonomy
        (f_left, tag_left), (f_right, tag_right) = merge_subrules(root)
        assert (f_left, tag_left) == (NEG_D8, "¬D8")
        assert (f_right, tag_right) == (parse_formula("[nat = per] ∧ [prod = 0]"), "D8")

    def test_group_with_leaf_children(self, headache_taxonomy):
        root, _ = headache_taxonomy
        d8 = next(n for n in root.nodes() if n.id == "D8")
        (neg, tag_neg), (pos, tag_pos) = merge_subrules(d8)
        assert (tag_neg, tag_pos) == ("¬psycho", "psycho")
        assert pos == parse_formula(
            "([loc = ocular]) ∧ [nat = per] ∧ ([his = per] ∨ [his = acute]) ∧ [prod = 0]")

    def test_leaf(self, headache_taxonomy):
        root, _ = headache_taxonomy
        leaf = next(n for n in root.nodes() if n.id == "classic")
        assert merge_subrules(leaf) is None


def _rule(acc, cov, label="x"):
    return Rule(TRUE, label, acc, cov, (), TRUE)


class TestFilter:
    RS = RuleSet((_rule(Fraction(9, 10), 1, "a"), _rule(1, Fraction(1, 2), "b"),
                  _rule(None, 0, "c")))

    def test_identity_at_zero(self):
        assert filter_probabilistic(self.RS, 0, 0).rules == self.RS.rules

    def test_strict_thresholds_remove(self):
        assert [r.conclusion for r in filter_probabilistic(self.RS, 1, 1)] == []
        assert [r.conclusion for r in filter_probabilistic(self.RS, 0.9, 1)] == ["a"]

    @pytest.mark.parametrize("da, dk", [(-0.1, 0), (0, 1.5)])
    def test_range(self, da, dk):
        with pytest.raises(ConfigError):
            filter_probabilistic(self.RS, da, dk)


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 2**32 - 1), st.booleans())
def test_rule_invariants(seed, single):
    t = random_table(random.Random(seed), min_classes=2)
    roots, _ = group(t, GroupingConfig(single_tree=single))
    rs = induce_rules(roots, t)
    assert [r.conclusion for r in rs] == list(t.classes)
    for r in rs:
        assert (r.accuracy, r.coverage) == scan_stats(r.condition, r.conclusion, t)
        assert meaning(r.condition, t) == r.extension
        joined = conj(*(s.formula for s in r.derivation))
        assert meaning(joined, t) == meaning(r.unsimplified, t) == r.extension


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 2**32 - 1),
       st.fractions(0, 1), st.fractions(0, 1), st.fractions(0, 1), st.fractions(0, 1))
def test_filter_idempotent_and_monotone(seed, a1, k1, a2, k2):
    t = random_table(random.Random(seed), min_classes=2)
    roots, _ = group(t, GroupingConfig(single_tree=True))
    rs = induce_rules(roots, t)
    once = filter_probabilistic(rs, a1, k1)
    assert filter_probabilistic(once, a1, k1).rules == once.rules
    for r in once:
        assert r.passes(a1, k1)
    assert {r.conclusion for r in rs if r.passes(a1, k1)} == {r.conclusion for r in once}
    hi = filter_probabilistic(rs, max(a1, a2), max(k1, k2))
    assert {r.conclusion for r in hi} <= {r.conclusion for r in once}
