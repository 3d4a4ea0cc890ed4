import random

import pytest
from hypothesis import given, settings, strategies as st

from oracles import random_table
from reference_values import D6, D7, D8, STEP2, STEP3, STEP4, MERGES, as_map
from roughtax.characterize import CharacterizationSet, Relation, ValueDisjunction, relation_type
from roughtax.errors import ConfigError, RoughTaxError
from roughtax.grouping import GroupingConfig, group, intersect_characterizations
from roughtax.table import parse_table


def matrix_map(m):
    return {pair: (cell.interval.lo, cell.interval.hi) for pair, cell in m.cells.items()}


def node(root, node_id):
    return next(n for n in root.nodes() if n.id == node_id)


class TestWorkedExample:
    def test_trace(self, headache_taxonomy):
        _, trace = headache_taxonomy
        got = [(m.left, m.right, (m.similarity.lo, m.similarity.hi), m.new_id)
               for m in trace.merges]
        assert got == MERGES

    def test_single_tree_join(self, headache_taxonomy):
        root, trace = headache_taxonomy
        assert [(j.left, j.right, j.new_id) for j in trace.joins] == [("D7", "D8", "D9")]
        assert root.id == "D9" and root.joined
        assert root.merge_similarity.lo == root.merge_similarity.hi == 0
        assert sorted(root.leaves()) == sorted(["m.c.h.", "common", "classic", "psycho", "i.m.l."])

    @pytest.mark.parametrize("step, expected", [(2, STEP2), (3, STEP3), (4, STEP4)])
    def test_matrices(self, headache_taxonomy, step, expected):
        _, trace = headache_taxonomy
        m = next(m for m in trace.matrices if m.step == step)
        got = {}
        for (l, r), v in matrix_map(m).items():
            key = (l, r) if (l, r) in expected else (r, l)
            got[key] = v
        assert got == expected

    @pytest.mark.parametrize("node_id, expected", [("D6", D6), ("D7", D7), ("D8", D8)])
    def test_group_characterizations(self, headache_taxonomy, node_id, expected):
        root, _ = headache_taxonomy
        char = node(root, node_id).characterization
        assert as_map(char) == expected
        assert char.label == node_id

    def test_forest_without_single_tree(self, headache):
        roots, trace = group(headache)
        assert [r.id for r in roots] == ["D8", "D7"]
        assert trace.joins == ()

    def test_high_threshold_blocks_every_merge(self, headache):
        roots, trace = group(headache, GroupingConfig(theta_g="4/5"))
        assert trace.merges == ()
        assert [r.id for r in roots] == list(headache.classes)

    def test_threshold_at_maximum_still_merges(self, headache):
        _, trace = group(headache, GroupingConfig(theta_g="3/4"))
        assert trace.merge_ids == ["D6"]


class TestTieBreak:
    def test_matching_step3_tie(self, headache):
        _, trace = group(headache, GroupingConfig(measure="matching"))
        step3 = next(m for m in trace.matrices if m.step == 3)
        assert step3.cell("m.c.h.", "i.m.l.").counts.a == 3
        assert step3.cell("D6", "i.m.l.").counts.a == 3
        assert (trace.merges[1].left, trace.merges[1].right) == ("m.c.h.", "i.m.l.")

    def test_name_tie_break(self, headache):
        _, trace = group(headache, GroupingConfig(measure="matching", tie_break="name"))
        assert (trace.merges[1].left, trace.merges[1].right) == ("D6", "i.m.l.")

    def test_unknown_tie_break(self):
        with pytest.raises(ConfigError):
            GroupingConfig(tie_break="random")


class TestSmallCases:
    def test_identical_classes_merge_at_one(self):
        t = parse_table("a,b,c\nx,p,k1\nx,p,k2\ny,q,k3\n", class_column="c")
        _, trace = group(t)
        first = trace.merges[0]
        assert (first.left, first.right) == ("k1", "k2")
        assert (first.similarity.lo, first.similarity.hi) == (1, 1)

    def test_needs_two_classes(self):
        t = parse_table("a,c\nx,k\ny,k\n", class_column="c")
        with pytest.raises(RoughTaxError):
            group(t)

    def test_label_collision(self):
        t = parse_table("a,c\nx,D3\ny,k\n", class_column="c")
        with pytest.raises(ConfigError):
            group(t)


class TestIntersect:
    def test_worked_example(self, headache):
        from roughtax.characterize import characterize
        d6 = intersect_characterizations(characterize(headache, "common"),
                                         characterize(headache, "classic"), "D6")
        assert as_map(d6) == D6
        d7 = intersect_characterizations(d6, characterize(headache, "i.m.l."), "D7")
        assert as_map(d7) == D7

    def test_disjoint(self):
        l1 = CharacterizationSet("p", (ValueDisjunction("a", ("1",)),))
        l2 = CharacterizationSet("q", (ValueDisjunction("a", ("2",)),))
        assert intersect_characterizations(l1, l2, "D3").elements == ()


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from(["interval", "matching", "ochiai", "jaccard"]),
       st.booleans())
def test_grouping_invariants(seed, kind, single):
    t = random_table(random.Random(seed), min_classes=2)
    n = len(t.classes)
    config = GroupingConfig(measure=kind, single_tree=single)
    roots, trace = group(t, config)
    again = group(t, config)
    assert again[1] == trace and again[0] == roots

    ids = trace.merge_ids + [j.new_id for j in trace.joins]
    assert ids == [f"D{i}" for i in range(n + 1, n + 1 + len(ids))]
    assert len(trace.merges) <= n - 1
    seen = set()
    live = set(t.classes)
    for rec in list(trace.merges) + list(trace.joins):
        assert rec.left in live and rec.right in live
        assert rec.left not in seen and rec.right not in seen
        seen |= {rec.left, rec.right}
        live -= {rec.left, rec.right}
        live.add(rec.new_id)
    if single:
        assert len(roots) == 1

    leaves = [leaf for r in roots for leaf in r.leaves()]
    assert sorted(leaves) == sorted(t.classes)
    for r in roots:
        for x in r.nodes():
            if x.is_leaf:
                continue
            left, right = x.children
            assert x.characterization.element_set == (
                left.characterization.element_set & right.characterization.element_set)
            if x.characterization.elements:
                assert relation_type(x.characterization, left.characterization) is Relation.SUBCATEGORY
                assert relation_type(x.characterization, right.characterization) is Relation.SUBCATEGORY
