"""JSON, text and DOT renderings of pipeline artifacts.

Ratios are written as reduced rational strings (``"3/7"``) with a decimal
convenience field next to them.  Documents contain no timestamps and keep a
fixed key order so that repeated runs are byte-identical.
"""

from __future__ import annotations

import json
from fractions import Fraction

from .characterize import CharacterizationSet, ValueDisjunction, as_ratio
from .formula import formula_to_json
from .grouping import GroupingTrace, SimilarityMatrix, TaxonomyNode
from .induction import RuleSet
from .similarity import IntervalSimilarity, Measure


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


def ratio(x):
    """``Fraction(3, 6)`` -> ``"1/2"``; None stays None."""
    if x is None:
        return None
    return str(Fraction(x))


def _decimal(x):
    return None if x is None else float(x)


def interval_json(iv: IntervalSimilarity) -> dict:
    return {"lo": ratio(iv.lo), "hi": ratio(iv.hi),
            "lo_decimal": float(iv.lo), "hi_decimal": float(iv.hi)}


def interval_from_json(doc) -> IntervalSimilarity:
    return IntervalSimilarity(Fraction(doc["lo"]), Fraction(doc["hi"]))


def value_json(v) -> dict:
    """A measure value: exact when rational, decimal only when irrational."""
    if v is None:
        return {"value": None, "decimal": None}
    if isinstance(v, IntervalSimilarity):
        return interval_json(v)
    if isinstance(v, Fraction):
        return {"value": ratio(v), "decimal": float(v)}
    return {"value": repr(float(v)), "decimal": float(v)}


def element_json(e: ValueDisjunction) -> dict:
    return {"attribute": e.attribute, "values": list(e.values)}


def characterization_json(cs: CharacterizationSet) -> dict:
    return {
        "class": cs.label,
        "kappa_threshold": ratio(cs.kappa_threshold),
        "size": len(cs),
        "elements": [element_json(e) for e in cs.elements],
        "text": str(cs),
    }


def characterizations_doc(sets, delta_kappa) -> dict:
    return {"delta_kappa": ratio(as_ratio(delta_kappa)),
            "classes": [characterization_json(cs) for cs in sets]}


def matrix_json(m: SimilarityMatrix) -> dict:
    """Upper-triangular matrix keyed ``cells[left][right]`` in live-group order."""
    cells = {}
    for i, left in enumerate(m.ids):
        row = {}
        for right in m.ids[i + 1:]:
            cell = m.cell(left, right)
            cc = cell.counts
            entry = {"a": cc.a, "b": cc.b, "c": cc.c, "d": cc.d}
            if m.measure is Measure.INTERVAL:
                entry.update(interval_json(cell.interval))
            else:
                entry.update(value_json(cell.value))
            row[right] = entry
        if row:
            cells[left] = row
    return {"step": m.step, "measure": m.measure.value, "ids": list(m.ids), "cells": cells}


def node_json(node: TaxonomyNode) -> dict:
    return {
        "id": node.id,
        "leaf": node.is_leaf,
        "joined": node.joined,
        "elements": [element_json(e) for e in node.characterization.elements],
        "merge_similarity": None if node.merge_similarity is None
        else interval_json(node.merge_similarity),
        "children": [node_json(c) for c in node.children],
    }


def taxonomy_json(roots, delta_kappa) -> dict:
    return {"delta_kappa": ratio(as_ratio(delta_kappa)), "roots": [node_json(r) for r in roots]}


def node_from_json(doc, kappa=Fraction(1)) -> TaxonomyNode:
    elements = tuple(ValueDisjunction(e["attribute"], tuple(e["values"])) for e in doc["elements"])
    sim = doc.get("merge_similarity")
    return TaxonomyNode(
        doc["id"],
        CharacterizationSet(doc["id"], elements, kappa),
        tuple(node_from_json(c, kappa) for c in doc.get("children", ())),
        None if sim is None else interval_from_json(sim),
        bool(doc.get("joined", False)),
    )


def taxonomy_from_json(doc) -> list:
    kappa = Fraction(doc.get("delta_kappa", "1"))
    return [node_from_json(r, kappa) for r in doc["roots"]]


def trace_json(trace: GroupingTrace) -> dict:
    merges = []
    for m in trace.merges:
        rec = {"left": m.left, "right": m.right, "new_id": m.new_id,
               "similarity": interval_json(m.similarity)}
        if m.score is not None and not isinstance(m.score, IntervalSimilarity):
            rec["score"] = value_json(m.score)
        merges.append(rec)
    joins = [{"left": j.left, "right": j.right, "new_id": j.new_id} for j in trace.joins]
    return {"merges": merges, "joins": joins}


def rules_doc(rules: RuleSet, retained: RuleSet, tree_subrules=()) -> dict:
    kept = {r.conclusion for r in retained.rules}
    out = []
    for r in rules.rules:
        out.append({
            "class": r.conclusion,
            "retained": r.conclusion in kept,
            "condition": formula_to_json(r.condition),
            "condition_text": str(r.condition),
            "unsimplified": formula_to_json(r.unsimplified),
            "unsimplified_text": str(r.unsimplified),
            "accuracy": ratio(r.accuracy),
            "accuracy_decimal": _decimal(r.accuracy),
            "coverage": ratio(r.coverage),
            "coverage_decimal": float(r.coverage),
            "extension": sorted(r.extension),
            "degenerate": r.degenerate,
            "derivation": [
                {"level": s.level, "sibling": s.sibling, "kind": s.kind,
                 "formula": formula_to_json(s.formula), "text": str(s.formula)}
                for s in r.derivation
            ],
        })
    return {
        "delta_alpha": ratio(retained.delta_alpha),
        "delta_kappa": ratio(retained.delta_kappa),
        "rules": out,
        "group_subrules": list(tree_subrules),
        "warnings": list(rules.warnings),
    }


def rules_text(rules: RuleSet, retained: RuleSet) -> str:
    kept = {r.conclusion for r in retained.rules}
    lines = [f"# thresholds: accuracy >= {retained.delta_alpha}, coverage >= {retained.delta_kappa}"]
    for r in rules.rules:
        acc = "undefined" if r.accuracy is None else str(r.accuracy)
        mark = "" if r.conclusion in kept else "  [filtered]"
        lines.append(f"{r.condition} → {r.conclusion}  (accuracy {acc}, coverage {r.coverage}){mark}")
        for s in r.derivation:
            lines.append(f"    {s.level} vs {s.sibling} [{s.kind}]: {s.formula}")
    for w in rules.warnings:
        lines.append(f"# warning: {w}")
    return "\n".join(lines) + "\n"


def taxonomy_dot(roots) -> str:
    """Dendrogram as a bottom-up DOT digraph; edges carry the merge interval."""
    lines = ["digraph taxonomy {", "  rankdir=BT;", "  node [shape=box];"]
    for root in roots:
        for node in root.nodes():
            shape = "ellipse" if node.is_leaf else "box"
            lines.append(f'  "{_q(node.id)}" [shape={shape}];')
    for root in roots:
        for node in root.nodes():
            for child in node.children:
                label = str(node.merge_similarity)
                style = ", style=dashed" if node.joined else ""
                lines.append(f'  "{_q(child.id)}" -> "{_q(node.id)}" [label="{label}"{style}];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def _q(text: str) -> str:
    return text.replace("\\", "\\\\").replace('"', '\\"')
