"""Extension-preserving simplification of formulas over finite categorical domains.

Every descriptor and negated descriptor is first turned into a membership
literal ``a ∈ S`` (``¬[a = v]`` becomes ``a`` in the rest of the domain).  The
tree is then rewritten bottom-up:

* literals on the same attribute merge (intersection under ∧, union under ∨);
* inside a conjunction, its literals act as a context for the other
  conjuncts: a literal contradicted by the context is FALSE, one entailed
  by it is TRUE;
* constants are folded, duplicate operands dropped, and disjuncts absorbed
  by a weaker sibling literal removed.

The result is negation-free and equal in extension to the input on every
table whose attribute domains match ``schema``.
"""

from __future__ import annotations

from typing import Iterable

from .errors import EvaluationError
from .formula import FALSE, TRUE, And, Constant, Descriptor, Formula, Not, Or, conj, disj, to_nnf
from .table import AttributeSchema, DecisionTable

# Internal node shapes:
#   True / False
#   ("lit", attribute, frozenset(values))
#   ("and", (node, ...)) / ("or", (node, ...))


def simplify(f: Formula, schema) -> Formula:
    """Simplify ``f`` against the attribute domains in ``schema``.

    ``schema`` is a :class:`DecisionTable` or an iterable of
    :class:`AttributeSchema`.
    """
    domains = _domains(schema)
    node = _lift(to_nnf(f), domains)
    node = _simp(node, {}, domains)
    return _lower(node, domains)


def _domains(schema) -> dict:
    if isinstance(schema, DecisionTable):
        schema = schema.schema
    return {a.name: tuple(a.domain) for a in schema}


def _lift(f, domains):
    if isinstance(f, Constant):
        return f.value
    if isinstance(f, Descriptor):
        _check(f, domains)
        return ("lit", f.attribute, frozenset((f.value,)))
    if isinstance(f, Not):
        d = f.operand
        _check(d, domains)
        return ("lit", d.attribute, frozenset(domains[d.attribute]) - {d.value})
    kind = "and" if isinstance(f, And) else "or"
    return (kind, tuple(_lift(op, domains) for op in f.operands))


def _check(d: Descriptor, domains):
    if d.attribute not in domains:
        raise EvaluationError(f"unknown attribute {d.attribute!r}")
    if d.value not in domains[d.attribute]:
        raise EvaluationError(f"value {d.value!r} is not in the domain of {d.attribute!r}")


def _is_lit(node):
    return isinstance(node, tuple) and node[0] == "lit"


def _literal(attr, values, ctx, domains):
    """Normalise ``attr ∈ values`` under the constraints in ``ctx``."""
    allowed = ctx.get(attr, frozenset(domains[attr]))
    values = values & allowed
    if not values:
        return False
    if values == allowed:
        return True
    return ("lit", attr, values)


def _simp(node, ctx, domains):
    if isinstance(node, bool):
        return node
    if node[0] == "lit":
        return _literal(node[1], node[2], ctx, domains)
    if node[0] == "or":
        return _simp_or(node[1], ctx, domains)
    return _simp_and(node[1], ctx, domains)


def _flatten(kind, items):
    for item in items:
        if isinstance(item, tuple) and item[0] == kind:
            yield from _flatten(kind, item[1])
        else:
            yield item


def _simp_and(items, ctx, domains):
    items = list(_flatten("and", items))
    while True:
        local = dict(ctx)
        for item in items:
            if _is_lit(item):
                _, attr, values = item
                local[attr] = local.get(attr, frozenset(domains[attr])) & values
                if not local[attr]:
                    return False
        out, seen, lit_slot = [], set(), {}
        for item in items:
            if item is True:
                continue
            if item is False:
                return False
            if _is_lit(item):
                attr = item[1]
                if attr in lit_slot:
                    continue
                lit = _literal(attr, local[attr], ctx, domains)
                if lit is False:
                    return False
                if lit is True:
                    lit_slot[attr] = None
                    continue
                lit_slot[attr] = len(out)
                out.append(lit)
                continue
            simplified = _simp(item, local, domains)
            if simplified is False:
                return False
            for part in _flatten("and", (simplified,)):
                if part is True or part in seen:
                    continue
                seen.add(part)
                out.append(part)
        if out == items:
            break
        items = out
    if not items:
        return True
    if len(items) == 1:
        return items[0]
    return ("and", tuple(items))


def _simp_or(items, ctx, domains):
    out, lit_slot, seen = [], {}, set()
    for item in _flatten("or", items):
        simplified = _simp(item, ctx, domains)
        if simplified is True:
            return True
        if simplified is False:
            continue
        for part in _flatten("or", (simplified,)):
            if _is_lit(part):
                _, attr, values = part
                if attr in lit_slot:
                    i = lit_slot[attr]
                    merged = _literal(attr, out[i][2] | values, ctx, domains)
                    if merged is True:
                        return True
                    out[i] = merged
                else:
                    lit_slot[attr] = len(out)
                    out.append(part)
            elif part not in seen:
                seen.add(part)
                out.append(part)
    # a conjunctive disjunct implying a sibling literal adds nothing
    lits = {node[1]: node[2] for node in out if _is_lit(node)}
    kept = [node for node in out if not _absorbed(node, lits)]
    if not kept:
        return False
    if len(kept) == 1:
        return kept[0]
    return ("or", tuple(kept))


def _absorbed(node, lits) -> bool:
    if not (isinstance(node, tuple) and node[0] == "and"):
        return False
    return any(_is_lit(part) and part[1] in lits and part[2] <= lits[part[1]]
               for part in node[1])


def _lower(node, domains) -> Formula:
    if node is True:
        return TRUE
    if node is False:
        return FALSE
    if node[0] == "lit":
        _, attr, values = node
        return disj(*(Descriptor(attr, v) for v in domains[attr] if v in values))
    if node[0] == "and":
        return conj(*(_lower(n, domains) for n in node[1]))
    parts = []
    for n in node[1]:
        low = _lower(n, domains)
        parts.extend(low.operands if isinstance(low, Or) else (low,))
    return disj(*parts)


def literal_count(f: Formula) -> int:
    """Number of descriptor occurrences; a rough size measure for rules."""
    if isinstance(f, Descriptor):
        return 1
    if isinstance(f, Constant):
        return 0
    if isinstance(f, Not):
        return literal_count(f.operand)
    return sum(literal_count(op) for op in f.operands)


def schema_of(attributes: Iterable[tuple]) -> tuple:
    """Convenience: ``[(name, domain), ...]`` to AttributeSchema tuples (decision-free)."""
    return tuple(AttributeSchema(name, tuple(dom)) for name, dom in attributes)
