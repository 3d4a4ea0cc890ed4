"""Boolean formulas over ``[attribute = value]`` descriptors.

Formulas are immutable trees built from :class:`Descriptor` leaves, the
connectives :class:`Not`, :class:`And`, :class:`Or` and the constants
:data:`TRUE` / :data:`FALSE`.  Text rendering uses the usual logical
symbols; :func:`parse_formula` accepts both those symbols and an ASCII
spelling (``&``, ``|``, ``~``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import StructureError


@dataclass(frozen=True)
class Descriptor:
    """The atomic proposition ``[attribute = value]``."""

    attribute: str
    value: str

    def __str__(self):
        return f"[{self.attribute} = {self.value}]"


@dataclass(frozen=True)
class Constant:
    value: bool

    def __str__(self):
        return "TRUE" if self.value else "FALSE"


@dataclass(frozen=True)
class Not:
    operand: "Formula"

    def __str__(self):
        inner = self.operand
        if isinstance(inner, (Descriptor, Constant, Not)):
            return f"¬{inner}"
        return f"¬({inner})"


@dataclass(frozen=True)
class And:
    operands: tuple

    def __str__(self):
        return " ∧ ".join(_wrap(op) for op in self.operands)


@dataclass(frozen=True)
class Or:
    operands: tuple

    def __str__(self):
        return " ∨ ".join(_wrap(op) for op in self.operands)


Formula = Union[Descriptor, Constant, Not, And, Or]

TRUE = Constant(True)
FALSE = Constant(False)


def _wrap(op):
    if isinstance(op, (And, Or)) and len(op.operands) > 1:
        return f"({op})"
    return str(op)


def conj(*formulas: Formula) -> Formula:
    """Conjunction of ``formulas``; the empty conjunction is TRUE."""
    if not formulas:
        return TRUE
    if len(formulas) == 1:
        return formulas[0]
    return And(tuple(formulas))


def disj(*formulas: Formula) -> Formula:
    """Disjunction of ``formulas``; the empty disjunction is FALSE."""
    if not formulas:
        return FALSE
    if len(formulas) == 1:
        return formulas[0]
    return Or(tuple(formulas))


def descriptors(f: Formula) -> Iterator[Descriptor]:
    """Yield every descriptor leaf of ``f`` in left-to-right order."""
    if isinstance(f, Descriptor):
        yield f
    elif isinstance(f, Not):
        yield from descriptors(f.operand)
    elif isinstance(f, (And, Or)):
        for op in f.operands:
            yield from descriptors(op)


def to_nnf(f: Formula) -> Formula:
    """Push negations down to descriptors (De Morgan, double negation)."""
    return _nnf(f, negate=False)


def _nnf(f, negate):
    if isinstance(f, Constant):
        return Constant(f.value != negate)
    if isinstance(f, Descriptor):
        return Not(f) if negate else f
    if isinstance(f, Not):
        return _nnf(f.operand, not negate)
    ops = tuple(_nnf(op, negate) for op in f.operands)
    if isinstance(f, And):
        return Or(ops) if negate else And(ops)
    return And(ops) if negate else Or(ops)


def is_nnf(f: Formula) -> bool:
    if isinstance(f, (Descriptor, Constant)):
        return True
    if isinstance(f, Not):
        return isinstance(f.operand, Descriptor)
    return all(is_nnf(op) for op in f.operands)


def attribute_value_pairs(f: Formula) -> frozenset:
    """The set ``A(f)`` of ``(attribute, value)`` pairs of a conjunctive formula.

    ``f`` must be a descriptor, a disjunction of descriptors, or a conjunction
    whose operands are of those two kinds.  Anything else raises
    :class:`StructureError`.
    """
    if isinstance(f, Constant) and f.value:
        return frozenset()
    parts = f.operands if isinstance(f, And) else (f,)
    pairs = set()
    for part in parts:
        if isinstance(part, Descriptor):
            pairs.add((part.attribute, part.value))
        elif isinstance(part, Or) and all(isinstance(op, Descriptor) for op in part.operands):
            pairs.update((op.attribute, op.value) for op in part.operands)
        else:
            raise StructureError(f"not a conjunction of descriptor disjunctions: {f}")
    return frozenset(pairs)


def attr_subset(r1: Formula, r2: Formula) -> bool:
    """The partial order ``r1 ⪯ r2``: every attribute-value pair of r1 occurs in r2."""
    return attribute_value_pairs(r1) <= attribute_value_pairs(r2)


# -- JSON ---------------------------------------------------------------------

def formula_to_json(f: Formula) -> dict:
    if isinstance(f, Constant):
        return {"op": "true" if f.value else "false"}
    if isinstance(f, Descriptor):
        return {"op": "eq", "attribute": f.attribute, "value": f.value}
    if isinstance(f, Not):
        return {"op": "not", "arg": formula_to_json(f.operand)}
    name = "and" if isinstance(f, And) else "or"
    return {"op": name, "args": [formula_to_json(op) for op in f.operands]}


def formula_from_json(doc: dict) -> Formula:
    op = doc.get("op")
    if op == "true":
        return TRUE
    if op == "false":
        return FALSE
    if op == "eq":
        return Descriptor(str(doc["attribute"]), str(doc["value"]))
    if op == "not":
        return Not(formula_from_json(doc["arg"]))
    if op == "and":
        return And(tuple(formula_from_json(a) for a in doc["args"]))
    if op == "or":
        return Or(tuple(formula_from_json(a) for a in doc["args"]))
    raise StructureError(f"unknown formula node {op!r}")


# -- text parser ----------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<desc>\[[^\]]*\])|(?P<op>[∧∨¬&|~!()])|(?P<word>TRUE|FALSE|true|false))"
)


def _tokens(text: str) -> list:
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise StructureError(f"cannot parse formula at offset {pos}: {text[pos:pos + 20]!r}")
        pos = m.end()
        if m.group("desc"):
            body = m.group("desc")[1:-1]
            if "=" not in body:
                raise StructureError(f"descriptor without '=': [{body}]")
            attr, value = body.split("=", 1)
            out.append(Descriptor(attr.strip(), value.strip()))
        elif m.group("word"):
            out.append(TRUE if m.group("word").lower() == "true" else FALSE)
        else:
            out.append({"&": "∧", "|": "∨", "~": "¬", "!": "¬"}.get(m.group("op"), m.group("op")))
    return out


def parse_formula(text: str) -> Formula:
    """Parse ``[a = v] ∧ ¬([b = w] ∨ [c = x])`` style text.

    Negation binds tightest, then conjunction, then disjunction.
    """
    toks = _tokens(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else None

    def take():
        nonlocal pos
        pos += 1
        return toks[pos - 1]

    def parse_or():
        items = [parse_and()]
        while peek() == "∨":
            take()
            items.append(parse_and())
        return disj(*items)

    def parse_and():
        items = [parse_unary()]
        while peek() == "∧":
            take()
            items.append(parse_unary())
        return conj(*items)

    def parse_unary():
        tok = peek()
        if tok == "¬":
            take()
            return Not(parse_unary())
        if tok == "(":
            take()
            inner = parse_or()
            if peek() != ")":
                raise StructureError("unbalanced parentheses")
            take()
            return inner
        if isinstance(tok, (Descriptor, Constant)):
            return take()
        raise StructureError(f"unexpected token {tok!r}")

    if not toks:
        raise StructureError("empty formula")
    result = parse_or()
    if pos != len(toks):
        raise StructureError(f"trailing tokens in formula: {toks[pos:]!r}")
    return result


def walk(f: Formula) -> Iterable[Formula]:
    yield f
    if isinstance(f, Not):
        yield from walk(f.operand)
    elif isinstance(f, (And, Or)):
        for op in f.operands:
            yield from walk(op)
