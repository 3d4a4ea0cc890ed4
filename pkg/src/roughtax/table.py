"""Decision tables and the statistics evaluated on them.

A :class:`DecisionTable` holds a finite universe of cases, each assigning one
categorical value to every condition attribute and to the single decision
attribute.  Values are opaque tokens: ``"0"`` and ``"1"`` are labels, not
numbers.  Attribute domains are the values observed in the table, in order
of first appearance.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .errors import (
    EmptyTableError,
    EvaluationError,
    SchemaError,
    TableParseError,
    UndefinedAccuracyError,
    UnknownClassError,
)
from .formula import And, Constant, Descriptor, Formula, Not, Or

ID_COLUMN = "id"


@dataclass(frozen=True)
class AttributeSchema:
    name: str
    domain: tuple
    is_decision: bool = False

    def __post_init__(self):
        if not self.domain:
            raise SchemaError(f"attribute {self.name!r} has an empty domain")
        if len(set(self.domain)) != len(self.domain):
            raise SchemaError(f"attribute {self.name!r} has duplicate domain values")


@dataclass(frozen=True)
class DecisionTable:
    """An immutable decision table ``(U, A ∪ {d})``.

    ``rows`` is a tuple of ``(case_id, values)`` where ``values`` lines up with
    ``schema``.
    """

    schema: tuple
    rows: tuple
    _index: dict = field(init=False, repr=False, compare=False)
    _columns: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        names = [a.name for a in self.schema]
        if len(set(names)) != len(names):
            raise SchemaError("duplicate attribute names")
        decisions = [a for a in self.schema if a.is_decision]
        if len(decisions) != 1:
            raise SchemaError(f"expected exactly one decision attribute, found {len(decisions)}")
        if len(self.schema) < 2:
            raise SchemaError("a decision table needs at least one condition attribute")
        if not self.rows:
            raise EmptyTableError("decision table has no cases")
        ids = [cid for cid, _ in self.rows]
        if len(set(ids)) != len(ids):
            raise SchemaError("case ids are not unique")
        for cid, values in self.rows:
            if len(values) != len(self.schema):
                raise SchemaError(f"case {cid} has {len(values)} values, expected {len(self.schema)}")
            for attr, v in zip(self.schema, values):
                if v not in attr.domain:
                    raise SchemaError(f"case {cid}: {v!r} not in domain of {attr.name!r}")
        object.__setattr__(self, "_index", {a.name: i for i, a in enumerate(self.schema)})
        columns = {}
        for i, a in enumerate(self.schema):
            col = {}
            for cid, values in self.rows:
                col.setdefault(values[i], set()).add(cid)
            columns[a.name] = {v: frozenset(s) for v, s in col.items()}
        object.__setattr__(self, "_columns", columns)

    @classmethod
    def from_rows(cls, header: Sequence[str], rows: Iterable[Sequence[str]],
                  class_column: Optional[str] = None, ids: Optional[Sequence] = None):
        """Build a table from raw value rows, inferring observed domains."""
        header = list(header)
        rows = [tuple(r) for r in rows]
        if len(set(header)) != len(header):
            dup = sorted({h for h in header if header.count(h) > 1})
            raise SchemaError(f"duplicate attribute names: {', '.join(dup)}")
        if not rows:
            raise EmptyTableError("decision table has no cases")
        class_column = header[-1] if class_column is None else class_column
        if class_column not in header:
            raise SchemaError(f"class column {class_column!r} not in header")
        domains = [dict() for _ in header]
        for r in rows:
            for dom, v in zip(domains, r):
                dom.setdefault(v, None)
        schema = tuple(
            AttributeSchema(name, tuple(dom), name == class_column)
            for name, dom in zip(header, domains)
        )
        ids = list(range(1, len(rows) + 1)) if ids is None else list(ids)
        return cls(schema, tuple(zip(ids, rows)))

    # -- schema access ---------------------------------------------------------

    @property
    def decision(self) -> AttributeSchema:
        return next(a for a in self.schema if a.is_decision)

    @property
    def conditions(self) -> tuple:
        return tuple(a for a in self.schema if not a.is_decision)

    @property
    def classes(self) -> tuple:
        return self.decision.domain

    @property
    def case_ids(self) -> frozenset:
        return frozenset(cid for cid, _ in self.rows)

    def attribute(self, name: str) -> AttributeSchema:
        try:
            return self.schema[self._index[name]]
        except KeyError:
            raise EvaluationError(f"unknown attribute {name!r}") from None

    def value(self, case_id, name: str) -> str:
        i = self._index[name]
        for cid, values in self.rows:
            if cid == case_id:
                return values[i]
        raise KeyError(case_id)

    def cases_with(self, name: str, value: str) -> frozenset:
        """Extension of the descriptor ``[name = value]``."""
        dom = self.attribute(name).domain
        if value not in dom:
            raise EvaluationError(f"value {value!r} is not in the domain of {name!r}")
        return self._columns[name].get(value, frozenset())

    def class_cases(self, label: str) -> frozenset:
        if label not in self.decision.domain:
            raise UnknownClassError(f"unknown class {label!r}")
        return self._columns[self.decision.name][label]


def parse_table(source: str, class_column: Optional[str] = None,
                id_column: Optional[str] = ID_COLUMN) -> DecisionTable:
    """Parse CSV text into a :class:`DecisionTable`.

    The class column defaults to the last non-id column.  When a column named
    ``id_column`` is present its values become the case ids (integers when they
    all look like integers); otherwise cases are numbered 1, 2, ... in row order.
    """
    reader = csv.reader(io.StringIO(source))
    lines = [(n, [c.strip() for c in r]) for n, r in enumerate(reader, start=1)
             if any(c.strip() for c in r)]
    if not lines:
        raise EmptyTableError("no header row")
    _, header = lines[0]
    body = lines[1:]
    if not body:
        raise EmptyTableError("table has a header but no cases")
    if len(set(header)) != len(header):
        dup = sorted({h for h in header if header.count(h) > 1})
        raise SchemaError(f"duplicate attribute names: {', '.join(dup)}")
    for n, r in body:
        if len(r) != len(header):
            raise TableParseError(f"expected {len(header)} fields, got {len(r)}", row=n)
    values = [r for _, r in body]
    ids = None
    if id_column is not None and id_column in header:
        k = header.index(id_column)
        raw = [r[k] for r in values]
        ids = [int(x) for x in raw] if all(_is_int(x) for x in raw) else raw
        header = header[:k] + header[k + 1:]
        values = [r[:k] + r[k + 1:] for r in values]
    return DecisionTable.from_rows(header, values, class_column=class_column, ids=ids)


def _is_int(text: str) -> bool:
    try:
        int(text)
    except ValueError:
        return False
    return True


def meaning(f: Formula, t: DecisionTable) -> frozenset:
    """The extension ``f_A``: ids of all cases satisfying ``f``."""
    if isinstance(f, Descriptor):
        return t.cases_with(f.attribute, f.value)
    if isinstance(f, Constant):
        return t.case_ids if f.value else frozenset()
    if isinstance(f, Not):
        return t.case_ids - meaning(f.operand, t)
    if isinstance(f, And):
        out = t.case_ids
        for op in f.operands:
            out = out & meaning(op, t)
        return out
    if isinstance(f, Or):
        out = frozenset()
        for op in f.operands:
            out = out | meaning(op, t)
        return out
    raise EvaluationError(f"not a formula: {f!r}")


def accuracy(f: Formula, label: str, t: DecisionTable) -> Fraction:
    """``|f_A ∩ D| / |f_A|``; raises :class:`UndefinedAccuracyError` on empty support."""
    target = t.class_cases(label)
    ext = meaning(f, t)
    if not ext:
        raise UndefinedAccuracyError(f"accuracy of {f} is undefined: empty extension")
    return Fraction(len(ext & target), len(ext))


def coverage(f: Formula, label: str, t: DecisionTable) -> Fraction:
    """``|f_A ∩ D| / |D|``."""
    target = t.class_cases(label)
    return Fraction(len(meaning(f, t) & target), len(target))
