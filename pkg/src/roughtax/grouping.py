"""Agglomerative construction of the diagnostic taxonomy.

Classes start as leaves.  Each iteration scores every pair of live groups,
merges the single best pair into a new group ``D<k>`` characterized by the
intersection of the two element sets, and stops once no pair shares an
element (or clears the grouping threshold).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Optional

from .characterize import CharacterizationSet, as_ratio, characterize, element_universe
from .errors import ConfigError, RoughTaxError
from .similarity import (
    ContingencyCounts,
    IntervalSimilarity,
    Measure,
    ZERO_INTERVAL,
    contingency,
    interval_from_counts,
    measure,
)
from .table import DecisionTable

TIE_BREAKS = ("order", "name")


@dataclass(frozen=True)
class GroupingConfig:
    """Knobs for :func:`group`.

    ``theta_g`` bounds the representative similarity of a merge: the upper
    (Simpson) end of the interval, or the raw value of a single-valued measure.
    Ties between equally similar pairs go to the pair that comes first in live
    order (``"order"``: leaves in class order, a merged group takes the slot of
    its first member) or by id strings (``"name"``).
    """

    delta_kappa: Fraction = Fraction(1)
    theta_g: Fraction = Fraction(0)
    measure: Measure = Measure.INTERVAL
    single_tree: bool = False
    tie_break: str = "order"
    prefix: str = "D"

    def __post_init__(self):
        object.__setattr__(self, "delta_kappa", as_ratio(self.delta_kappa))
        object.__setattr__(self, "theta_g", as_ratio(self.theta_g))
        object.__setattr__(self, "measure", Measure.parse(self.measure))
        if not 0 < self.delta_kappa <= 1:
            raise ConfigError(f"delta_kappa must lie in (0, 1], got {self.delta_kappa}")
        if self.tie_break not in TIE_BREAKS:
            raise ConfigError(f"tie_break must be one of {TIE_BREAKS}, got {self.tie_break!r}")


@dataclass(frozen=True)
class TaxonomyNode:
    id: str
    characterization: CharacterizationSet
    children: tuple = ()
    merge_similarity: Optional[IntervalSimilarity] = None
    joined: bool = False

    @property
    def is_leaf(self) -> bool:
        return not self.children

    def nodes(self) -> Iterator["TaxonomyNode"]:
        """Pre-order traversal."""
        yield self
        for child in self.children:
            yield from child.nodes()

    def leaves(self) -> list:
        return [n.id for n in self.nodes() if n.is_leaf]

    def path_to(self, node_id: str) -> Optional[list]:
        """Nodes from this root down to ``node_id`` inclusive, or None."""
        if self.id == node_id:
            return [self]
        for child in self.children:
            sub = child.path_to(node_id)
            if sub is not None:
                return [self] + sub
        return None


@dataclass(frozen=True)
class MergeRecord:
    left: str
    right: str
    similarity: IntervalSimilarity
    new_id: str
    score: object = None


@dataclass(frozen=True)
class JoinRecord:
    left: str
    right: str
    new_id: str


@dataclass(frozen=True)
class MatrixCell:
    counts: ContingencyCounts
    interval: IntervalSimilarity
    value: object  # None when the measure is undefined for this pair


@dataclass(frozen=True)
class SimilarityMatrix:
    """Pairwise similarities among live groups before one merge decision."""

    step: int
    measure: Measure
    ids: tuple
    cells: dict = field(compare=False)

    def cell(self, left: str, right: str) -> MatrixCell:
        if (left, right) in self.cells:
            return self.cells[(left, right)]
        c = self.cells[(right, left)]
        return MatrixCell(c.counts.transposed(), c.interval, c.value)


@dataclass(frozen=True)
class GroupingTrace:
    merges: tuple
    joins: tuple = ()
    matrices: tuple = ()

    @property
    def merge_ids(self) -> list:
        return [m.new_id for m in self.merges]


def intersect_characterizations(l1: CharacterizationSet, l2: CharacterizationSet,
                                label: str = "") -> CharacterizationSet:
    """Characterization of the group formed by ``l1`` and ``l2``: their shared elements."""
    shared = l2.element_set
    return CharacterizationSet(label, tuple(e for e in l1.elements if e in shared),
                               l1.kappa_threshold)


def score_pair(l1: CharacterizationSet, l2: CharacterizationSet, kind: Measure,
               universe) -> MatrixCell:
    cc = contingency(l1, l2, universe)
    if cc.a == 0 or not l1.elements or not l2.elements:
        iv = ZERO_INTERVAL
    else:
        iv = interval_from_counts(cc)
    if kind is Measure.INTERVAL:
        value = iv if l1.elements and l2.elements else None
    else:
        try:
            value = measure(cc, kind)
        except ZeroDivisionError:
            value = None
    return MatrixCell(cc, iv, value)


def _representative(cell: MatrixCell, kind: Measure):
    return cell.value.hi if kind is Measure.INTERVAL else cell.value


def _rank_key(cell: MatrixCell, kind: Measure) -> tuple:
    # square-root measures are ranked through exact squares so float noise cannot split ties
    if kind is Measure.INTERVAL:
        return cell.value.key
    cc = cell.counts
    if kind is Measure.OCHIAI:
        return (Fraction(cc.a * cc.a, (cc.a + cc.b) * (cc.a + cc.c)),)
    if kind is Measure.POINT_CORRELATION:
        num = cc.a * cc.d - cc.b * cc.c
        m = (cc.a + cc.b) * (cc.b + cc.c) * (cc.c + cc.d) * (cc.d + cc.a)
        return (Fraction(num * abs(num), m),)
    return (cell.value,)


def group(t: DecisionTable, config: Optional[GroupingConfig] = None):
    """Build the taxonomy forest for ``t``.

    Returns ``(roots, trace)``.  With ``config.single_tree`` the remaining roots
    are joined two at a time under zero-similarity nodes, giving one root.
    """
    config = config or GroupingConfig()
    if len(t.classes) < 2:
        raise RoughTaxError(f"grouping needs at least two classes, found {len(t.classes)}")
    kind = config.measure
    leaves = [TaxonomyNode(c, characterize(t, c, config.delta_kappa)) for c in t.classes]
    universe = element_universe(n.characterization for n in leaves)
    n = len(leaves)
    taken = {node.id for node in leaves}
    for i in range(n + 1, 2 * n):
        if f"{config.prefix}{i}" in taken:
            raise ConfigError(f"class label {config.prefix}{i} collides with synthetic group ids")

    live = list(leaves)
    created = {node.id: i for i, node in enumerate(leaves)}
    merges, matrices = [], []
    k = n
    step = 2
    while len(live) >= 2:
        cells = {}
        for i in range(len(live)):
            for j in range(i + 1, len(live)):
                cells[(live[i].id, live[j].id)] = score_pair(
                    live[i].characterization, live[j].characterization, kind, universe)
        matrices.append(SimilarityMatrix(step, kind, tuple(x.id for x in live), cells))

        position = {x.id: i for i, x in enumerate(live)}
        best = None
        for (left, right), cell in cells.items():
            if cell.counts.a < 1 or cell.value is None:
                continue
            if _representative(cell, kind) < config.theta_g:
                continue
            if config.tie_break == "order":
                tie = (position[left], position[right])
            else:
                tie = (left, right)
            rank = _rank_key(cell, kind)
            if best is None or _better(rank, tie, best[0], best[1]):
                best = (rank, tie, left, right, cell)
        if best is None:
            break
        _, _, left, right, cell = best
        k += 1
        new_id = f"{config.prefix}{k}"
        a, b = live[position[left]], live[position[right]]
        node = TaxonomyNode(
            new_id,
            intersect_characterizations(a.characterization, b.characterization, new_id),
            (a, b),
            cell.interval,
        )
        merges.append(MergeRecord(left, right, cell.interval, new_id, cell.value))
        created[new_id] = len(created)
        live[position[left]] = node
        del live[position[right]]
        step += 1

    joins = []
    if config.single_tree:
        live.sort(key=lambda x: created[x.id])
        while len(live) >= 2:
            a, b = live[0], live[1]
            k += 1
            new_id = f"{config.prefix}{k}"
            node = TaxonomyNode(
                new_id,
                intersect_characterizations(a.characterization, b.characterization, new_id),
                (a, b),
                ZERO_INTERVAL,
                joined=True,
            )
            joins.append(JoinRecord(a.id, b.id, new_id))
            live[:2] = [node]
    return live, GroupingTrace(tuple(merges), tuple(joins), tuple(matrices))


def _better(rank, tie, best_rank, best_tie) -> bool:
    """Higher similarity wins; among equals the smaller tie key wins."""
    if rank != best_rank:
        return rank > best_rank
    return tie < best_tie
