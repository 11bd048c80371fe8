"""Combinatorial geometry carried alongside the construction.

Cells are pure paths: each component is assigned the child-position path of
the enclosing 3-cell, and two cells are disjoint exactly when neither path
is a prefix of the other.  Since all components of one stage carry paths of
equal length, same-stage disjointness reduces to distinctness.  Diameters
are dyadic: a component at stage k is bounded by 2^(-e) where e counts the
size-replacement steps on its branch.  No decay is modeled for the cells
themselves; the cells witness separation only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .construction import (
    CENTRAL_COPY,
    CHAIN_LENGTH,
    CHAIN_LINK,
    Component,
    StageSet,
    construction,
)
from .errors import InvariantError, StageParityError
from .genus_spec import GenusSpec

NO_DECAY_NOTE = "no cell-diameter decay modeled"


def assign_cells(
    stage: StageSet, prev_cells: Optional[dict[int, tuple[int, ...]]]
) -> dict[int, tuple[int, ...]]:
    """Derive the cell table of a stage from the previous stage's table.

    Children of the handle-splitting step inherit the parent cell; children
    of the size step refine it by their sibling ordinal (central copy first,
    then the links in emission order).  The result is checked for the two
    cell invariants: same-stage distinctness and parent-prefix nesting.
    """
    table: dict[int, tuple[int, ...]] = {}
    if stage.stage == 1:
        table[1] = ()
        return table
    assert prev_cells is not None
    for c in stage.components:
        parent_path = prev_cells[c.parent.index]
        if c.birth.kind == CENTRAL_COPY:
            table[c.id.index] = parent_path + (1,)
        elif c.birth.kind == CHAIN_LINK:
            ordinal = 1 + (c.birth.handle - 1) * CHAIN_LENGTH + c.birth.position
            table[c.id.index] = parent_path + (ordinal,)
        else:
            table[c.id.index] = parent_path
    paths = list(table.values())
    if len(set(paths)) != len(paths):
        raise InvariantError(f"stage {stage.stage} reuses a cell path")
    return table


def diameter_bound(c: Component) -> Fraction:
    """Dyadic diameter bound 2^(-e); the seed is normalized to 1."""
    return Fraction(1, 2**c.diam_exp)


@dataclass(frozen=True)
class LinkingLayout:
    """Chain layout of the size step applied to one even-stage component.

    Each of the parent's handles holds an open chain of six link slots;
    consecutive slots are linked, slots of distinct handles never are (the
    chains sit in disjoint cells of the ambient ball even though each chain
    is linked through its own handle).  Slots 1 and 6 attach to the central
    copy's feet for that handle.
    """

    handle_count: int
    chain_length: int = CHAIN_LENGTH
    attached_slots: tuple[int, int] = (1, CHAIN_LENGTH)

    @property
    def total_slots(self) -> int:
        return self.handle_count * self.chain_length

    def adjacency(self, handle: int) -> tuple[tuple[int, int], ...]:
        """Linked slot pairs within one handle's chain: a simple path."""
        if not 1 <= handle <= self.handle_count:
            raise IndexError(f"handle {handle} out of range 1..{self.handle_count}")
        return tuple((s, s + 1) for s in range(1, self.chain_length))

    def are_adjacent(self, handle_a: int, slot_a: int, handle_b: int, slot_b: int) -> bool:
        if handle_a != handle_b:
            return False
        return abs(slot_a - slot_b) == 1


def linking_layout(c: Component) -> LinkingLayout:
    """Layout of the children the size step will give this component."""
    if c.id.stage % 2 == 1:
        raise StageParityError(
            f"linking layout describes even-stage components, got stage {c.id.stage}"
        )
    return LinkingLayout(handle_count=c.genus)


@dataclass(frozen=True)
class TamenessRow:
    stage: int
    components: int
    cells: int
    refinement_depth: int  # length of every cell path at this stage
    diameter_exponent: int  # diameter bound is 2^(-this)
    refined: bool  # True when this stage deepened the cell paths


@dataclass(frozen=True)
class TamenessReport:
    rows: tuple[TamenessRow, ...]
    note: str = NO_DECAY_NOTE


def tameness_caveat(spec: GenusSpec, depth: int, budget: Optional[int] = None) -> TamenessReport:
    """Per-stage view of cell refinement against the diameter bound.

    Cells exist at every stage and refine exactly at the size-replacement
    stages; the report's fixed note records that no decay of the cell
    diameters themselves is modeled.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    engine = construction(spec, budget)
    rows = []
    for k in range(1, depth + 1):
        m = engine.m(k)
        e = (k - 1) // 2
        rows.append(
            TamenessRow(
                stage=k,
                components=m,
                cells=m,
                refinement_depth=e,
                diameter_exponent=e,
                refined=(k % 2 == 1 and k >= 3),
            )
        )
    return TamenessReport(rows=tuple(rows))
