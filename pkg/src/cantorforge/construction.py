"""The inductive stage construction.

Stage 1 seeds a single unknotted genus-2 handlebody.  From an odd stage the
next (even) stage applies the handle-splitting step to every component:
genus grows by one while below the label's assigned term, otherwise the
component merely shrinks.  From an even stage the next (odd) stage applies
the size step: every component is replaced by a smaller central copy that
keeps its index, plus an open chain of six genus-2 links per handle; links
are numbered after all surviving indices, ordered by (parent index asc,
handle asc, chain position asc), which makes the labeling deterministic.

Two access routes are provided and tested against each other:

* eager: ``build_stage``/``Construction.stage`` materialize whole stages of
  ``Component`` records (and ``Construction.stage_arrays`` the numeric
  backbone via the compiled kernel);
* lazy: ``component_at``/``children_of`` resolve single ids through the
  exact stage calculus, materializing only the ancestor branch.

Concurrency: a ``Construction`` memoizes evaluated components keyed by id.
All writers compute identical values, so races are benign; insertion uses
``dict.setdefault`` and is atomic per id.  Chain-link indices come from
deterministic prefix sums, never from emission order, so full-stage builds
could be parallelized across parents.
"""

from __future__ import annotations

import os
import threading
from array import array
from dataclasses import dataclass
from typing import Optional

from . import kernel
from .counts import StageCounts
from .errors import InvariantError, NotFoundError, ResourceError, StageParityError
from .genus_spec import CycleTail, ExtendedGenus, GenusSpec

DEFAULT_NODE_BUDGET = 10**6
BUDGET_ENV_VAR = "CANTORFORGE_BUDGET"

SEED = "seed"
GENUS_BUMP = "genus_bump"
SHRINK = "shrink"
CENTRAL_COPY = "central_copy"
CHAIN_LINK = "chain_link"

CHAIN_LENGTH = 6  # links per handle; fixed by the construction


def resolve_budget(budget: Optional[int]) -> int:
    if budget is not None:
        return budget
    env = os.environ.get(BUDGET_ENV_VAR)
    return int(env) if env else DEFAULT_NODE_BUDGET


@dataclass(frozen=True, slots=True)
class ComponentId:
    stage: int
    index: int

    def __str__(self) -> str:
        return f"({self.stage},{self.index})"


@dataclass(frozen=True, slots=True)
class Birth:
    """How a component came to exist.

    Chain links carry the handle (1..parent genus) and position (1..6)
    within the handle's chain.
    """

    kind: str
    handle: Optional[int] = None
    position: Optional[int] = None

    def render(self) -> str:
        if self.kind == CHAIN_LINK:
            return f"{CHAIN_LINK}:{self.handle}:{self.position}"
        return self.kind


@dataclass(frozen=True, slots=True)
class Component:
    id: ComponentId
    genus: int
    assigned_term: ExtendedGenus
    parent: Optional[ComponentId]
    birth: Birth
    cell: tuple[int, ...]
    diam_exp: int
    unknotted: bool = True  # structural tag; every emitted body is unknotted


@dataclass(frozen=True)
class StageSet:
    stage: int
    components: tuple[Component, ...]

    @property
    def m(self) -> int:
        return len(self.components)


@dataclass(frozen=True)
class StageArrays:
    """Numeric backbone of one stage: genus and term per index (term -1 when
    infinite), and for odd stages >= 3 the parent index of each appended link."""

    stage: int
    genus: array
    terms: array
    link_parent: Optional[array] = None

    @property
    def m(self) -> int:
        return len(self.genus)


# -- stage operations on component records --------------------------------


def seed_stage(spec: GenusSpec) -> StageSet:
    """Stage 1: the single genus-2 seed component."""
    seed = Component(
        id=ComponentId(1, 1),
        genus=2,
        assigned_term=spec.entry(1),
        parent=None,
        birth=Birth(SEED),
        cell=(),
        diam_exp=0,
    )
    return StageSet(stage=1, components=(seed,))


def genus_replace(c: Component, spec: GenusSpec) -> Component:
    """Handle-splitting step for one component of an odd stage.

    Returns the stage k+1 child: genus+1 while below the assigned term
    (a genus bump), otherwise an unchanged shrunken copy.
    """
    if c.id.stage % 2 == 0:
        raise StageParityError(
            f"genus replacement applies at odd stages, component is at {c.id.stage}"
        )
    term = spec.entry(c.id.index)
    bump = term.is_infinite or c.genus < term.finite
    return Component(
        id=ComponentId(c.id.stage + 1, c.id.index),
        genus=c.genus + 1 if bump else c.genus,
        assigned_term=term,
        parent=c.id,
        birth=Birth(GENUS_BUMP if bump else SHRINK),
        cell=c.cell,
        diam_exp=c.diam_exp,
    )


def size_replace(c: Component, next_free_index: int, spec: GenusSpec) -> list[Component]:
    """Size step for one component of an even stage.

    Returns 1 + 6g children: the central copy first (same index, same
    genus), then 6g genus-2 chain links labeled consecutively from
    ``next_free_index``, ordered by (handle asc, position asc).  Every child
    halves the diameter bound.
    """
    if c.id.stage % 2 == 1:
        raise StageParityError(
            f"size replacement applies at even stages, component is at {c.id.stage}"
        )
    stage = c.id.stage + 1
    children = [
        Component(
            id=ComponentId(stage, c.id.index),
            genus=c.genus,
            assigned_term=c.assigned_term,
            parent=c.id,
            birth=Birth(CENTRAL_COPY),
            cell=c.cell + (1,),
            diam_exp=c.diam_exp + 1,
        )
    ]
    offset = 0
    for handle in range(1, c.genus + 1):
        for position in range(1, CHAIN_LENGTH + 1):
            index = next_free_index + offset
            children.append(
                Component(
                    id=ComponentId(stage, index),
                    genus=2,
                    assigned_term=spec.entry(index),
                    parent=c.id,
                    birth=Birth(CHAIN_LINK, handle=handle, position=position),
                    cell=c.cell + (2 + offset,),
                    diam_exp=c.diam_exp + 1,
                )
            )
            offset += 1
    return children


def build_stage(prev: StageSet, spec: GenusSpec) -> StageSet:
    """Apply the stage rule to every component of ``prev`` in index order."""
    if prev.stage % 2 == 1:
        components = tuple(genus_replace(c, spec) for c in prev.components)
    else:
        centrals: list[Component] = []
        links: list[Component] = []
        next_free = prev.m + 1
        for c in prev.components:
            children = size_replace(c, next_free, spec)
            centrals.append(children[0])
            links.extend(children[1:])
            next_free += 6 * c.genus
        components = tuple(centrals + links)
    out = StageSet(stage=prev.stage + 1, components=components)
    _recheck_invariants(out)
    return out


def _recheck_invariants(stage_set: StageSet) -> None:
    for i, c in enumerate(stage_set.components, start=1):
        if c.id.index != i or c.id.stage != stage_set.stage:
            raise InvariantError(f"component {c.id} out of place at slot {i}")
        if c.genus < 2:
            raise InvariantError(f"component {c.id} has genus {c.genus} < 2")
        term = c.assigned_term
        if not term.is_infinite and c.genus > term.finite:
            raise InvariantError(
                f"component {c.id} has genus {c.genus} above its term {term}"
            )


# -- the engine ------------------------------------------------------------


class Construction:
    """Memoized lazy/eager access to one spec's component tree.

    The node budget bounds materialization: building stages 1..k requires
    the cumulative component count to stay within it.  Lazy id queries never
    materialize stages and are not budget-bound.
    """

    def __init__(self, spec: GenusSpec, budget: Optional[int] = None):
        self.spec = spec
        self.budget = resolve_budget(budget)
        self.counts = StageCounts(spec)
        self._stages: dict[int, StageSet] = {}
        self._arrays: dict[int, StageArrays] = {}
        self._components: dict[ComponentId, Component] = {}
        self._build_lock = threading.Lock()
        self._prefix_caps = array(
            "q", [(-1 if v.is_infinite else v.finite) for v in spec.prefix]
        )
        if isinstance(spec.tail, CycleTail):
            self._tail_kind = 1
            vals = spec.tail.values
        else:
            self._tail_kind = 0
            vals = (spec.tail.value,)
        self._tail_vals = array(
            "q", [(-1 if v.is_infinite else v.finite) for v in vals]
        )

    # -- counts facade --

    def m(self, stage: int) -> int:
        return self.counts.m(stage)

    def genus_of(self, stage: int, index: int) -> int:
        return self.counts.genus_of(stage, index)

    def birth_stage(self, label: int) -> int:
        if label > self.budget:
            raise ResourceError(
                f"label {label} can never be materialized within the node budget {self.budget}"
            )
        return self.counts.birth_stage(label)

    def ensure_within_budget(self, depth: int) -> None:
        total = sum(self.counts.m(k) for k in range(1, depth + 1))
        if total > self.budget:
            raise ResourceError(
                f"stages 1..{depth} hold {total} components, over the node budget {self.budget}"
            )

    # -- eager object route --

    def stage(self, k: int) -> StageSet:
        if k < 1:
            raise NotFoundError(f"stage must be >= 1, got {k}")
        got = self._stages.get(k)
        if got is not None:
            return got
        self.ensure_within_budget(k)
        with self._build_lock:
            built = max(self._stages, default=0)
            if built == 0:
                self._stages[1] = seed_stage(self.spec)
                built = 1
            for j in range(built + 1, k + 1):
                self._stages[j] = build_stage(self._stages[j - 1], self.spec)
        return self._stages[k]

    def stages_up_to(self, depth: int) -> list[StageSet]:
        self.stage(depth)
        return [self._stages[k] for k in range(1, depth + 1)]

    # -- eager numeric route (kernel-backed) --

    def stage_arrays(self, k: int) -> StageArrays:
        if k < 1:
            raise NotFoundError(f"stage must be >= 1, got {k}")
        got = self._arrays.get(k)
        if got is not None:
            return got
        self.ensure_within_budget(k)
        with self._build_lock:
            if 1 not in self._arrays:
                self._arrays[1] = StageArrays(
                    stage=1,
                    genus=array("q", [2]),
                    terms=array("q", [self._term_as_int(1)]),
                )
            built = max(self._arrays)
            for j in range(built + 1, k + 1):
                prev = self._arrays[j - 1]
                if prev.stage % 2 == 1:
                    nxt = StageArrays(
                        stage=j,
                        genus=kernel.bump_stage(prev.genus, prev.terms),
                        terms=prev.terms,
                    )
                else:
                    genus, terms, link_parent = kernel.expand_stage(
                        prev.genus,
                        prev.terms,
                        self._prefix_caps,
                        self._tail_kind,
                        self._tail_vals,
                        self.budget,
                    )
                    nxt = StageArrays(
                        stage=j, genus=genus, terms=terms, link_parent=link_parent
                    )
                bad = kernel.first_violation(nxt.genus, nxt.terms)
                if bad >= 0:
                    raise InvariantError(
                        f"stage {j} component {bad + 1} violates a genus invariant"
                    )
                self._arrays[j] = nxt
        return self._arrays[k]

    def _term_as_int(self, label: int) -> int:
        cap = self.spec.cap(label)
        return -1 if cap is None else cap

    # -- lazy route --

    def component_at(self, cid: ComponentId) -> Component:
        got = self._components.get(cid)
        if got is not None:
            return got
        if cid.stage < 1 or cid.index < 1 or cid.index > self.counts.m(cid.stage):
            raise NotFoundError(f"no component {cid}")
        # Walk up to the nearest memoized ancestor, then rebuild downward.
        pending: list[tuple[ComponentId, int, Optional[int]]] = []
        cur = cid
        while cur not in self._components and cur.stage > 1:
            parent_index, offset = self.counts.parent_slot(cur.stage, cur.index)
            pending.append((cur, parent_index, offset))
            cur = ComponentId(cur.stage - 1, parent_index)
        if cur.stage == 1 and cur not in self._components:
            self._components.setdefault(cur, seed_stage(self.spec).components[0])
        node = self._components[cur]
        for child_id, parent_index, offset in reversed(pending):
            node = self._make_child(node, child_id, offset)
            node = self._components.setdefault(child_id, node)
        return node

    def _make_child(
        self, parent: Component, cid: ComponentId, offset: Optional[int]
    ) -> Component:
        stage, index = cid.stage, cid.index
        genus = self.counts.genus_of(stage, index)
        term = self.spec.entry(index)
        if stage % 2 == 0:
            birth = Birth(GENUS_BUMP if genus == parent.genus + 1 else SHRINK)
            cell = parent.cell
            diam_exp = parent.diam_exp
        elif offset is None:
            birth = Birth(CENTRAL_COPY)
            cell = parent.cell + (1,)
            diam_exp = parent.diam_exp + 1
        else:
            handle = (offset - 1) // CHAIN_LENGTH + 1
            position = (offset - 1) % CHAIN_LENGTH + 1
            birth = Birth(CHAIN_LINK, handle=handle, position=position)
            cell = parent.cell + (1 + offset,)
            diam_exp = parent.diam_exp + 1
        return Component(
            id=cid,
            genus=genus,
            assigned_term=term,
            parent=parent.id,
            birth=birth,
            cell=cell,
            diam_exp=diam_exp,
        )

    def children_of(self, cid: ComponentId) -> list[Component]:
        if cid.stage < 1 or cid.index < 1 or cid.index > self.counts.m(cid.stage):
            raise NotFoundError(f"no component {cid}")
        if cid.stage % 2 == 1:
            return [self.component_at(ComponentId(cid.stage + 1, cid.index))]
        genus = self.counts.genus_of(cid.stage, cid.index)
        first = self.counts.first_link_index(cid.stage, cid.index)
        out = [self.component_at(ComponentId(cid.stage + 1, cid.index))]
        out.extend(
            self.component_at(ComponentId(cid.stage + 1, first + r))
            for r in range(6 * genus)
        )
        return out

    def parent_slot(self, stage: int, index: int) -> tuple[int, Optional[int]]:
        return self.counts.parent_slot(stage, index)


# -- module-level convenience over a shared engine cache -------------------

_engines: dict[tuple[str, int], Construction] = {}
_engines_lock = threading.Lock()


def construction(spec: GenusSpec, budget: Optional[int] = None) -> Construction:
    key = (spec.render(), resolve_budget(budget))
    got = _engines.get(key)
    if got is None:
        with _engines_lock:
            got = _engines.setdefault(key, Construction(spec, budget=key[1]))
    return got


def component_at(spec: GenusSpec, cid: ComponentId, budget: Optional[int] = None) -> Component:
    return construction(spec, budget).component_at(cid)


def children_of(spec: GenusSpec, cid: ComponentId, budget: Optional[int] = None) -> list[Component]:
    return construction(spec, budget).children_of(cid)
