"""Invariant suite and random spec corpus.

Each check returns a CheckResult with the first counterexample in
``detail`` on failure.  The suite mixes three routes through the data: the
numeric backbone (kernel arrays), materialized component records, and the
naive oracle; agreement between them is itself one of the checks.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from . import oracle
from .construction import Construction, construction
from .ends import density_check
from .genus_spec import ConstantTail, CycleTail, ExtendedGenus, GenusSpec, INFINITY
from .geometry import assign_cells
from .errors import CantorForgeError


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def line(self) -> str:
        status = "pass" if self.passed else "FAIL"
        return f"{self.name:<20} {status}" + (f"  {self.detail}" if self.detail else "")


OBJECT_CHECK_DEPTH = 6  # full component-record checks stay at small depths
ORACLE_CHECK_DEPTH = 7


def check_genus_floor(engine: Construction, depth: int) -> CheckResult:
    for k in range(1, depth + 1):
        arrays = engine.stage_arrays(k)
        worst = min(arrays.genus)
        if worst < 2:
            return CheckResult("genus-floor", False, f"stage {k} holds genus {worst}")
    return CheckResult("genus-floor", True)


def check_genus_cap(engine: Construction, depth: int) -> CheckResult:
    for k in range(1, depth + 1):
        arrays = engine.stage_arrays(k)
        for i, (g, t) in enumerate(zip(arrays.genus, arrays.terms), start=1):
            if t >= 0 and g > t:
                return CheckResult(
                    "genus-cap", False, f"component ({k},{i}) has genus {g} over term {t}"
                )
    return CheckResult("genus-cap", True)


def check_count_recurrence(engine: Construction, depth: int) -> CheckResult:
    for k in range(1, depth):
        arrays = engine.stage_arrays(k)
        nxt = engine.stage_arrays(k + 1)
        expected = arrays.m if k % 2 == 1 else arrays.m + 6 * sum(arrays.genus)
        if nxt.m != expected:
            return CheckResult(
                "count-recurrence",
                False,
                f"m({k + 1}) = {nxt.m}, recurrence gives {expected}",
            )
        if engine.counts.m(k + 1) != expected:
            return CheckResult(
                "count-recurrence",
                False,
                f"closed-form m({k + 1}) = {engine.counts.m(k + 1)} != {expected}",
            )
    return CheckResult("count-recurrence", True)


def check_diameter_decay(engine: Construction, depth: int) -> CheckResult:
    for k in range(1, min(depth, OBJECT_CHECK_DEPTH) + 1):
        stage = engine.stage(k)
        exps = {c.diam_exp for c in stage.components}
        if exps != {(k - 1) // 2}:
            return CheckResult(
                "diameter-decay", False, f"stage {k} exponents {sorted(exps)}"
            )
    return CheckResult("diameter-decay", True)


def check_cells(engine: Construction, depth: int) -> CheckResult:
    prev_table: Optional[dict[int, tuple[int, ...]]] = None
    for k in range(1, min(depth, OBJECT_CHECK_DEPTH) + 1):
        stage = engine.stage(k)
        try:
            table = assign_cells(stage, prev_table)
        except CantorForgeError as exc:
            return CheckResult("cell-disjointness", False, str(exc))
        lengths = {len(p) for p in table.values()}
        if lengths != {(k - 1) // 2}:
            return CheckResult(
                "cell-disjointness", False, f"stage {k} path lengths {sorted(lengths)}"
            )
        for c in stage.components:
            if table[c.id.index] != c.cell:
                return CheckResult(
                    "cell-disjointness",
                    False,
                    f"component {c.id} cell {c.cell} != derived {table[c.id.index]}",
                )
            if k > 1 and c.cell[: len(prev_table[c.parent.index])] != prev_table[c.parent.index]:
                return CheckResult(
                    "cell-nesting", False, f"component {c.id} escapes its parent cell"
                )
        prev_table = table
    return CheckResult("cell-disjointness", True)


def check_branching(engine: Construction, depth: int) -> CheckResult:
    # Count, per component, its actual descendants two stages later.
    for k in range(1, min(depth, OBJECT_CHECK_DEPTH + 2) - 1):
        mid = {c.id.index: c.parent.index for c in engine.stage(k + 1).components}
        tally: dict[int, int] = {}
        for c in engine.stage(k + 2).components:
            grand = mid[c.parent.index]
            tally[grand] = tally.get(grand, 0) + 1
        worst_index = min(tally, key=lambda i: tally[i])
        if len(tally) != engine.m(k) or tally[worst_index] < 2:
            return CheckResult(
                "branching",
                False,
                f"component ({k},{worst_index}) has {tally.get(worst_index, 0)} "
                "descendants two stages later",
            )
    return CheckResult("branching", True)


def check_density(engine: Construction, depth: int) -> CheckResult:
    report = density_check(engine.spec, min(depth, OBJECT_CHECK_DEPTH), engine.budget)
    if not report.passed:
        return CheckResult("density", False, report.violations[0])
    return CheckResult("density", True)


def check_oracle_diff(engine: Construction, depth: int) -> CheckResult:
    d = min(depth, ORACLE_CHECK_DEPTH)
    try:
        tree = oracle.naive_build(engine.spec, d)
    except CantorForgeError as exc:
        return CheckResult("oracle-diff", True, f"skipped beyond oracle cap: {exc}")
    diffs = oracle.diff(tree, engine.stages_up_to(d))
    if diffs:
        first = diffs[0]
        return CheckResult(
            "oracle-diff",
            False,
            f"first diff at stage {first.stage} index {first.index} field {first.field}",
        )
    return CheckResult("oracle-diff", True)


def check_lazy_eager(engine: Construction, depth: int) -> CheckResult:
    for k in range(1, min(depth, OBJECT_CHECK_DEPTH) + 1):
        stage = engine.stage(k)
        for c in stage.components:
            lazy = engine.component_at(c.id)
            if lazy != c:
                return CheckResult(
                    "lazy-eager", False, f"component {c.id} differs between routes"
                )
    return CheckResult("lazy-eager", True)


ALL_CHECKS = (
    check_genus_floor,
    check_genus_cap,
    check_count_recurrence,
    check_diameter_decay,
    check_cells,
    check_branching,
    check_density,
    check_oracle_diff,
    check_lazy_eager,
)


def run_suite(spec: GenusSpec, depth: int, budget: Optional[int] = None) -> list[CheckResult]:
    engine = construction(spec, budget)
    engine.ensure_within_budget(depth)
    return [check(engine, depth) for check in ALL_CHECKS]


# -- random spec corpus ------------------------------------------------------

CORPUS_SEED = 0xC4A7


def random_entry(rng: random.Random) -> ExtendedGenus:
    roll = rng.random()
    if roll < 0.45:
        return ExtendedGenus(2)
    if roll < 0.65:
        return ExtendedGenus(3)
    if roll < 0.78:
        return ExtendedGenus(4)
    if roll < 0.86:
        return ExtendedGenus(5)
    if roll < 0.94:
        return ExtendedGenus(rng.randint(6, 9))
    return INFINITY


def random_spec(rng: random.Random) -> GenusSpec:
    prefix = tuple(random_entry(rng) for _ in range(rng.randint(1, 6)))
    roll = rng.random()
    if roll < 0.55:
        tail = ConstantTail(ExtendedGenus(2))
    elif roll < 0.70:
        tail = ConstantTail(ExtendedGenus(3))
    elif roll < 0.78:
        tail = ConstantTail(random_entry(rng))
    else:
        tail = CycleTail(tuple(random_entry(rng) for _ in range(rng.randint(2, 3))))
    return GenusSpec(prefix=prefix, tail=tail)


def corpus(n: int, seed: int = CORPUS_SEED) -> list[GenusSpec]:
    rng = random.Random(seed)
    return [random_spec(rng) for _ in range(n)]
