"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import time
from fractions import Fraction

from cantorforge.construction import ComponentId, Construction, construction
from cantorforge.ends import (
    ChainHop,
    EndPolicy,
    FollowLabel,
    HopRule,
    classify,
    density_check,
    genus_profile,
    local_genus_upper,
)
from cantorforge.genus_spec import INFINITY, ExtendedGenus, parse_spec
from cantorforge.geometry import diameter_bound
from cantorforge.kernel import first_violation
from cantorforge.oracle import diff, naive_build
from cantorforge.verify import corpus

from helpers import brute_force_liminf
from test_cli import run_cli

CORPUS = corpus(50)


def report(criterion: int, ok: bool, detail: str) -> None:
    status = "PASS" if ok else "FAIL"
    print(f"[criterion {criterion}] {status} - {detail}")
    assert ok, f"criterion {criterion}: {detail}"


def test_criterion_1_stage_counts():
    started = time.monotonic()
    spec = parse_spec("2")
    engine = Construction(spec)
    ok = [engine.m(k) for k in range(1, 6)] == [1, 1, 13, 13, 169]
    for t in range(5):
        ok = ok and engine.m(2 * t + 1) == 13**t
    stages = engine.stages_up_to(9)
    ok = ok and [s.m for s in stages][8] == 13**4
    ok = ok and diff(naive_build(spec, 9), stages) == []
    elapsed = time.monotonic() - started
    ok = ok and elapsed < 5.0
    report(1, ok, f"m(2t+1)=13^t for t<=4, oracle-identical to depth 9, {elapsed:.2f}s")


def test_criterion_2_genus_profiles():
    spec = parse_spec("inf")
    profile = genus_profile(spec, EndPolicy(tail=FollowLabel(1)), 21)
    ok = all(
        profile.stages[2 * t - 1] == t + 2 and profile.stages[2 * t] == t + 2
        for t in range(1, 11)
    )
    for g0 in range(2, 10):
        prof = genus_profile(parse_spec(str(g0)), EndPolicy(tail=FollowLabel(1)), 2 * g0 + 5)
        seq = prof.stages
        ok = ok and all(a <= b for a, b in zip(seq, seq[1:]))
        ok = ok and max(seq) == g0
        first_hit = seq.index(g0)
        ok = ok and all(v == g0 for v in seq[first_hit:])
    report(2, ok, "label-1 genus is t+2 at stages 2t,2t+1; finite terms settle and hold")


def test_criterion_3_classification():
    failures = 0
    checked = 0
    for spec in CORPUS:
        engine = construction(spec)
        labels = list(range(1, 9)) + [engine.m(3), engine.m(3) + 1]
        for j in labels:
            cls = classify(spec, EndPolicy(tail=FollowLabel(j)))
            upper = local_genus_upper(spec, EndPolicy(tail=FollowLabel(j)), 9)
            term = spec.entry(j)
            checked += 1
            if not (cls.kind == "dense" and cls.genus_exact == term and upper == term):
                failures += 1
        for rule in ("first", "last", "h3p2"):
            policy = EndPolicy(tail=ChainHop(HopRule(rule)))
            cls = classify(spec, policy)
            upper = local_genus_upper(spec, policy, 9)
            checked += 1
            if not (
                cls.kind == "non_dense"
                and upper == ExtendedGenus(2)
                and (cls.genus_exact.lo, cls.genus_exact.hi) == (1, 2)
            ):
                failures += 1
    report(3, failures == 0, f"{checked} ends over 50 specs, {failures} exceptions")


def _cells_disjoint_structural(engine: Construction, depth: int) -> bool:
    # Odd stages refine cells: per parent, the central copy takes ordinal 1
    # and the links take 2..1+6g in link order, so the link_parent array
    # must list each parent consecutively, exactly 6*genus times, ascending.
    for k in range(3, depth + 1, 2):
        arrays = engine.stage_arrays(k)
        prev = engine.stage_arrays(k - 1)
        expected = []
        for p in range(1, prev.m + 1):
            expected.extend([p] * (6 * prev.genus[p - 1]))
        if list(arrays.link_parent) != expected:
            return False
    return True


def test_criterion_4_invariant_suite():
    for spec in CORPUS:
        engine = construction(spec)
        detail = f"spec {spec.render()}"
        for k in range(1, 10):
            arrays = engine.stage_arrays(k)
            assert min(arrays.genus) >= 2, detail
            assert first_violation(arrays.genus, arrays.terms) == -1, detail
            if k < 9:
                nxt = engine.stage_arrays(k + 1)
                expected = arrays.m if k % 2 == 1 else arrays.m + 6 * sum(arrays.genus)
                assert nxt.m == expected == engine.counts.m(k + 1), detail
        assert _cells_disjoint_structural(engine, 9), detail
        # Full component-record checks at small depth: cells and diameters.
        prev_cells = None
        for stage_set in engine.stages_up_to(6):
            paths = [c.cell for c in stage_set.components]
            assert len(set(paths)) == len(paths), detail
            assert {len(p) for p in paths} == {(stage_set.stage - 1) // 2}, detail
            if prev_cells is not None:
                for c in stage_set.components:
                    parent_path = prev_cells[c.parent.index - 1]
                    assert c.cell[: len(parent_path)] == parent_path, detail
            prev_cells = paths
        # Diameter bound at odd stages, spot-checked lazily at depth 7..9.
        for t in range(5):
            k = 2 * t + 1
            for index in {1, engine.m(k)}:
                c = engine.component_at(ComponentId(k, index))
                assert diameter_bound(c) == Fraction(1, 2**t), detail
        # Two-stage branching from the counts.
        for k in range(1, 8):
            even = k + 1 if k % 2 == 1 else k
            arrays = engine.stage_arrays(even)
            assert 1 + 6 * min(arrays.genus) >= 13, detail
    report(4, True, "genus floor/cap, cells, counts, diameters, branching over 50 specs to stage 9")


def test_criterion_5_subsequence_principle():
    started = time.monotonic()
    spec = parse_spec("2,3")
    engine = construction(spec)
    stages = engine.stages_up_to(7)
    prefix_of = {}
    for stage_set in stages:
        for c in stage_set.components:
            prefix_of[c.id] = (
                (c.id,) if c.id.stage == 1 else prefix_of[c.parent] + (c.id,)
            )
    mismatches = 0
    branches = 0
    for c in stages[6].components:
        prefix = prefix_of[c.id]
        for tail in (FollowLabel(c.id.index), ChainHop()):
            policy = EndPolicy(prefix=prefix, tail=tail)
            reported = local_genus_upper(spec, policy, 7)
            brute = brute_force_liminf(engine, policy)
            expected = INFINITY if brute is None else ExtendedGenus(brute)
            branches += 1
            if reported != expected:
                mismatches += 1
    elapsed = time.monotonic() - started
    ok = mismatches == 0 and branches == 2 * 2281 and elapsed < 60.0
    report(5, ok, f"{branches} tailed branches from all stage-7 prefixes, {elapsed:.1f}s")


def test_criterion_6_oracle_equivalence():
    named = [parse_spec(t) for t in ("2", "inf;const:inf", "2,3,inf", "2;cycle:3,4")]
    for spec in named + CORPUS:
        engine = construction(spec)
        assert diff(naive_build(spec, 7), engine.stages_up_to(7)) == [], spec.render()
    spec = parse_spec("2")
    engine = construction(spec)
    flipped = diff(naive_build(spec, 5, flip_parity=True), engine.stages_up_to(5))
    short = diff(naive_build(spec, 5, chain_length=5), engine.stages_up_to(5))
    ok = bool(flipped) and flipped[0].stage == 2 and bool(short) and short[0].stage == 3
    report(6, ok, "field-identical to depth 7 on 50 specs; faults surface at stages 2 and 3")


def test_criterion_7_density():
    for spec in CORPUS:
        result = density_check(spec, 6)
        assert result.passed, f"{spec.render()}: {result.violations[:1]}"
    report(7, True, "every component (k,j) with k<=6 lies on label j's branch, 50 specs")


def test_criterion_8_determinism():
    builds = [run_cli("build", "--spec", "2,3,inf", "--stages", "5") for _ in range(2)]
    dots = [
        run_cli("export", "--spec", "2,3", "--stages", "4", "--highlight-label", "2")
        for _ in range(2)
    ]
    ok = (
        all(p.returncode == 0 for p in builds + dots)
        and builds[0].stdout == builds[1].stdout
        and dots[0].stdout == dots[1].stdout
        and builds[0].stdout.strip()
    )
    report(8, bool(ok), "independent build and export runs are byte-identical")
