"""Exact per-stage counts and genus sums, computed without materialization.

The stage rules give every quantity here a closed form.  Even stages are
produced by the handle-splitting step: each component keeps its index and
its genus grows by one while still below its assigned term.  Odd stages
from 3 on are produced by the shrinking step: each component survives as a
central copy with its index, and each of its g handles contributes an open
chain of six genus-2 links, appended after all surviving indices.

Consequences used throughout:

* A component's genus depends only on its label's birth stage b, its
  assigned term, and the stage k::

      genus(k, i) = min(term_i, 2 + evens(b_i, k))

  where evens(b, k) = k//2 - (b-1)//2 counts even stages in (b, k].

* Labels are born in cohorts, one per odd stage, occupying a contiguous
  index range.  Genus sums over an index range therefore reduce to capped
  sums of spec entries, which have closed forms for both tail rules.

* The count recurrence: m(k+1) = m(k) at odd k, and
  m(k+1) = m(k) + 6 * (sum of genus over stage k) at even k.

Everything is exact integer arithmetic; counts beyond any materialization
budget (they grow geometrically) are still cheap to evaluate.
"""

from __future__ import annotations

import threading
from bisect import bisect_left
from typing import Optional

from .errors import NotFoundError
from .genus_spec import ConstantTail, CycleTail, GenusSpec


def _capped(value: Optional[int], bound: int) -> int:
    """min(value, bound) with ``None`` treated as infinity."""
    return bound if value is None else min(value, bound)


class StageCounts:
    """Exact count/genus queries for one spec's component tree.

    Thread-safe: the cohort table is append-only and grows under a lock;
    all query results are deterministic.
    """

    def __init__(self, spec: GenusSpec):
        self.spec = spec
        # _cohort_hi[t] = m(2t+1): highest index alive at odd stage 2t+1.
        self._cohort_hi: list[int] = [1]
        self._genus_sum_memo: dict[int, int] = {}
        self._lock = threading.Lock()

    # -- stage sizes ----------------------------------------------------

    def m(self, stage: int) -> int:
        """Number of components at the given stage."""
        if stage < 1:
            raise NotFoundError(f"stage must be >= 1, got {stage}")
        t = (stage - 1) // 2 if stage % 2 == 1 else (stage - 2) // 2
        self._ensure_cohorts(t)
        return self._cohort_hi[t]

    def _ensure_cohorts(self, t: int) -> None:
        if len(self._cohort_hi) > t:
            return
        with self._lock:
            while len(self._cohort_hi) <= t:
                last = len(self._cohort_hi) - 1
                even_stage = 2 * last + 2
                growth = 6 * self._genus_sum_upto(even_stage, self._cohort_hi[last])
                self._cohort_hi.append(self._cohort_hi[last] + growth)

    # -- genus queries ---------------------------------------------------

    def genus_of(self, stage: int, index: int) -> int:
        """Genus of the component with the given stage and index."""
        if index < 1 or stage < 1 or index > self.m(stage):
            raise NotFoundError(f"no component ({stage},{index})")
        t = self._cohort_of(index)
        return _capped(self.spec.cap(index), 2 + stage // 2 - t)

    def birth_stage(self, label: int) -> int:
        """First stage at which the label exists (always odd)."""
        if label < 1:
            raise NotFoundError(f"label must be >= 1, got {label}")
        return 2 * self._cohort_of(label) + 1

    def _cohort_of(self, index: int) -> int:
        with self._lock:
            while self._cohort_hi[-1] < index:
                last = len(self._cohort_hi) - 1
                even_stage = 2 * last + 2
                growth = 6 * self._genus_sum_upto(even_stage, self._cohort_hi[last])
                self._cohort_hi.append(self._cohort_hi[last] + growth)
        return bisect_left(self._cohort_hi, index)

    def genus_sum(self, stage: int) -> int:
        """Sum of genus over all components of the stage."""
        got = self._genus_sum_memo.get(stage)
        if got is None:
            got = self._genus_sum_upto(stage, self.m(stage))
            self._genus_sum_memo[stage] = got
        return got

    def genus_sum_upto(self, stage: int, upto: int) -> int:
        """Sum of genus over components 1..upto of the stage."""
        if upto > self.m(stage):
            raise NotFoundError(f"stage {stage} has only {self.m(stage)} components")
        return self._genus_sum_upto(stage, upto)

    def _genus_sum_upto(self, stage: int, upto: int) -> int:
        # Callers guarantee the cohort table covers `upto`.
        total = 0
        lo = 1
        for t, hi in enumerate(self._cohort_hi):
            if lo > upto:
                break
            bound = 2 + stage // 2 - t
            total += self._capped_range_sum(lo, min(hi, upto), bound)
            lo = hi + 1
        return total

    def _capped_range_sum(self, lo: int, hi: int, bound: int) -> int:
        """Sum over labels lo..hi of min(term, bound), infinity capping at bound."""
        if hi < lo:
            return 0
        spec = self.spec
        plen = len(spec.prefix)
        total = 0
        head_hi = min(hi, plen)
        for i in range(lo, head_hi + 1):
            total += _capped(spec.prefix[i - 1].finite, bound)
        t1 = max(lo, plen + 1) - plen
        t2 = hi - plen
        if t2 < t1:
            return total
        n = t2 - t1 + 1
        tail = spec.tail
        if isinstance(tail, ConstantTail):
            return total + n * _capped(tail.value.finite, bound)
        assert isinstance(tail, CycleTail)
        vals = [_capped(v.finite, bound) for v in tail.values]
        full, rem = divmod(n, len(vals))
        total += full * sum(vals)
        start = (t1 - 1) % len(vals)
        for r in range(rem):
            total += vals[(start + r) % len(vals)]
        return total

    # -- parent/child index arithmetic ------------------------------------

    def parent_slot(self, stage: int, index: int) -> tuple[int, Optional[int]]:
        """Parent index of (stage, index), plus the link offset.

        The offset is ``None`` for components that keep their parent's index
        (even-stage children and central copies) and the 1-based position
        within the parent's 6g link block for chain links.
        """
        if stage < 2:
            raise NotFoundError("stage-1 components have no parent")
        if index > self.m(stage):
            raise NotFoundError(f"no component ({stage},{index})")
        prev_m = self.m(stage - 1)
        if index <= prev_m:
            return index, None
        # Chain link at an odd stage: invert the link prefix sums.
        r = index - prev_m
        lo, hi = 1, prev_m
        while lo < hi:
            mid = (lo + hi) // 2
            if 6 * self._genus_sum_upto(stage - 1, mid) >= r:
                hi = mid
            else:
                lo = mid + 1
        offset = r - 6 * self._genus_sum_upto(stage - 1, lo - 1)
        return lo, offset

    def link_index(self, even_stage: int, parent_index: int, handle: int, position: int) -> int:
        """Index at stage ``even_stage + 1`` of one chain link of the parent.

        Links of parent p start after all surviving indices and after the
        link blocks of parents 1..p-1; within a block they are ordered by
        (handle asc, position asc).
        """
        base = self.m(even_stage) + 6 * self._genus_sum_upto(even_stage, parent_index - 1)
        return base + (handle - 1) * 6 + position

    def first_link_index(self, even_stage: int, parent_index: int) -> int:
        return self.link_index(even_stage, parent_index, 1, 1)
