"""Shared test oracles.

``brute_force_liminf`` re-derives the certified branch limit the dumb way:
evaluate the genus sequence well past settling, then take the smallest
value that still occurs in both halves of the tail window.  For sequences
that are eventually constant, periodic, or monotone increasing (the only
shapes a declared tail produces) this equals the minimal sup over cofinal
stage subsequences; monotone-unbounded sequences yield None.
"""

from __future__ import annotations

from typing import Optional

from cantorforge.construction import Construction
from cantorforge.ends import EndPolicy, branch_ids

TAIL_WINDOW = 16


def branch_genus_sequence(engine: Construction, policy: EndPolicy, depth: int) -> list[int]:
    ids = branch_ids(engine, policy, depth)
    return [engine.genus_of(c.stage, c.index) for c in ids]


def settle_depth(engine: Construction, policy: EndPolicy) -> int:
    """Depth past which the branch tail has provably settled into its pattern."""
    caps = [v.finite for v in engine.spec.prefix if v.finite is not None]
    tail = engine.spec.tail
    vals = tail.values if hasattr(tail, "values") else (tail.value,)
    caps.extend(v.finite for v in vals if v.finite is not None)
    biggest = max(caps, default=2)
    return len(policy.prefix) + 2 * biggest + 8


def brute_force_liminf(engine: Construction, policy: EndPolicy) -> Optional[int]:
    """Minimal sup over cofinal subsequences, or None when unbounded.

    A value recurs forever exactly when it shows up in two tail windows
    separated by a gap: a declared tail only produces eventually-constant,
    eventually-periodic, or monotone-unbounded genus sequences, and in the
    monotone case one value never spans windows a gap apart.
    """
    settled = settle_depth(engine, policy)
    depth = settled + 3 * TAIL_WINDOW
    seq = branch_genus_sequence(engine, policy, depth)
    early_window = set(seq[depth - 3 * TAIL_WINDOW : depth - 2 * TAIL_WINDOW])
    late_window = set(seq[depth - TAIL_WINDOW :])
    recurring = early_window & late_window
    if not recurring:
        return None
    return min(recurring)
