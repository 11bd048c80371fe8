"""Deliberately naive re-implementation of the stage construction.

Ground truth for small depths: eager, list-based, no sharing with the
engine beyond the parsed genus spec.  The duplication is the point; keep
this file free of imports from the construction/counting modules.

``naive_build`` also exposes two fault-injection knobs (flipped stage
parity, shortened chains) so the differential harness can prove the diff
actually detects divergence.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import ResourceError
from .genus_spec import GenusSpec

ORACLE_NODE_LIMIT = 100_000


@dataclass(frozen=True)
class NaiveNode:
    stage: int
    index: int
    genus: int
    term_text: str  # rendered assigned term ("2", "3", ..., "inf")
    parent_index: Optional[int]
    birth: str  # "seed" | "genus_bump" | "shrink" | "central_copy" | "chain_link:h:p"
    cell: tuple[int, ...]
    diam_exp: int


@dataclass(frozen=True)
class NaiveTree:
    spec_text: str
    stages: tuple[tuple[NaiveNode, ...], ...]

    def m(self, stage: int) -> int:
        return len(self.stages[stage - 1])


@dataclass(frozen=True)
class Discrepancy:
    stage: int
    index: int
    field: str
    oracle_value: object
    engine_value: object


def naive_build(
    spec: GenusSpec,
    depth: int,
    max_nodes: int = ORACLE_NODE_LIMIT,
    chain_length: int = 6,
    flip_parity: bool = False,
) -> NaiveTree:
    """Eagerly build every stage up to ``depth``.

    ``chain_length`` and ``flip_parity`` are fault-injection knobs for the
    differential tests; leave them at their defaults for ground truth.
    """
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    stages: list[tuple[NaiveNode, ...]] = [
        (
            NaiveNode(
                stage=1,
                index=1,
                genus=2,
                term_text=str(spec.entry(1)),
                parent_index=None,
                birth="seed",
                cell=(),
                diam_exp=0,
            ),
        )
    ]
    total = 1
    for k in range(1, depth):
        prev = stages[-1]
        odd = (k % 2 == 1) ^ flip_parity
        nxt: list[NaiveNode] = []
        if odd:
            for node in prev:
                term = spec.entry(node.index)
                below = term.is_infinite or node.genus < term.finite
                nxt.append(
                    NaiveNode(
                        stage=k + 1,
                        index=node.index,
                        genus=node.genus + 1 if below else node.genus,
                        term_text=str(term),
                        parent_index=node.index,
                        birth="genus_bump" if below else "shrink",
                        cell=node.cell,
                        diam_exp=node.diam_exp,
                    )
                )
        else:
            tail: list[NaiveNode] = []
            label = len(prev)
            for node in prev:
                nxt.append(
                    NaiveNode(
                        stage=k + 1,
                        index=node.index,
                        genus=node.genus,
                        term_text=node.term_text,
                        parent_index=node.index,
                        birth="central_copy",
                        cell=node.cell + (1,),
                        diam_exp=node.diam_exp + 1,
                    )
                )
                ordinal = 1
                for handle in range(1, node.genus + 1):
                    for position in range(1, chain_length + 1):
                        label += 1
                        ordinal += 1
                        tail.append(
                            NaiveNode(
                                stage=k + 1,
                                index=label,
                                genus=2,
                                term_text=str(spec.entry(label)),
                                parent_index=node.index,
                                birth=f"chain_link:{handle}:{position}",
                                cell=node.cell + (ordinal,),
                                diam_exp=node.diam_exp + 1,
                            )
                        )
            nxt.extend(tail)
        total += len(nxt)
        if total > max_nodes:
            raise ResourceError(
                f"naive build needs {total} nodes by stage {k + 1}, over the cap {max_nodes}"
            )
        stages.append(tuple(nxt))
    return NaiveTree(spec_text=spec.render(), stages=tuple(stages))


def diff(tree: NaiveTree, engine_stages: Sequence) -> list[Discrepancy]:
    """Field-by-field comparison against the engine's stage sets.

    Empty iff every stage matches in size and every component matches in
    genus, assigned term, parent, birth, cell path and diameter exponent.
    Ordered by (stage, index).
    """
    out: list[Discrepancy] = []
    for oracle_stage, engine_stage in zip(tree.stages, engine_stages):
        stage_no = oracle_stage[0].stage if oracle_stage else engine_stage.stage
        if len(oracle_stage) != len(engine_stage.components):
            out.append(
                Discrepancy(
                    stage=stage_no,
                    index=0,
                    field="m",
                    oracle_value=len(oracle_stage),
                    engine_value=len(engine_stage.components),
                )
            )
            continue
        for node, comp in zip(oracle_stage, engine_stage.components):
            engine_fields = {
                "genus": comp.genus,
                "term": str(comp.assigned_term),
                "parent": comp.parent.index if comp.parent else None,
                "birth": comp.birth.render(),
                "cell": comp.cell,
                "diam_exp": comp.diam_exp,
            }
            oracle_fields = {
                "genus": node.genus,
                "term": node.term_text,
                "parent": node.parent_index,
                "birth": node.birth,
                "cell": node.cell,
                "diam_exp": node.diam_exp,
            }
            for name in engine_fields:
                if oracle_fields[name] != engine_fields[name]:
                    out.append(
                        Discrepancy(
                            stage=node.stage,
                            index=node.index,
                            field=name,
                            oracle_value=oracle_fields[name],
                            engine_value=engine_fields[name],
                        )
                    )
    return out
