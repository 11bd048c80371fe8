"""Canonical serialization: tree documents (JSON) and DOT graphs.

Documents carry only integers, strings, arrays and objects; infinite terms
are the string ``"inf"`` and diameters stay as exponents, so no value ever
needs floating point.  Serialization is canonical (sorted keys, no
whitespace, trailing newline) and re-serializing a loaded document is
byte-identical.
"""

from __future__ import annotations

import json
from typing import Optional

from . import __version__
from .construction import CHAIN_LINK, construction
from .genus_spec import GenusSpec

LABELING_NOTE = "chain links numbered by (parent index, handle, chain position)"


def build_document(spec: GenusSpec, depth: int, budget: Optional[int] = None) -> dict:
    """Materialize stages 1..depth as a plain JSON-ready document."""
    engine = construction(spec, budget)
    stage_sets = engine.stages_up_to(depth)
    stages = []
    for stage_set in stage_sets:
        components = []
        for c in stage_set.components:
            components.append(
                {
                    "index": c.id.index,
                    "genus": c.genus,
                    "birth": c.birth.render(),
                    "parent_index": c.parent.index if c.parent else None,
                    "cell_path": list(c.cell),
                    "diam_exp": c.diam_exp,
                    "assigned_term": c.assigned_term.to_json(),
                }
            )
        stages.append(
            {"stage": stage_set.stage, "m": stage_set.m, "components": components}
        )
    return {
        "spec": spec.render(),
        "depth": depth,
        "stages": stages,
        "metadata": {
            "tool": f"cantorforge {__version__}",
            "labeling": LABELING_NOTE,
        },
    }


def dumps_canonical(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def load_document(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def export_dot(
    spec: GenusSpec,
    depth: int,
    highlight_label: Optional[int] = None,
    budget: Optional[int] = None,
) -> str:
    """Render stages 1..depth as a DOT digraph with stable node ordering.

    Nodes are labeled ``(k,i):g``; chain links are drawn as boxes; the
    branch of ``highlight_label`` (when given) is marked in red.
    """
    engine = construction(spec, budget)
    stage_sets = engine.stages_up_to(depth)
    marked: set[tuple[int, int]] = set()
    if highlight_label is not None:
        from .ends import _label_branch_ids

        marked = {
            (cid.stage, cid.index)
            for cid in _label_branch_ids(engine, highlight_label, depth)
        }

    lines = [f"// cantorforge {__version__} spec={spec.render()} stages={depth}"]
    lines.append("digraph stages {")
    lines.append("  rankdir=TB;")
    for stage_set in stage_sets:
        for c in stage_set.components:
            attrs = [f'label="({c.id.stage},{c.id.index}):{c.genus}"']
            if c.birth.kind == CHAIN_LINK:
                attrs.append("shape=box")
            if (c.id.stage, c.id.index) in marked:
                attrs.append("color=red")
                attrs.append("penwidth=2")
            lines.append(f'  "s{c.id.stage}_{c.id.index}" [{", ".join(attrs)}];')
    for stage_set in stage_sets:
        for c in stage_set.components:
            if c.parent is None:
                continue
            attrs = ""
            if (
                (c.id.stage, c.id.index) in marked
                and (c.parent.stage, c.parent.index) in marked
            ):
                attrs = " [color=red, penwidth=2]"
            lines.append(
                f'  "s{c.parent.stage}_{c.parent.index}" -> "s{c.id.stage}_{c.id.index}"{attrs};'
            )
    lines.append("}")
    return "\n".join(lines) + "\n"
