"""Ends of the complement as branch policies through the component tree.

A branch policy is a finitely-described infinite descending chain: a finite
explicit prefix plus a tail rule.  ``FollowLabel(j)`` keeps the branch on
index j from the label's birth stage on; it realizes the dense point tied
to label j.  ``ChainHop(rule)`` picks a chain-link child at every size
stage and otherwise keeps the index; any such branch changes labels
infinitely often, so its component has genus 2 at infinitely many stages.

The genus profile of a branch carries a limit certificate: the smallest
value the genus sequence attains infinitely often (equivalently, the
minimal sup over cofinal stage subsequences).  That value is an upper bound
on the local genus of the branch's point; for followed labels the bound is
attained by the construction, for label-changing branches the true value is
only known to lie in [1, 2].
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional, Union

from .construction import ComponentId, Construction, construction
from .errors import DepthTooShallowError, NotFoundError, PolicyError
from .genus_spec import INFINITY, ExtendedGenus, GenusSpec

_HOP_RE = re.compile(r"^h(\d+)p([1-6])$")


@dataclass(frozen=True)
class HopRule:
    """Deterministic chain-link selector for one size step.

    ``first`` picks handle 1 position 1; ``last`` picks the top handle
    position 6; ``h<H>p<P>`` picks handle H (clamped to the parent genus)
    and position P.
    """

    text: str

    def __post_init__(self) -> None:
        if self.text in ("first", "last"):
            return
        m = _HOP_RE.match(self.text)
        if not m or int(m.group(1)) < 1:
            raise PolicyError(f"bad hop rule {self.text!r}; use first, last, or h<H>p<P>")

    def select(self, parent_genus: int) -> tuple[int, int]:
        if self.text == "first":
            return 1, 1
        if self.text == "last":
            return parent_genus, 6
        m = _HOP_RE.match(self.text)
        return min(int(m.group(1)), parent_genus), int(m.group(2))


@dataclass(frozen=True)
class FollowLabel:
    label: int

    def render(self) -> str:
        return f"follow-label:{self.label}"


@dataclass(frozen=True)
class ChainHop:
    rule: HopRule = HopRule("first")

    def render(self) -> str:
        return f"chain-hop:{self.rule.text}"


TailRule = Union[FollowLabel, ChainHop]


@dataclass(frozen=True)
class EndPolicy:
    """A finitely-described branch: explicit prefix, then a tail rule.

    The prefix must be a descending chain starting at stage 1; a policy
    with ``tail=None`` describes only a finite chain and admits no limit
    certificate.
    """

    prefix: tuple[ComponentId, ...] = ()
    tail: Optional[TailRule] = None

    def render(self) -> str:
        tail = self.tail.render() if self.tail else "undeclared"
        if not self.prefix:
            return tail
        return "via:" + ",".join(str(c) for c in self.prefix) + ";" + tail


@dataclass(frozen=True)
class LiminfCertificate:
    """Certified recurring genus value along a branch.

    kind "value": ``value`` recurs at every witness stage and the tail rule
    forces it to recur forever.  kind "unbounded": the genus sequence grows
    without bound (witnesses are growth stages).  kind "unstable": the
    policy declared no tail, so nothing recurs certifiably.
    """

    kind: str  # "value" | "unbounded" | "unstable"
    value: Optional[int] = None
    witnesses: tuple[int, ...] = ()
    note: str = ""


@dataclass(frozen=True)
class GenusProfile:
    policy: EndPolicy
    stages: tuple[int, ...]  # genus at stages 1..depth
    sup_so_far: ExtendedGenus
    certificate: LiminfCertificate


@dataclass(frozen=True)
class GenusRange:
    lo: int
    hi: int

    def __str__(self) -> str:
        return f"[{self.lo},{self.hi}]"


@dataclass(frozen=True)
class EndClassification:
    kind: str  # "dense" | "non_dense"
    label: Optional[int]
    genus_upper: ExtendedGenus
    genus_exact: Union[ExtendedGenus, GenusRange]
    provenance: str


PROVENANCE_DENSE = (
    "upper bound computed from the defining sequence; attained by construction"
)
PROVENANCE_NON_DENSE = (
    "upper bound computed from the defining sequence; exact value known only in [1,2]"
)


# -- branch evaluation -------------------------------------------------------


def birth_stage(spec: GenusSpec, j: int, budget: Optional[int] = None) -> int:
    """First stage whose component count reaches label j (always odd)."""
    if j < 1:
        raise NotFoundError(f"label must be >= 1, got {j}")
    return construction(spec, budget).birth_stage(j)


def dense_point(spec: GenusSpec, j: int, budget: Optional[int] = None) -> EndPolicy:
    """The branch policy of the point tied to label j."""
    birth_stage(spec, j, budget)  # validates the label and the budget
    return EndPolicy(prefix=(), tail=FollowLabel(j))


def _label_branch_ids(engine: Construction, j: int, depth: int) -> list[ComponentId]:
    """Stages 1..depth of the label-j branch: (k, j) from the birth stage on,
    the ancestors of the birth component below it."""
    b = engine.counts.birth_stage(j)
    ids: dict[int, ComponentId] = {}
    for k in range(min(b, depth) + 1, depth + 1):
        ids[k] = ComponentId(k, j)
    cur = ComponentId(b, j)
    for k in range(b, 0, -1):
        if k <= depth:
            ids[k] = cur
        if k > 1:
            parent_index, _ = engine.parent_slot(cur.stage, cur.index)
            cur = ComponentId(k - 1, parent_index)
    return [ids[k] for k in range(1, depth + 1)]


def branch_ids(engine: Construction, policy: EndPolicy, depth: int) -> list[ComponentId]:
    """Resolve the branch to the requested stage depth.

    Validates the prefix (a descending chain from stage 1, consistent with
    the tail rule) and extends it by the tail.
    """
    if depth < len(policy.prefix):
        raise PolicyError(
            f"depth {depth} is shorter than the policy prefix ({len(policy.prefix)})"
        )
    _check_prefix(engine, policy.prefix)

    if isinstance(policy.tail, FollowLabel):
        ids = _label_branch_ids(engine, policy.tail.label, max(depth, len(policy.prefix)))
        for given, derived in zip(policy.prefix, ids):
            if given != derived:
                raise PolicyError(
                    f"prefix entry {given} is not on the label-{policy.tail.label} branch"
                )
        return ids[:depth]

    ids = list(policy.prefix)
    if not ids:
        ids = [ComponentId(1, 1)]
    if isinstance(policy.tail, ChainHop):
        while len(ids) < depth:
            cur = ids[-1]
            k = cur.stage
            if k % 2 == 1:
                ids.append(ComponentId(k + 1, cur.index))
            else:
                genus = engine.genus_of(k, cur.index)
                handle, position = policy.tail.rule.select(genus)
                ids.append(
                    ComponentId(k + 1, engine.counts.link_index(k, cur.index, handle, position))
                )
        return ids[:depth]
    if len(ids) < depth:
        raise DepthTooShallowError(
            f"policy declares no tail and its prefix stops at stage {len(ids)}"
        )
    return ids[:depth]


def _check_prefix(engine: Construction, prefix: tuple[ComponentId, ...]) -> None:
    for pos, cid in enumerate(prefix):
        if cid.stage != pos + 1:
            raise PolicyError(f"prefix entry {cid} should be at stage {pos + 1}")
        if cid.index < 1 or cid.index > engine.m(cid.stage):
            raise PolicyError(f"prefix entry {cid} does not exist")
        if pos > 0:
            parent_index, _ = engine.parent_slot(cid.stage, cid.index)
            if parent_index != prefix[pos - 1].index:
                raise PolicyError(
                    f"prefix entries {prefix[pos - 1]} -> {cid} are not parent/child"
                )


def genus_profile(
    spec: GenusSpec, policy: EndPolicy, depth: int, budget: Optional[int] = None
) -> GenusProfile:
    """Genus sequence along the branch to the given depth, with certificate."""
    engine = construction(spec, budget)
    ids = branch_ids(engine, policy, depth)
    genera = tuple(engine.genus_of(c.stage, c.index) for c in ids)
    cert = _certificate(engine, policy, ids)
    return GenusProfile(
        policy=policy,
        stages=genera,
        sup_so_far=ExtendedGenus(max(genera)) if genera else ExtendedGenus(2),
        certificate=cert,
    )


def _certificate(
    engine: Construction, policy: EndPolicy, ids: list[ComponentId]
) -> LiminfCertificate:
    if policy.tail is None:
        return LiminfCertificate(
            kind="unstable",
            note="no declared tail; the finite prefix certifies nothing",
        )
    if isinstance(policy.tail, FollowLabel):
        j = policy.tail.label
        b = engine.counts.birth_stage(j)
        cap = engine.spec.cap(j)
        if cap is None:
            return LiminfCertificate(
                kind="unbounded",
                witnesses=(b + 1, b + 3, b + 5),
                note=f"label {j} has an infinite term; genus grows at every even stage",
            )
        settled = b if cap == 2 else b + 1 + 2 * (cap - 3)
        return LiminfCertificate(
            kind="value",
            value=cap,
            witnesses=(settled, settled + 1, settled + 2),
            note=f"label {j} settles at genus {cap} from stage {settled} on",
        )
    # Chain hops land on a fresh genus-2 link at every odd stage past the prefix.
    start = max(3, len(policy.prefix) + 1)
    if start % 2 == 0:
        start += 1
    return LiminfCertificate(
        kind="value",
        value=2,
        witnesses=(start, start + 2, start + 4),
        note="every hop stage lands on a genus-2 link",
    )


def local_genus_upper(
    spec: GenusSpec, policy: EndPolicy, depth: int, budget: Optional[int] = None
) -> ExtendedGenus:
    """Minimal sup of genus over cofinal stage subsequences of the branch.

    This is an upper bound on the local genus at the branch's point.  For a
    followed label the bound equals the label's term and is attained; for
    chain-hopping branches the bound is 2.
    """
    profile = genus_profile(spec, policy, depth, budget)
    cert = profile.certificate
    if cert.kind == "unstable":
        raise DepthTooShallowError(
            "no declared tail: deepen the prefix or declare a tail rule"
        )
    if cert.kind == "unbounded":
        return INFINITY
    return ExtendedGenus(cert.value)


def classify(spec: GenusSpec, policy: EndPolicy, budget: Optional[int] = None) -> EndClassification:
    """Sort the end by its tail rule and report its genus data."""
    if policy.tail is None:
        raise PolicyError("classification requires a declared tail rule")
    if isinstance(policy.tail, FollowLabel):
        term = spec.entry(policy.tail.label)
        return EndClassification(
            kind="dense",
            label=policy.tail.label,
            genus_upper=term,
            genus_exact=term,
            provenance=PROVENANCE_DENSE,
        )
    return EndClassification(
        kind="non_dense",
        label=None,
        genus_upper=ExtendedGenus(2),
        genus_exact=GenusRange(1, 2),
        provenance=PROVENANCE_NON_DENSE,
    )


# -- reports -----------------------------------------------------------------


@dataclass(frozen=True)
class DensityReport:
    depth: int
    checked: int
    violations: tuple[str, ...]

    @property
    def passed(self) -> bool:
        return not self.violations


def density_check(spec: GenusSpec, depth: int, budget: Optional[int] = None) -> DensityReport:
    """Verify every component (k, j), k <= depth, lies on the label-j branch.

    Uses the eager numeric backbone: walking parents upward from (k, j)
    must stay on index j down to the label's birth stage, which is exactly
    the statement that the labeled point is inside every component carrying
    its label.
    """
    engine = construction(spec, budget)
    engine.ensure_within_budget(depth)
    violations: list[str] = []
    checked = 0
    for k in range(1, depth + 1):
        arrays = engine.stage_arrays(k)
        prev_m = engine.m(k - 1) if k > 1 else 0
        for j in range(1, arrays.m + 1):
            checked += 1
            if k == 1:
                continue
            if j <= prev_m:
                parent_index, _ = engine.parent_slot(k, j)
                if parent_index != j:
                    violations.append(f"component ({k},{j}) has parent index {parent_index}")
            else:
                if engine.counts.birth_stage(j) != k:
                    violations.append(f"component ({k},{j}) should be newborn at stage {k}")
    # Spot-check via full branch evaluation for a deterministic sample.
    sample = range(1, min(engine.m(depth), 64) + 1)
    for j in sample:
        b = engine.counts.birth_stage(j)
        ids = _label_branch_ids(engine, j, depth)
        for k in range(b, depth + 1):
            if ids[k - 1] != ComponentId(k, j):
                violations.append(f"label {j} branch misses ({k},{j})")
    return DensityReport(depth=depth, checked=checked, violations=tuple(violations))


@dataclass(frozen=True)
class DualityRow:
    stage: int
    m: int
    boundary_genera: tuple[tuple[int, int], ...]  # (genus, count), genus ascending


@dataclass(frozen=True)
class DualityReport:
    """Complement view: each stage's exhaustion element is bounded by one
    surface per component, and branches of the component tree are exactly
    the ends of the complement.  Genus-of-end values equal the local genus
    values because both read the same branch profiles."""

    rows: tuple[DualityRow, ...]
    note: str = (
        "ends of the complement correspond to branches; the genus of an end "
        "equals the branch's certified genus bound"
    )


def ends_as_points(depth: int, spec: GenusSpec, budget: Optional[int] = None) -> DualityReport:
    """Boundary data of the complement-view exhaustion, stage by stage."""
    engine = construction(spec, budget)
    engine.ensure_within_budget(depth)
    rows = []
    for k in range(1, depth + 1):
        arrays = engine.stage_arrays(k)
        hist: dict[int, int] = {}
        for g in arrays.genus:
            hist[g] = hist.get(g, 0) + 1
        rows.append(
            DualityRow(
                stage=k,
                m=arrays.m,
                boundary_genera=tuple(sorted(hist.items())),
            )
        )
    return DualityReport(rows=tuple(rows))
