"""cantorforge: build and analyze nested handlebody stage sequences.

Materializes, to any finite depth, the defining stages of a Cantor set
whose branch points carry prescribed genus values, verifies the stage
invariants, and classifies the genus of every finitely-described branch.
"""

__version__ = "0.1.0"

from .errors import (
    CantorForgeError,
    DepthTooShallowError,
    InvariantError,
    NotFoundError,
    PolicyError,
    ResourceError,
    SpecSyntaxError,
    SpecValueError,
    StageParityError,
)
from .genus_spec import INFINITY, ExtendedGenus, GenusSpec, parse_spec
from .construction import (
    Birth,
    Component,
    ComponentId,
    Construction,
    StageSet,
    build_stage,
    children_of,
    component_at,
    construction,
    genus_replace,
    seed_stage,
    size_replace,
)
from .geometry import (
    LinkingLayout,
    TamenessReport,
    assign_cells,
    diameter_bound,
    linking_layout,
    tameness_caveat,
)
from .ends import (
    ChainHop,
    EndClassification,
    EndPolicy,
    FollowLabel,
    GenusProfile,
    GenusRange,
    HopRule,
    birth_stage,
    classify,
    dense_point,
    density_check,
    ends_as_points,
    genus_profile,
    local_genus_upper,
)
from .oracle import NaiveTree, diff, naive_build

__all__ = [
    "__version__",
    "CantorForgeError",
    "DepthTooShallowError",
    "InvariantError",
    "NotFoundError",
    "PolicyError",
    "ResourceError",
    "SpecSyntaxError",
    "SpecValueError",
    "StageParityError",
    "INFINITY",
    "ExtendedGenus",
    "GenusSpec",
    "parse_spec",
    "Birth",
    "Component",
    "ComponentId",
    "Construction",
    "StageSet",
    "build_stage",
    "children_of",
    "component_at",
    "construction",
    "genus_replace",
    "seed_stage",
    "size_replace",
    "LinkingLayout",
    "TamenessReport",
    "assign_cells",
    "diameter_bound",
    "linking_layout",
    "tameness_caveat",
    "ChainHop",
    "EndClassification",
    "EndPolicy",
    "FollowLabel",
    "GenusProfile",
    "GenusRange",
    "HopRule",
    "birth_stage",
    "classify",
    "dense_point",
    "density_check",
    "ends_as_points",
    "genus_profile",
    "local_genus_upper",
    "NaiveTree",
    "diff",
    "naive_build",
]
