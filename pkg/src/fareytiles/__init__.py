"""Exact enumeration of admissible chains of Farey valences.

The tiles of the Farey triangle are built as exact rational polygons; a
brute-force Farey oracle cross-checks every geometric verdict.
"""

from .continuants import ValenceChain, eval_p, germ_forms, reduction_identity_check
from .enumeration import (
    PUBLISHED_C,
    BudgetExceeded,
    CountReport,
    compute_C,
    compute_constants,
    count_chains,
    enumerate_chains,
    tessellation,
)
from .exact import (
    AffineForm,
    ConvexRegion,
    HalfPlane,
    Point,
    Relation,
    Status,
    affine_eval,
    clip,
    region_status,
)
from .farey import (
    FareyFraction,
    FareyWindow,
    difference_formula_check,
    farey_sequence,
    oracle_is_admissible,
    valence_windows,
)
from .svg import render_svg
from .tiles import (
    ConvexTile,
    child_valences,
    farey_triangle,
    is_admissible_geometric,
    point_to_chain,
    proposition_vertices,
    tile_constraints,
    tile_of_chain,
)

__version__ = "0.1.0"
