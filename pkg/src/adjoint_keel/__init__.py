"""Exact level and keel of rational surfaces, two ways.

The polygon backend runs on convex lattice polygons (interior hulls,
inward offsets, exact critical-offset search); the lattice backend runs
adjoint chains on Picard lattices of blowup models.  Both feed the
linear parametric-degree bounds 3*level + keel <= pdeg <= 6*level + 2*keel.
"""

from .chain import (
    FIBER_MULTIPLE,
    HALF,
    HALF_FIBER,
    THIRD,
    TWO_THIRDS,
    ZERO_CLASS,
    AdjointChainResult,
    ChainStep,
    FamilyReport,
    PdegBounds,
    adjoint_chain,
    classify_endpoint,
    high_degree_family_report,
    level_keel_divisor,
    pdeg_bounds,
)
from .errors import (
    AdjointKeelError,
    DegenerateInputError,
    InvariantViolationError,
    ModelMismatchError,
    NonLatticeVerticesError,
    NonTerminatingError,
    NotBigError,
    NotContractibleError,
    NotNefError,
    UnboundedRegionError,
    UndecidedError,
    UnknownEndpointError,
    UnsupportedRankError,
)
from .oracles import (
    DEFAULT_SEED,
    FatPointProblem,
    divisor_level_oracle,
    effectivity_oracle,
    fatpoint_dim,
    polygon_level_oracle,
    random_general_points,
)
from .polygon import (
    LatticePolygon,
    PolygonChain,
    PolygonInvariants,
    RationalPolygon,
    Shape,
    as_rational,
    interior_hull,
    lattice_points,
    level_keel,
    nmc_polygon,
    normalize,
    offset_scale,
    polygon_adjoint_chain,
)
from .render import render_chain_svg
from .surfaces import (
    Contraction,
    DivisorClass,
    SurfaceModel,
    arithmetic_genus,
    contract,
    custom_model,
    from_multiplicities,
    hirzebruch,
    intersect,
    is_effective,
    is_nef,
    minimalize,
    multiplicities,
    neg_one_classes,
    plane_blowup,
    plane_deg4_blowup,
    quadric,
    quadric_deg2_blowup,
    quadric_rank1,
)

__version__ = "0.1.0"
