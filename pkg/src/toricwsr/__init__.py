"""Integral degree-two equivariant cohomology of 4-dimensional toric orbifolds.

Exact lattice computations for a characteristic pair of a polygon: the
closed-form basis of wSR^2, the generic lattice-intersection oracle, the
integrality condition, the algebraic cellular basis and Picard data.
"""

__version__ = "0.1.0"

from .applications import (
    CellularBasis,
    CosetClass,
    PicardReport,
    cellular_basis,
    ideal_J_generators,
    picard_report,
    reduce_mod_J,
)
from .errors import (
    CheckFailed,
    DegenerateMatrix,
    DimensionMismatch,
    GenerationFailed,
    IndexOutOfRange,
    InvalidPair,
    NoSmoothVertex,
    NotFullRank,
    NotInStandardPosition,
    ToricError,
)
from .lattice import (
    Lattice,
    SnfResult,
    determinant,
    hnf_rows,
    invert_2x2,
    kernel_basis,
    lattice_index,
    lattice_intersect,
    lattice_member,
    snf,
)
from .pair import (
    CharacteristicPair,
    TopologyReport,
    VertexChart,
    Violation,
    even_cohomology_check,
    normalize_smooth,
    random_pair,
    validate,
    vertex_charts,
)
from .wsr import (
    SRPolynomial,
    Wsr2Basis,
    integrality_check,
    intersection_oracle,
    is_face,
    lattice_Li,
    phi,
    relation_lattice_K,
    vertex_substitution,
    wsr2_basis,
    wsr2_lattice,
    wsr2_member,
)
