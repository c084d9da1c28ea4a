"""Exact-arithmetic toolkit for tuples of binary forms that share roots:
block-matrix rank tests, smooth/singular classification, and the minor
coordinates used to resolve the shared-root loci."""

from .errors import (
    AllZeroTuple,
    BadIndexSet,
    BadK,
    BadS,
    FormstrataError,
    IndeterminacyLocus,
    InconsistentInput,
    NonSquare,
    ParseError,
    PreconditionNotMet,
    TooLarge,
    UnknownSuite,
)
from .exactla import RationalMatrix, adjugate, det, det_gradient, minor, rank
from .forms import (
    BinaryForm,
    FormTuple,
    common_root_multiplicity,
    evaluate,
    multiply,
)
from .sylvester import (
    PairSelection,
    ResultantMatrix,
    pair_selection_criterion,
    pair_selection_equivalence,
    pair_selection_report,
    build_matrix,
    enumerate_pair_selections,
    in_stratum,
    rank_increment_check,
)
from .strata import (
    PointClassification,
    PointKind,
    StratumParam,
    classify_point,
    minor_jacobian,
    parametrization_jacobian,
    parametrize_stratum,
    stratum_codimension,
    stratum_dimension,
    verify_dimension,
)
from .blowup import (
    AuxTree,
    BlowupPoint,
    MinorIndex,
    attach_auxiliaries,
    aux_size_identity,
    blowup_coords,
    blowup_coords_stream,
    blowup_indices,
    coordinate_count,
    corner_identity_check,
    level1_coords,
    level1_indices,
    level2_coords,
    level2_indices,
    lift_product_map,
    minor_value,
    monomial_span_check,
    product_minor_expansion_check,
    projectively_equal,
    row_pairs,
    segre,
    six_term_relation,
    skew_coords,
    veronese,
)

__version__ = "0.1.0"
