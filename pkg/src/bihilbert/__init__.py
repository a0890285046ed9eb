"""Hilbert functions of reduced 0-dimensional schemes on P^1 x P^1.

Two independent routes to the first difference of the Hilbert matrix: an
exact rank oracle (:mod:`bihilbert.oracle`) and a combinatorial engine that
updates it line by line (:mod:`bihilbert.engine`, :mod:`bihilbert.acm`).
"""

from .acm import StaircaseProfile, acm_add_line, acm_add_partial_col, acm_add_partial_row, delta_acm, is_acm
from .bigraded import (
    CheckReport,
    DeltaMatrix,
    Direction,
    DirectionalDifference,
    HilbertMatrix,
    NegativeCount,
    ProfileReport,
    StabilizationNotReached,
    delta_from_hilbert,
    directional_difference,
    from_ascii,
    from_json,
    gmr_check,
    hilbert_from_delta,
    line_profiles,
    stabilization_index,
    to_ascii,
    to_json,
    transpose,
)
from .engine import (
    ExceptionSet,
    HypothesisNotMet,
    HypothesisVerdict,
    IndexTooSmall,
    LineAdditionSpec,
    Mode,
    Verdict,
    add_full_col,
    add_full_row,
    add_line,
    add_partial_col,
    add_partial_row,
    hypothesis_holds,
    sufficient_condition,
)
from .oracle import (
    PRIME,
    RATIONAL,
    CoordinateCollision,
    Field,
    GridConfig,
    InfeasibleDensity,
    config_from_grid,
    config_from_incidence,
    evaluation_rank,
    extend_with_line,
    hilbert_grid,
    hilbert_matrix,
    random_config,
)

__version__ = "0.1.0"
