"""Distance measures between random permutation sets."""

from .core import (
    BeliefVector,
    EventCode,
    Frame,
    MassFunction,
    PermutationMassFunction,
    decode_event,
    encode_event,
    enumerate_pes,
    forget_order,
    truncate,
    vectorize,
)
from .distance import (
    DistanceRequest,
    DistanceResult,
    chen_rps_distance,
    distance,
    expanded_form_distance,
    jousselme_distance,
    pairwise_distances,
    quadratic_form_distance,
    rps_distance,
)
from .errors import DomainError, IndefiniteMatrixError
from .matrix import WeightingMatrix, build_matrix, correct_matrix, is_positive_definite, min_eigenvalue
from .owa import maxent_weights, orness, solve_h
from .similarity import cumulative_jaccard, cumulative_jaccard_orness, jaccard, ordered_degree, prefix_set

__version__ = "0.1.0"
