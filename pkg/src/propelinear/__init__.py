"""Propelinear extended perfect binary codes from Phelps concatenation."""

from .binary import ExplicitCode, LinearCode, extended_hamming, gf2_rank, min_distance, weight_distribution
from .errors import BudgetExceeded, ConsistencyError, RejectedInput
from .mds import QuasigroupShape, mds_enumerate, sigma_for_codeword
from .phelps import PhelpsCode, canonical_assignment, phelps_code, phelps_contains, phelps_enumerate
from .verify import check_extended_perfect, check_propelinear, invariant_bundle

__all__ = [
    "BudgetExceeded",
    "ConsistencyError",
    "ExplicitCode",
    "LinearCode",
    "PhelpsCode",
    "QuasigroupShape",
    "RejectedInput",
    "canonical_assignment",
    "check_extended_perfect",
    "check_propelinear",
    "extended_hamming",
    "gf2_rank",
    "invariant_bundle",
    "mds_enumerate",
    "min_distance",
    "phelps_code",
    "phelps_contains",
    "phelps_enumerate",
    "sigma_for_codeword",
    "weight_distribution",
]
