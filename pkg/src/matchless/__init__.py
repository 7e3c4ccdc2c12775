"""matchless: set families with bounded matching number.

Constructions, exact matching-number solvers, closed-form sizes, exact
rational inequality certification, and desk-scale brute-force oracles,
plus a batch CLI.
"""

from .setfam import (
    MAX_GROUND_SET,
    Family,
    FamilyFormatError,
    Params,
    SubsetWord,
    deficiency,
    layer,
    layer_at_least,
    layer_at_most,
    parse_family,
    restrict,
    serialize_family,
)
from .matchings import (
    MatchingWitness,
    find_bounded_matching,
    has_matching,
    is_cross_dependent,
    nu,
    sample_disjoint_tuple,
)
from .constructions import (
    ConstructionSpec,
    build_construction,
    construction_size,
    doubling,
    family_P,
    frankl_A,
    hilton_milner_H,
    parse_construction_spec,
    star,
    threshold_family,
)
from .shifting import ShiftPair, dominates, is_shifted, shift_closure, shift_ij
from .formulas import (
    OutOfRegimeError,
    Verdict,
    binom,
    check_condition_1,
    check_condition_2,
    check_hm_calc,
    check_low_layers,
    condition3_regime,
    cross_dep_bound,
    deficiency_lower,
    find_valid_t,
    frankl_upper,
    hm_stability_regime,
    kleitman_value,
    size_A1,
    size_H,
    size_P,
    size_P_upto,
    smallest_t,
)
from .oracle import CapExceededError, OracleResult, oracle_e, oracle_ek

__version__ = "0.1.0"

__all__ = [
    "MAX_GROUND_SET",
    "Family",
    "FamilyFormatError",
    "Params",
    "SubsetWord",
    "deficiency",
    "layer",
    "layer_at_least",
    "layer_at_most",
    "parse_family",
    "restrict",
    "serialize_family",
    "MatchingWitness",
    "find_bounded_matching",
    "has_matching",
    "is_cross_dependent",
    "nu",
    "sample_disjoint_tuple",
    "ConstructionSpec",
    "build_construction",
    "construction_size",
    "doubling",
    "family_P",
    "frankl_A",
    "hilton_milner_H",
    "parse_construction_spec",
    "star",
    "threshold_family",
    "ShiftPair",
    "dominates",
    "is_shifted",
    "shift_closure",
    "shift_ij",
    "OutOfRegimeError",
    "Verdict",
    "binom",
    "check_condition_1",
    "check_condition_2",
    "check_hm_calc",
    "check_low_layers",
    "condition3_regime",
    "cross_dep_bound",
    "deficiency_lower",
    "find_valid_t",
    "frankl_upper",
    "hm_stability_regime",
    "kleitman_value",
    "size_A1",
    "size_H",
    "size_P",
    "size_P_upto",
    "smallest_t",
    "CapExceededError",
    "OracleResult",
    "oracle_e",
    "oracle_ek",
    "__version__",
]
