"""Balance and abelian-complexity analysis of the Tribonacci word and the
m-bonacci family: morphic word generation, Parikh/balance analysis,
Tribonacci numeration, spectral discrepancy bounds, and special-factor
characterizations."""

from .abelian import (
    BalanceWitness,
    Desubstitution,
    DesubForm,
    ParikhSet,
    ParikhVector,
    ProfileRow,
    abelian_complexity,
    abelian_profile,
    balance_profile,
    coordinate_interval_check,
    desubstitute,
    imbalance_witness_search,
    is_tribonacci_factor,
    parikh,
    parikh_set,
    prefix_balance_check,
    verify_witness,
    window_parikh,
)
from .errors import (
    BufferLimitError,
    ConfigurationError,
    InvalidInputError,
    InvalidRepresentationError,
    InvariantViolationError,
    NotAFactorError,
    NumericError,
    RangeError,
    SaturationError,
    TribalanceError,
    VerificationFailureError,
)
from .factors import FactorIndex, SaturationRule, factor_index, scan_distinct_factors
from .numeration import (
    ZeckendorfRep,
    is_valid_rep,
    tribonacci_number,
    tribonacci_numbers_upto,
    zeckendorf_decode,
    zeckendorf_encode,
)
from .special import (
    BoundarySet,
    CentralSet,
    EquivalenceRow,
    GeometryClassification,
    GeometryRegion,
    SpecialFactorRecord,
    bispecial_lengths,
    boundary_set,
    central_set,
    is_min_complexity_length,
    min_complexity_lengths,
    right_special_factor,
    successor_length,
    twelve_vector_geometry,
    verify_equivalences,
)
from .spectral import (
    BoundDerivation,
    DiscrepancyInterval,
    SpectralData,
    balance_bound_from_interval,
    certify_balance_bounds,
    compute_spectral_data,
    discrepancy_direct,
    discrepancy_extremes,
    discrepancy_spectral,
    head_extremes,
    letter_frequency,
    tail_bound,
)
from .words import (
    Morphism,
    WordBuffer,
    apply_morphism,
    as_word,
    fixed_point_prefix,
    incidence_matrix,
    mbonacci_morphism,
    mbonacci_word,
    tribonacci_morphism,
    tribonacci_word,
    word_to_text,
)

__version__ = "0.1.0"
