"""Ascent and descent of composition operators on Orlicz-Lorentz spaces over finite atomic measures."""

__version__ = "0.1.0"

from .composition import UNBOUNDED, ChainReport, CompositionMatrix, boundedness_constant, chain_report, composition_matrix, rank
from .criteria import (
    CriteriaReport,
    ascent_by_measures,
    ascent_zero_sufficient,
    cross_validate,
    descent_injectivity_profile,
    descent_zero_conjecture_check,
    kernel_set,
)
from .errors import (
    AbsoluteContinuityViolated,
    IndexMismatch,
    NotWellDefinedAE,
    NumericNonconvergence,
    ParseError,
    PositiveWeightsRequired,
    ValidationError,
)
from .measure import (
    AtomicSpace,
    Measure,
    PointFunction,
    TransformMap,
    is_measure_preserving,
    is_nonsingular,
    is_pre_positive,
    measure_order,
    pushforward_power,
    rn_derivative,
)
from .orlicz import (
    StepFunction,
    WeightFunction,
    YoungFunction,
    delta2_report,
    distribution,
    indicator_norm_closed_form,
    luxemburg_norm,
    modular,
    rearrangement,
    young_inverse,
)
from .seqmaps import (
    ALL_INJECTIVE,
    EventuallyAffineMap,
    StructuredSubset,
    image_power,
    seq_ascent,
    seq_descent_bound,
    witness_sequence,
)
