"""urword: exact verification of a binary substitution-tower word.

The library builds the two-letter substitution tower for a parameter family,
verifies its growth hypotheses, letter-density obstruction, bispecial
structure and factor complexity with exact integer/rational arithmetic, and
cross-checks every symbolic prediction against a brute-force factor index at
desk scale.
"""

__version__ = "0.1.0"

from .bispecial import (
    BispecialKind,
    Desubstitution,
    bispecial_length,
    bispecial_parikh,
    bispecial_word,
    breakpoint_row,
    breakpoint_table,
    complexity,
    complexity_step,
    desubstitute,
    length_chain_check,
    liminf_witness,
    ordering_check,
    parikh_less,
    parikh_scaled_below,
    short_bispecials,
    theory_signed_bispecials,
)
from .errors import (
    FamilyConfigError,
    FamilyDepthError,
    IndexBudgetError,
    IndexRangeError,
    InvalidFamilyError,
    NotAFactorError,
    ShortFactorError,
    SizeLimitError,
    TheoryViolation,
    UrwordError,
)
from .families import (
    PAPER,
    CustomFamily,
    HypothesisReport,
    ParameterFamily,
    PaperFamily,
    RecurrenceBound,
    affine_image_parikh,
    apply_level,
    bispecial_image,
    generate_word,
    hypothesis_check,
    load_family_file,
    parikh_uv,
    parse_family,
    prefix_stream,
    recurrence_bound,
    substitution_at,
    word_length,
)
from .frequency import (
    FrequencyReport,
    closed_form_check,
    excess_check,
    obstruction_report,
    paper_density_product,
    product_bounds,
    ratios_exact,
)
from .oracle import (
    BispecialType,
    FactorIndex,
    build_index,
    every_window_contains,
    window_density,
)
from .suite import SuiteParams, SuiteResult, run_suite, trusted_saturation_bound
from .words import (
    Parikh,
    Substitution,
    Word,
    apply_substitution,
    count_occurrences,
    materialization_cap,
    parikh,
    set_materialization_cap,
)
