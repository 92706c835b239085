"""stemsize: exact Hilbert-series, torsion-bound, and growth-profile
calculators for graded algebras modeling spectral-sequence pages."""

from .series import GeneratorKind, SeriesError, TruncatedSeries, factor_series
from .dsl import DslError
from .algebra import (
    AlgebraError,
    AlgebraSpec,
    Generator,
    GeneratorFamily,
    TensorBracket,
    hilbert,
    hilbert_cumulative,
    instantiate,
    oracle_hilbert,
    parse_spec,
    spec_to_text,
    tensor_bracket,
)
from .presets import PRESET_NAMES, MaxOverH, PresetError, max_over_h, preset
from .torsion import (
    LinearCurve,
    PowerLawCurve,
    TableCurve,
    TorsionError,
    TorsionReport,
    VanishingCurve,
    an_e2_exponent,
    barratt_bound,
    counting_lemma,
    goodwillie_bound,
    im_j_lower,
    integral_log_bound,
    norm_torsion_order,
    stable_torsion_bound,
    val_p,
)
from .ehp import (
    CUSeq,
    a_series,
    admissible_series,
    enumerate_I,
    unstable_ext_bound,
    unstable_rank_bound,
    verify_ehp_recurrence,
)
from .asymptotics import (
    BracketReport,
    Constants,
    RatioProfile,
    ResourceLimitError,
    bracketing_check,
    constants,
    ratio_profile,
)

__version__ = "0.1.0"
