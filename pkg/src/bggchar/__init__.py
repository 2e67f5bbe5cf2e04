"""Exact characters, filtrations and linkage for modular and quantum BGG categories."""

from .charring import (
    Character,
    TruncationWindow,
    baby_verma_character,
    char_add,
    char_mul,
    frobenius_stretch,
    q_minus,
    steinberg_character,
    verma_character,
    weyl_character,
)
from .errors import (
    CapExceededError,
    ConfigurationError,
    InsufficientDepthError,
    MissingRestrictedWeight,
    WindowMismatchError,
)
from .linkage import AffineReflection, apply_reflection, linkage_downset, strongly_linked
from .rootsys import (
    AdicDecomposition,
    RootDatum,
    adic_decompose,
    build_root_datum,
    count_bounded_partitions,
    dominance_leq,
    dot_action,
    kostant_partition,
    parse_type,
)
from .sl2 import (
    CompositionLedger,
    FiltrationQuotient,
    Sl2Regime,
    sl2_baby_verma_comp,
    sl2_composition_factors,
    sl2_reciprocity_check,
    sl2_simple_char,
    sl2_socle,
    sl2_verma_filtration_step,
)
from .steinberg import (
    RestrictedCharProvider,
    SimpleCharRequest,
    antidominant_simple_char,
    simple_char_modular,
    simple_char_quantum,
    sl2_provider,
    steinberg_only_provider,
    weight_mult_stabilized,
    weyl_provider,
)

__version__ = "0.1.0"
