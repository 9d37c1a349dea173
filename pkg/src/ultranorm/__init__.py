"""ultranorm: computable certificates for ultradifferentiable analysis.

Weight sequences and their associated functions, diverging denominator
sequences and tempered regularization, decreasing weight systems with
translation-admissibility machinery, Hermite-Gaussian test functions with
exact derivatives and weighted seminorms, a short-time Fourier transform
with isometry / reconstruction / weighted continuity certificates, and
verification suites that assemble everything into reproducible reports.
"""

__version__ = "0.1.0"

from .config import ExperimentConfig, parse_config
from .denominators import (
    DivergingSequence,
    RSequence,
    certify_regularization,
    domination_check,
    product_sequence,
    regularize,
    shifted_associated_function,
)
from .errors import (
    ConfigError,
    ExtensionError,
    LocalizationError,
    UltranormError,
    WindowError,
)
from .functions import (
    HermiteGaussian,
    finiteness_agreement,
    hermite_gaussian_family,
    level_sups,
    projective_seminorm,
    roumieu_sequence_equivalence,
    sup_seminorm,
)
from .grids import BoxGrid, default_grid
from .report import CheckRecord, VerificationReport, write_report
from .sequences import (
    WeightSequence,
    associated,
    associated_function,
    check_m1,
    check_m2prime_decay,
    fit_m2prime,
    log_associated,
    precedes_log_growth,
    verify_m2prime,
    witness_decay_check,
)
from .stft import (
    PhaseSpaceGrid,
    adjoint_bound_check,
    adjoint_vstar,
    decay_bound_check,
    default_phase_grid,
    isometry_check,
    reconstruction_check,
    stft_direct,
    stft_grid,
)
from .suites import run_suites
from .weights import (
    AssociatedExpSystem,
    AssociatedExpWeight,
    ConstantSystem,
    ConstantWeight,
    ExponentialWeight,
    admissibility_check,
    build_vbar,
    check_condition_s,
    check_condition_v,
    check_decreasing,
    check_translation_domination,
    measure_chain,
    mollify_weight,
    nachbin_membership,
    standard_bump,
)

__all__ = [name for name in dir() if not name.startswith("_")]
