"""Repairable threshold secret sharing.

Shamir and ramp schemes over prime fields, two ways to repair a lost share
without the dealer (the additive-split enrollment protocol and combinatorial
repair via distribution designs), and exhaustive auditors that machine-check
the secrecy and communication claims at desk scale.
"""

from .audit import (
    SecrecyReport,
    audit_enrollment_secrecy,
    audit_rts_secrecy,
    comparison_corpus,
    comparison_rows,
    count_communication,
    glf_bound,
    glf_bound_closed_form,
)
from .designs import (
    Design,
    DistributionProfile,
    OneDesignParams,
    as_1_design,
    builtin_design,
    complement_design,
    compute_profile,
    contains_pasch,
    dual_complete_graph,
    find_basic_repairing_set,
    is_repairable,
    kirkman_sts9,
    load_design,
    noncollinear_triple,
    pg2,
    pg2_blocking_repairing_set,
    save_design,
    sts_bose,
    subdesign,
    universal_repairability_1design,
    universal_repairability_exhaustive,
)
from .enrollment import ExchangeMatrix, column_sums, repair_share, split_row
from .errors import (
    CorruptShareError,
    DesignParseError,
    Error,
    FieldMismatchError,
    InconsistentSharesError,
    InsufficientSharesError,
    NotRepairableError,
    ParameterError,
    ProfileError,
    TooLargeError,
)
from .expanded import (
    ExpandedScheme,
    RepairPlan,
    check_repair_transcript,
    design_metrics,
    execute_repair,
    plan_repair,
    reconstruct_secret,
    scheme_metrics,
    setup,
)
from .field import FieldElement, PrimeField, is_prime, smallest_prime_at_least
from .ramp import (
    Polynomial,
    RampParams,
    Share,
    deal,
    evaluate_share,
    lagrange_coeffs,
    reconstruct,
)
from .rng import ScriptedSource, SeededRng
from .transcript import EXCHANGE, REPAIR, Message, Transcript

__version__ = "0.1.0"
