"""Exact integer intersection theory on declared surface lattices.

Divisor-class arithmetic with a symmetric integer pairing, blow-ups and
double covers, citation-carrying effectivity certificates, a replay
verifier with deterministic JSON reports, and independent brute-force
oracles.  Everything is exact (arbitrary-precision integers) and every
value object is immutable.
"""

__version__ = "0.1.0"

from .errors import (
    ArityMismatch,
    BoundTooLarge,
    DivisorLatticeError,
    InvalidModel,
    InvalidParameter,
    MismatchedModel,
    NotABlowup,
    NotACover,
    NotAStrictTransformShape,
    NotCertified,
    RegistryTooLarge,
    UnknownCurve,
    WrongSurfaceKind,
)
from .lattice import (
    DivisorClass,
    RegisteredCurve,
    SurfaceModel,
    add,
    format_class,
    is_zero,
    pair,
    scale,
    self_int,
)
from .constructions import (
    MorphismMap,
    PointSpec,
    Tower,
    blow_up,
    build_abelian_product,
    build_tower,
    double_cover,
    load_model,
    model_from_dict,
    model_to_dict,
    pullback,
    save_model,
    strict_transform,
)
from .linsys import (
    ForcingStep,
    ForcingTrace,
    Inconclusive,
    NonEffectivityCertificate,
    RuleApplication,
    SectionCountResult,
    UniqueMember,
    blowup_section_transfer,
    certify_not_effective,
    cover_section_split,
    fixed_part_forcing,
    h0_unique_member,
)
from .pipeline import (
    BEYOND_THRESHOLD,
    FAILED,
    VERIFIED,
    InstanceResult,
    VerificationReport,
    canonical_json,
    m_threshold,
    render_report_text,
    render_sweep_text,
    report_to_dict,
    sweep,
    sweep_to_dict,
    verify,
    verify_instance,
)
from .oracle import (
    OracleReport,
    bilinearity_suite,
    enumerate_decompositions,
    enumeration_check,
    forcing_order_check,
    identity_suite,
    oracle_report_to_dict,
)
from .expr import ExprError, ExprSyntaxError, UnknownIdentifier, parse_expr
