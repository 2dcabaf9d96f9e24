"""Exact flag-algebra machinery for inducibility bounds on oriented graphs.

The package verifies sum-of-squares certificates for upper bounds on the
maximal induced density of small oriented graphs, entirely in rational
arithmetic, and computes the limit densities of the recursive blowup
constructions that match those bounds from below.
"""

from .orgraphs import (
    Orgraph,
    canonical_form,
    converse,
    automorphism_count,
    enumerate_orgraphs,
    induced_density,
    max_induced_density,
    validate_edges,
)
from .flags import (
    TypeSigma,
    Flag,
    FlagBasis,
    POINT_TYPE,
    EMPTY_TYPE,
    enumerate_flags,
    flag_density,
    sunflower_density,
    chain_expand,
    averaging_coefficient,
    ProductCoefficientTable,
    product_table,
)
from .linalg import (
    RationalMatrix,
    PsdResult,
    psd_check_exact,
    min_eigenvalue_float,
    rationalize,
)
from .certificates import (
    Certificate,
    VerificationReport,
    VerificationError,
    verify,
    verify_example_order3,
    save_certificate,
    load_certificate,
    builtin_certificate,
    BUILTIN_CERTIFICATES,
)
from .constructions import (
    BlowupSpec,
    LimitDensities,
    limit_densities,
    k12_closed_form,
    optimize_weight,
    builtin_blowup,
    BUILTIN_BLOWUPS,
    load_blowup,
    save_blowup,
)
from .sdp import (
    SdpProblem,
    build_problem,
    export_sdpa,
    parse_sdpa,
    load_solution,
    round_and_verify,
    RoundingResult,
)

__version__ = "0.1.0"

__all__ = [
    "Orgraph",
    "canonical_form",
    "converse",
    "automorphism_count",
    "enumerate_orgraphs",
    "induced_density",
    "max_induced_density",
    "validate_edges",
    "TypeSigma",
    "Flag",
    "FlagBasis",
    "POINT_TYPE",
    "EMPTY_TYPE",
    "enumerate_flags",
    "flag_density",
    "sunflower_density",
    "chain_expand",
    "averaging_coefficient",
    "ProductCoefficientTable",
    "product_table",
    "RationalMatrix",
    "PsdResult",
    "psd_check_exact",
    "min_eigenvalue_float",
    "rationalize",
    "Certificate",
    "VerificationReport",
    "VerificationError",
    "verify",
    "verify_example_order3",
    "save_certificate",
    "load_certificate",
    "builtin_certificate",
    "BUILTIN_CERTIFICATES",
    "BlowupSpec",
    "LimitDensities",
    "limit_densities",
    "k12_closed_form",
    "optimize_weight",
    "builtin_blowup",
    "BUILTIN_BLOWUPS",
    "load_blowup",
    "save_blowup",
    "SdpProblem",
    "build_problem",
    "export_sdpa",
    "parse_sdpa",
    "load_solution",
    "round_and_verify",
    "RoundingResult",
    "__version__",
]
