"""etf-forge: equiangular tight frames from skew Hadamard matrices.

Library surface: exact skew Hadamard combinatorics, signature matrix
algebra, frame synthesis with Welch-bound certificates, an alternating
projections search, and size planning for d x 2d constructions.
"""

from .catalog import (
    NEW_SIZES,
    OPEN_SIZES,
    ReportRow,
    SizePlan,
    execute_plan,
    hadamard_of_order,
    size_report,
    plan_size,
)
from .errors import EtfError
from .hadamard import (
    association_check,
    core_adjacency,
    double_hadamard,
    is_skew_hadamard,
    normalize_hadamard,
    paley_skew_hadamard,
)
from .linalg import HermitianEigen, adjoint, frob_norm, hermitian_eigen, matmul, max_offdiag_abs
from .search import SearchConfig, SearchResult, alternating_projections, search_report
from .signature import (
    DoublingScalars,
    FrameParams,
    SignatureMatrix,
    as_signature,
    conference_signature,
    double_signature,
    doubling_feasible,
    frame_params,
    idempotent_check,
    strohmer_signature,
    verify_signature,
    welch_mu,
)
from .synthesis import (
    Certificate,
    DoublingConstants,
    Frame,
    build_skew_etf,
    double_etf,
    doubling_constants,
    factor_gram,
    frame_signature,
    gram_from_signature,
    naimark_complement,
    verify_etf,
)

__version__ = "0.1.0"

__all__ = [
    "EtfError",
    "HermitianEigen",
    "adjoint",
    "frob_norm",
    "hermitian_eigen",
    "matmul",
    "max_offdiag_abs",
    "paley_skew_hadamard",
    "double_hadamard",
    "normalize_hadamard",
    "core_adjacency",
    "association_check",
    "is_skew_hadamard",
    "FrameParams",
    "SignatureMatrix",
    "DoublingScalars",
    "welch_mu",
    "frame_params",
    "doubling_feasible",
    "verify_signature",
    "as_signature",
    "strohmer_signature",
    "conference_signature",
    "double_signature",
    "idempotent_check",
    "Frame",
    "Certificate",
    "DoublingConstants",
    "gram_from_signature",
    "factor_gram",
    "frame_signature",
    "verify_etf",
    "naimark_complement",
    "doubling_constants",
    "double_etf",
    "build_skew_etf",
    "SearchConfig",
    "SearchResult",
    "alternating_projections",
    "search_report",
    "SizePlan",
    "ReportRow",
    "NEW_SIZES",
    "OPEN_SIZES",
    "plan_size",
    "execute_plan",
    "hadamard_of_order",
    "size_report",
]
