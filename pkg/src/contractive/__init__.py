"""Model matrices of compressed shifts, contractive completions and checks
of their uniqueness among upper-triangular contractions."""

__version__ = "0.1.0"

from .core import (
    DEFAULT_TOLERANCES,
    ContractionCertificate,
    Tolerances,
    Verdict,
    defect_operator,
    is_contraction,
    numerical_rank,
    pseudo_inverse,
    solve_resolvent,
    spectral_norm,
)
from .errors import (
    ContractiveError,
    DomainError,
    InconsistentFactorizationError,
    InputError,
    NonUniqueCompletionError,
    NotAContractionError,
    SingularResolventError,
)
from .model import ModelParameters, PrescribedBand, build_model_matrix, is_sn_class, prescribed_superdiagonal
from .moebius import MoebiusParam, moebius_matrix, moebius_scalar
from .parrott import (
    FeasibilityDisk,
    ParrottBlocks,
    central_completion,
    minimal_norm_completion,
    scalar_feasibility_disk,
    solve_factors,
)
from .verifier import truncation_check, unique_completion_solver, uniqueness_sweep
