"""Dense complex-matrix kernels shared by every other module.

Matrices are plain ``numpy`` arrays of dtype ``complex128``; :func:`as_matrix`
is the single gate that validates shape and finiteness.
"""

from __future__ import annotations

import enum
from dataclasses import asdict, dataclass, field, replace

import numpy as np

from .errors import InputError, NotAContractionError, SingularResolventError

__all__ = [
    "Tolerances",
    "DEFAULT_TOLERANCES",
    "Verdict",
    "ContractionCertificate",
    "as_matrix",
    "adjoint",
    "singular_values",
    "spectral_norm",
    "is_contraction",
    "defect_operator",
    "numerical_rank",
    "pseudo_inverse",
    "solve_resolvent",
    "max_abs_diff",
]


@dataclass(frozen=True)
class Tolerances:
    """Numerical thresholds used throughout the package.

    eig_tol
        Hermitian eigenvalues in ``[-eig_tol, eig_tol]`` are treated as zero.
    rank_tol
        Relative singular-value cutoff for rank decisions and pseudo-inverses.
    cert_tol
        Margin around 1 when certifying ``||M|| <= 1``.
    solve_tol
        Admissible residual of linear and factor solves.
    """

    eig_tol: float = 1e-10
    rank_tol: float = 1e-8
    cert_tol: float = 1e-9
    solve_tol: float = 1e-10

    def __post_init__(self):
        for name, value in asdict(self).items():
            if not (np.isfinite(value) and value > 0):
                raise InputError(f"tolerance {name} must be strictly positive, got {value!r}")

    def with_overrides(self, **overrides) -> "Tolerances":
        """Return a copy with every non-``None`` override applied."""
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def as_dict(self) -> dict:
        return asdict(self)


DEFAULT_TOLERANCES = Tolerances()


class Verdict(str, enum.Enum):
    STRICT = "STRICT"
    CONTRACTION = "CONTRACTION"
    VIOLATION = "VIOLATION"


@dataclass(frozen=True)
class ContractionCertificate:
    """Outcome of :func:`is_contraction`.

    ``witness`` is set only for a violation: a unit vector ``x`` with
    ``||M x|| = norm > 1``. ``defect_rank`` is the numerical rank of
    ``Id - M* M``, or ``None`` for a violation (the defect is not PSD then).
    """

    verdict: Verdict
    norm: float
    defect_rank: int | None = None
    witness: np.ndarray | None = field(default=None, compare=False)

    @property
    def contractive(self) -> bool:
        return self.verdict is not Verdict.VIOLATION


def as_matrix(M, name: str = "matrix") -> np.ndarray:
    """Validate ``M`` as a finite 2-D complex array and return it as complex128."""
    try:
        arr = np.asarray(M, dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise InputError(f"{name}: cannot be read as a complex matrix ({exc})") from None
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise InputError(f"{name}: expected a non-empty 2-D array, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InputError(f"{name}: entries must be finite")
    return arr


def adjoint(M) -> np.ndarray:
    return as_matrix(M).conj().T


def singular_values(M) -> np.ndarray:
    """Singular values of ``M`` in descending order."""
    return np.linalg.svd(as_matrix(M), compute_uv=False)


def spectral_norm(M) -> float:
    """Largest singular value of ``M`` (full SVD)."""
    return float(singular_values(M)[0])


def max_abs_diff(A, B) -> float:
    """Entrywise max-norm of ``A - B``."""
    return float(np.max(np.abs(np.asarray(A) - np.asarray(B))))


def _rank_cutoff(s: np.ndarray, tol: Tolerances) -> float:
    top = s[0] if s.size else 0.0
    return tol.rank_tol * max(float(top), 1.0)


def numerical_rank(H, tol: Tolerances = DEFAULT_TOLERANCES) -> int:
    """Number of singular values above ``rank_tol * max(sigma_max, 1)``."""
    s = singular_values(H)
    return int(np.count_nonzero(s > _rank_cutoff(s, tol)))


def is_contraction(M, tol: Tolerances = DEFAULT_TOLERANCES) -> ContractionCertificate:
    """Certify ``||M|| <= 1`` up to ``cert_tol``."""
    M = as_matrix(M)
    _, s, vh = np.linalg.svd(M)
    norm = float(s[0])
    if norm > 1.0 + tol.cert_tol:
        return ContractionCertificate(Verdict.VIOLATION, norm, None, vh[0].conj())
    defect = np.eye(M.shape[1]) - M.conj().T @ M
    verdict = Verdict.STRICT if norm <= 1.0 - tol.cert_tol else Verdict.CONTRACTION
    return ContractionCertificate(verdict, norm, numerical_rank(defect, tol))


def defect_operator(T, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """PSD square root of ``Id - T* T``.

    Eigenvalues of ``Id - T* T`` within ``eig_tol`` of zero are set to zero
    exactly, so near-isometric directions land in the kernel instead of
    surfacing as ``sqrt(rounding error)``.
    """
    T = as_matrix(T, "T")
    H = np.eye(T.shape[1]) - T.conj().T @ T
    H = 0.5 * (H + H.conj().T)
    lam, V = np.linalg.eigh(H)
    if lam[0] < -tol.eig_tol:
        raise NotAContractionError(
            f"not a contraction: Id - T*T has eigenvalue {lam[0]:.3e} < -{tol.eig_tol:g}"
        )
    root = np.where(lam <= tol.eig_tol, 0.0, np.sqrt(np.clip(lam, 0.0, None)))
    D = (V * root) @ V.conj().T
    return 0.5 * (D + D.conj().T)


def pseudo_inverse(M, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Moore-Penrose inverse, zeroing singular values at or below the rank cutoff."""
    M = as_matrix(M)
    u, s, vh = np.linalg.svd(M, full_matrices=False)
    keep = s > _rank_cutoff(s, tol)
    inv = np.zeros_like(s)
    inv[keep] = 1.0 / s[keep]
    return (vh.conj().T * inv) @ u.conj().T


def solve_resolvent(T, w: complex, x, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Solve ``(Id - conj(w) T) y = x``.

    ``x`` may be a vector or a matrix (solved columnwise); ``y`` has the
    same shape.
    """
    T = as_matrix(T, "T")
    n = T.shape[0]
    if T.shape != (n, n):
        raise InputError(f"T must be square, got shape {T.shape}")
    x = np.asarray(x, dtype=np.complex128)
    if x.shape[0] != n or x.ndim not in (1, 2):
        raise InputError(f"right-hand side shape {x.shape} incompatible with {n}x{n} system")
    if not np.all(np.isfinite(x)):
        raise InputError("right-hand side must be finite")
    R = np.eye(n) - np.conj(w) * T
    sigma_min = float(np.linalg.svd(R, compute_uv=False)[-1])
    if sigma_min <= tol.rank_tol:
        raise SingularResolventError(
            f"Id - conj(w) T is singular (smallest singular value {sigma_min:.3e})", sigma_min
        )
    y = np.linalg.solve(R, x)
    residual = float(np.linalg.norm(R @ y - x))
    if residual > tol.solve_tol * max(float(np.linalg.norm(x)), np.finfo(float).tiny):
        raise SingularResolventError(
            f"resolvent solve residual {residual:.3e} exceeds tolerance "
            f"(smallest singular value {sigma_min:.3e})",
            sigma_min,
        )
    return y
