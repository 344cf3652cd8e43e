"""Model matrices built from points of the open unit disk."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .core import DEFAULT_TOLERANCES, Tolerances, as_matrix, is_contraction, numerical_rank
from .errors import DomainError, InputError

__all__ = [
    "DISK_MARGIN",
    "ModelParameters",
    "PrescribedBand",
    "SnReport",
    "build_model_matrix",
    "prescribed_superdiagonal",
    "is_sn_class",
]

DISK_MARGIN = 1e-14


def _check_disk(omegas: np.ndarray) -> None:
    bad = np.flatnonzero(~np.isfinite(omegas) | (np.abs(omegas) >= 1.0 - DISK_MARGIN))
    if bad.size:
        k = int(bad[0])
        raise DomainError(f"omega_{k + 1} = {omegas[k]!r} is not inside the open unit disk")


@dataclass(frozen=True)
class ModelParameters:
    """Ordered points ``omega_1, ..., omega_n`` of the open unit disk.

    Repeated values are allowed. ``defects`` holds ``s_k = sqrt(1 - |omega_k|^2)``.
    """

    omegas: tuple[complex, ...]

    def __post_init__(self):
        values = tuple(complex(w) for w in self.omegas)
        if not values:
            raise InputError("at least one omega is required")
        _check_disk(np.array(values))
        object.__setattr__(self, "omegas", values)

    @classmethod
    def coerce(cls, p: "ModelParameters | Iterable[complex]") -> "ModelParameters":
        return p if isinstance(p, cls) else cls(tuple(p))

    @property
    def n(self) -> int:
        return len(self.omegas)

    def array(self) -> np.ndarray:
        return np.array(self.omegas, dtype=np.complex128)

    @property
    def defects(self) -> np.ndarray:
        w = self.array()
        # clamp guards |omega| = 1 - ulp against a negative radicand
        return np.sqrt(np.maximum(0.0, 1.0 - np.abs(w) ** 2))

    @property
    def max_modulus(self) -> float:
        return float(np.max(np.abs(self.array())))


@dataclass(frozen=True)
class PrescribedBand:
    """Diagonal and (nonnegative real) superdiagonal of an upper-triangular matrix."""

    diagonal: tuple[complex, ...]
    superdiagonal: tuple[float, ...]

    def __post_init__(self):
        if len(self.superdiagonal) != len(self.diagonal) - 1:
            raise InputError(
                f"superdiagonal length {len(self.superdiagonal)} must be "
                f"diagonal length {len(self.diagonal)} minus one"
            )

    @property
    def n(self) -> int:
        return len(self.diagonal)


def build_model_matrix(p) -> np.ndarray:
    """Upper-triangular model matrix with eigenvalues ``p.omegas``.

    Entry ``(i, j)``, ``i < j``, is ``s_i s_j`` times the product of
    ``-conj(omega_k)`` over the strictly intermediate indices ``i < k < j``.
    """
    p = ModelParameters.coerce(p)
    w = p.array()
    s = p.defects
    n = p.n
    M = np.zeros((n, n), dtype=np.complex128)
    M[np.diag_indices(n)] = w
    for i in range(n - 1):
        prod = 1.0 + 0.0j
        for j in range(i + 1, n):
            M[i, j] = prod * s[i] * s[j]
            prod *= -np.conj(w[j])
    return M


def prescribed_superdiagonal(p) -> PrescribedBand:
    """Diagonal ``omega_i`` and superdiagonal ``s_i s_{i+1}``."""
    p = ModelParameters.coerce(p)
    if p.n < 2:
        raise InputError("a superdiagonal needs at least two points")
    s = p.defects
    return PrescribedBand(p.omegas, tuple(float(v) for v in s[:-1] * s[1:]))


@dataclass(frozen=True)
class SnReport:
    contraction: bool
    spectrum_inside: bool
    defect_rank: int
    norm: float
    spectral_radius: float

    @property
    def is_sn(self) -> bool:
        return self.contraction and self.spectrum_inside and self.defect_rank == 1


def is_sn_class(A, tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[bool, SnReport]:
    """Test membership in the class of contractions with spectrum in the disk
    and rank-one defect ``Id - A* A``."""
    A = as_matrix(A, "A")
    n = A.shape[0]
    if A.shape != (n, n):
        raise InputError(f"A must be square, got shape {A.shape}")
    cert = is_contraction(A, tol)
    radius = float(np.max(np.abs(np.linalg.eigvals(A))))
    rank = numerical_rank(np.eye(n) - A.conj().T @ A, tol)
    report = SnReport(
        contraction=cert.contractive,
        spectrum_inside=radius < 1.0 - tol.rank_tol,
        defect_rank=rank,
        norm=cert.norm,
        spectral_radius=radius,
    )
    return report.is_sn, report
