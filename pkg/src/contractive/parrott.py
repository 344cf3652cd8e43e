"""Contractive completion of a 2x2 block matrix with one unknown corner.

For ``T = [[A, B], [C, D]]`` with contractive column ``[A; C]`` and row
``[C, D]``, write ``A = Z D_C`` and ``D = D_{C*} Y`` with contractions ``Z``
and ``Y``. Every contractive completion then has the form
``B = D_{Z*} W D_Y - Z C* Y`` with ``W`` a contraction. When ``B`` is a
scalar this is a closed disk of centre ``-Z C* Y`` and radius
``sqrt((1 - Z Z*)(1 - Y* Y))``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    DEFAULT_TOLERANCES,
    Tolerances,
    as_matrix,
    defect_operator,
    pseudo_inverse,
    spectral_norm,
)
from .errors import InconsistentFactorizationError, InputError, NotAContractionError

__all__ = [
    "ParrottBlocks",
    "FactorPair",
    "FeasibilityDisk",
    "solve_factors",
    "scalar_feasibility_disk",
    "central_completion",
    "minimal_norm_completion",
    "assemble",
]


@dataclass(frozen=True)
class ParrottBlocks:
    """Known blocks ``A`` (k1 x h1), ``C`` (k2 x h1), ``D`` (k2 x h2)."""

    A: np.ndarray
    C: np.ndarray
    D: np.ndarray

    def __post_init__(self):
        A = as_matrix(self.A, "A")
        C = as_matrix(self.C, "C")
        D = as_matrix(self.D, "D")
        if A.shape[1] != C.shape[1]:
            raise InputError(f"A {A.shape} and C {C.shape} must have the same number of columns")
        if C.shape[0] != D.shape[0]:
            raise InputError(f"C {C.shape} and D {D.shape} must have the same number of rows")
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "C", C)
        object.__setattr__(self, "D", D)

    @property
    def corner_shape(self) -> tuple[int, int]:
        return self.A.shape[0], self.D.shape[1]

    @property
    def column(self) -> np.ndarray:
        return np.vstack([self.A, self.C])

    @property
    def row(self) -> np.ndarray:
        return np.hstack([self.C, self.D])

    def column_norm(self) -> float:
        return spectral_norm(self.column)

    def row_norm(self) -> float:
        return spectral_norm(self.row)

    def check(self, tol: Tolerances = DEFAULT_TOLERANCES) -> None:
        """Raise unless ``[A; C]`` and ``[C, D]`` are contractions."""
        col, row = self.column_norm(), self.row_norm()
        if col > 1.0 + tol.cert_tol or row > 1.0 + tol.cert_tol:
            raise NotAContractionError(
                f"Parrott blocks need contractive column and row, got norms {col:.12g} and {row:.12g}"
            )

    def scaled(self, factor: float) -> "ParrottBlocks":
        return ParrottBlocks(self.A * factor, self.C * factor, self.D * factor)


@dataclass(frozen=True)
class FactorPair:
    Z: np.ndarray
    Y: np.ndarray
    residual_z: float
    residual_y: float


@dataclass(frozen=True)
class FeasibilityDisk:
    center: complex
    radius: float

    def contains(self, b: complex, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
        return abs(complex(b) - self.center) <= self.radius + tol.cert_tol


def solve_factors(blocks: ParrottBlocks, tol: Tolerances = DEFAULT_TOLERANCES) -> FactorPair:
    """Minimal-norm ``Z = A pinv(D_C)`` and ``Y = pinv(D_{C*}) D``, residual-checked.

    ``D_C`` is singular exactly when ``C`` is isometric on some direction,
    which is the situation of interest, so both equations go through a
    thresholded pseudo-inverse rather than a direct solve.
    """
    blocks.check(tol)
    A, C, D = blocks.A, blocks.C, blocks.D
    dc = defect_operator(C, tol)
    dcs = defect_operator(C.conj().T, tol)
    Z = A @ pseudo_inverse(dc, tol)
    Y = pseudo_inverse(dcs, tol) @ D
    rz = spectral_norm(A - Z @ dc)
    ry = spectral_norm(D - dcs @ Y)
    if rz > tol.solve_tol or ry > tol.solve_tol:
        raise InconsistentFactorizationError(
            f"inconsistent factorization: ||A - Z D_C|| = {rz:.3e}, "
            f"||D - D_C* Y|| = {ry:.3e} (solve_tol {tol.solve_tol:g})",
            rz,
            ry,
        )
    return FactorPair(Z, Y, rz, ry)


def scalar_feasibility_disk(blocks: ParrottBlocks, tol: Tolerances = DEFAULT_TOLERANCES) -> FeasibilityDisk:
    """Set of scalars ``B`` making ``[[A, B], [C, D]]`` a contraction."""
    if blocks.corner_shape != (1, 1):
        raise InputError(f"scalar corner required, got corner shape {blocks.corner_shape}")
    f = solve_factors(blocks, tol)
    center = -complex((f.Z @ blocks.C.conj().T @ f.Y)[0, 0])
    zz = float((f.Z @ f.Z.conj().T)[0, 0].real)
    yy = float((f.Y.conj().T @ f.Y)[0, 0].real)
    return FeasibilityDisk(center, float(np.sqrt(max(0.0, (1.0 - zz) * (1.0 - yy)))))


def central_completion(
    blocks: ParrottBlocks, tol: Tolerances = DEFAULT_TOLERANCES, level: float = 1.0
) -> np.ndarray:
    """The ``W = 0`` completion ``B = -Z C* Y`` at norm bound ``level``.

    With the default ``level = 1`` this is the centre of the set of
    contractive completions (the disk centre for a scalar corner). Other
    levels rescale the blocks by ``1/level`` first, which yields a
    completion of norm at most ``level`` whenever one exists.
    """
    if not level > 0:
        raise InputError(f"level must be positive, got {level!r}")
    scaled = blocks if level == 1.0 else blocks.scaled(1.0 / level)
    f = solve_factors(scaled, tol)
    return -level * (f.Z @ scaled.C.conj().T @ f.Y)


def minimal_norm_completion(blocks: ParrottBlocks, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """Completion attaining the smallest possible norm ``max(||[A; C]||, ||[C, D]||)``."""
    level = max(blocks.column_norm(), blocks.row_norm())
    if level == 0.0:
        return np.zeros(blocks.corner_shape, dtype=np.complex128)
    return central_completion(blocks, tol, level=level)


def assemble(blocks: ParrottBlocks, B) -> np.ndarray:
    """The block matrix ``[[A, B], [C, D]]``."""
    B = as_matrix(B, "B")
    if B.shape != blocks.corner_shape:
        raise InputError(f"B must have shape {blocks.corner_shape}, got {B.shape}")
    return np.block([[blocks.A, B], [blocks.C, blocks.D]])
