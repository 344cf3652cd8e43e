"""Blaschke products, the Takenaka-Malmquist-Walsh basis and circle quadrature.

The compressed shift's matrix is recovered here from H^2 inner products,
independently of the closed-form entries in :mod:`contractive.model`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .errors import DomainError, InputError
from .model import ModelParameters

__all__ = [
    "LOW_ACCURACY_MODULUS",
    "LowAccuracyWarning",
    "TMWBasis",
    "QuadratureGrid",
    "blaschke_factor",
    "blaschke_product",
    "tmw_eval",
    "gram_matrix",
    "compressed_shift_by_quadrature",
    "blaschke_condition_partial",
    "nodes_for_tolerance",
]

LOW_ACCURACY_MODULUS = 0.95
_POLE_EPS = 1e-15


class LowAccuracyWarning(UserWarning):
    """Zeros close to the circle slow down the quadrature."""


def _check_point(w: complex) -> complex:
    w = complex(w)
    if not abs(w) < 1.0:
        raise DomainError(f"Blaschke zero {w!r} is not inside the open unit disk")
    return w


def _denominator(w: complex, z):
    den = 1.0 - np.conj(w) * z
    if np.any(np.abs(den) < _POLE_EPS):
        raise DomainError(f"evaluation at the pole 1/conj({w!r})")
    return den


def blaschke_factor(w: complex, z):
    """``(z - w) / (1 - conj(w) z)``; ``z`` may be an array."""
    w = _check_point(w)
    z = np.asarray(z, dtype=np.complex128)
    out = (z - w) / _denominator(w, z)
    return out[()] if out.ndim == 0 else out


def blaschke_product(p, z):
    """Finite Blaschke product with zeros ``p.omegas``."""
    p = ModelParameters.coerce(p)
    z = np.asarray(z, dtype=np.complex128)
    out = np.ones_like(z)
    for w in p.omegas:
        out = out * blaschke_factor(w, z)
    return out[()] if np.ndim(out) == 0 else out


@dataclass(frozen=True)
class TMWBasis:
    """Orthonormal basis ``phi_1..phi_n`` of the model space of a finite Blaschke product.

    ``phi_k`` is the partial product of the first ``k - 1`` factors times the
    normalized Cauchy kernel at ``omega_k``.
    """

    params: ModelParameters

    @classmethod
    def from_omegas(cls, omegas) -> "TMWBasis":
        return cls(ModelParameters.coerce(omegas))

    @property
    def n(self) -> int:
        return self.params.n

    def evaluate_all(self, z) -> np.ndarray:
        """Rows ``phi_1(z), ..., phi_n(z)`` stacked into an ``(n, len(z))`` array."""
        z = np.atleast_1d(np.asarray(z, dtype=np.complex128))
        s = self.params.defects
        rows = np.empty((self.n, z.size), dtype=np.complex128)
        partial = np.ones_like(z)
        for k, w in enumerate(self.params.omegas):
            den = _denominator(w, z)
            rows[k] = partial * (s[k] / den)
            partial = partial * ((z - w) / den)
        return rows


def tmw_eval(basis: TMWBasis, k: int, z):
    """Evaluate the ``k``-th basis function (1-based) at ``z``."""
    if not 1 <= k <= basis.n:
        raise InputError(f"basis index {k} out of range 1..{basis.n}")
    params = ModelParameters(basis.params.omegas[:k])
    out = TMWBasis(params).evaluate_all(z)[k - 1]
    return out[0] if np.ndim(z) == 0 else out.reshape(np.shape(z))


@dataclass(frozen=True)
class QuadratureGrid:
    """``N`` equispaced nodes on the unit circle with weights ``1/N``."""

    N: int

    def __post_init__(self):
        if int(self.N) != self.N or self.N < 4:
            raise InputError(f"quadrature needs an integer N >= 4, got {self.N!r}")

    @cached_property
    def nodes(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.N) / self.N)

    @property
    def weights(self) -> np.ndarray:
        return np.full(self.N, 1.0 / self.N)


def nodes_for_tolerance(omegas: Sequence[complex], target_tol: float = 1e-12) -> int:
    """Rule-of-thumb node count for a geometric trapezoid error of ``target_tol``."""
    omegas = list(omegas)
    rho = max((abs(complex(w)) for w in omegas), default=0.0) + 1e-3
    return max(128, math.ceil(math.log(target_tol) / math.log(rho)) + 4 * len(omegas))


def _warn_if_low_accuracy(basis: TMWBasis) -> None:
    if basis.params.max_modulus >= LOW_ACCURACY_MODULUS:
        warnings.warn(
            f"max |omega| = {basis.params.max_modulus:.4f} >= {LOW_ACCURACY_MODULUS}; "
            "quadrature accuracy degrades near the circle",
            LowAccuracyWarning,
            stacklevel=3,
        )


def _pairing(left: np.ndarray, right: np.ndarray, N: int) -> np.ndarray:
    # pairwise np.sum along a contiguous axis: fixed reduction tree, no BLAS
    return (left[:, None, :] * right.conj()[None, :, :]).sum(axis=-1) / N


def gram_matrix(basis: TMWBasis, grid: QuadratureGrid) -> np.ndarray:
    """``G[i, j] = (1/N) sum_l phi_i(z_l) conj(phi_j(z_l))``."""
    _warn_if_low_accuracy(basis)
    phi = basis.evaluate_all(grid.nodes)
    return _pairing(phi, phi, grid.N)


def compressed_shift_by_quadrature(basis: TMWBasis, grid: QuadratureGrid) -> np.ndarray:
    """Entry ``(i, j)`` is the discrete H^2 pairing ``<z phi_i, phi_j>``.

    This is the upper-triangular model matrix, i.e. the transpose of the
    compressed shift's matrix in the column convention ``<S phi_j, phi_i>``;
    singular values and contractivity are the same for both. Pairing against
    basis functions of the model space applies the compression, so no
    projection is formed.
    """
    _warn_if_low_accuracy(basis)
    z = grid.nodes
    phi = basis.evaluate_all(z)
    return _pairing(z * phi, phi, grid.N)


def blaschke_condition_partial(omegas: Sequence[complex], n: int) -> float:
    """``sum_{k<=n} (1 - |omega_k|)`` over the first ``n`` points."""
    if n < 1:
        raise InputError("n must be at least 1")
    head = [complex(w) for w in list(omegas)[:n]]
    if len(head) < n:
        raise InputError(f"need {n} points, got {len(head)}")
    moduli = np.abs(np.array(head))
    if np.any(moduli >= 1.0):
        raise DomainError("all points must lie inside the open unit disk")
    return float(np.sum(1.0 - moduli))
