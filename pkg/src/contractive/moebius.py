"""Disk automorphisms ``z -> (w - z) / (1 - conj(w) z)`` on scalars and matrices."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DEFAULT_TOLERANCES, Tolerances, as_matrix, solve_resolvent
from .errors import DomainError, InputError

__all__ = [
    "BOUNDARY_MARGIN",
    "near_boundary",
    "MoebiusParam",
    "moebius_scalar",
    "moebius_matrix",
    "resolvent_condition",
    "check_involution",
    "moebius_norm_identity_residual",
]

BOUNDARY_MARGIN = 1e-3


@dataclass(frozen=True)
class MoebiusParam:
    omega: complex

    def __post_init__(self):
        w = complex(self.omega)
        if not (np.isfinite(w) and abs(w) < 1.0):
            raise DomainError(f"Moebius parameter {w!r} must lie in the open unit disk")
        object.__setattr__(self, "omega", w)

    @classmethod
    def coerce(cls, m) -> "MoebiusParam":
        return m if isinstance(m, cls) else cls(m)


def moebius_scalar(m, z):
    m = MoebiusParam.coerce(m)
    w = m.omega
    z = np.asarray(z, dtype=np.complex128)
    den = 1.0 - np.conj(w) * z
    if np.any(den == 0):
        raise DomainError(f"z = 1/conj({w!r}) is the pole of the transform")
    out = (w - z) / den
    return out[()] if out.ndim == 0 else out


def resolvent_condition(m, T) -> float:
    """``1 / sigma_min(Id - conj(w) T)``."""
    m = MoebiusParam.coerce(m)
    T = as_matrix(T, "T")
    s = np.linalg.svd(np.eye(T.shape[0]) - np.conj(m.omega) * T, compute_uv=False)
    return float(np.inf) if s[-1] == 0 else float(1.0 / s[-1])


def near_boundary(m, T) -> bool:
    """True when ``|w|`` or ``||T||`` is within ``BOUNDARY_MARGIN`` of 1.

    Such inputs are still transformed; callers report
    :func:`resolvent_condition` alongside the result.
    """
    m = MoebiusParam.coerce(m)
    return abs(m.omega) > 1.0 - BOUNDARY_MARGIN or np.linalg.norm(as_matrix(T), 2) > 1.0 - BOUNDARY_MARGIN


def moebius_matrix(m, T, tol: Tolerances = DEFAULT_TOLERANCES) -> np.ndarray:
    """``(w Id - T)(Id - conj(w) T)^{-1}`` by one resolvent solve.

    Both factors are polynomials in ``T`` and commute, so the numerator is
    formed first and then solved against; no inverse is built. Triangular
    input gives triangular output.
    """
    m = MoebiusParam.coerce(m)
    T = as_matrix(T, "T")
    n = T.shape[0]
    if T.shape != (n, n):
        raise InputError(f"T must be square, got shape {T.shape}")
    w = m.omega
    out = solve_resolvent(T, w, w * np.eye(n) - T, tol)
    if not np.any(np.tril(T, -1)):
        out = np.triu(out)
    return out


def check_involution(m, T, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Max-norm of ``M_w(M_w(T)) - T``."""
    T = as_matrix(T, "T")
    twice = moebius_matrix(m, moebius_matrix(m, T, tol), tol)
    return float(np.max(np.abs(twice - T)))


def moebius_norm_identity_residual(m, T, x, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """Residual of ``||x||^2 - ||M_w(T) x||^2 = (1 - |w|^2)(||y||^2 - ||T y||^2)``
    with ``y = (Id - conj(w) T)^{-1} x``."""
    m = MoebiusParam.coerce(m)
    T = as_matrix(T, "T")
    x = np.asarray(x, dtype=np.complex128).reshape(-1)
    w = m.omega
    y = solve_resolvent(T, w, x, tol)
    mx = moebius_matrix(m, T, tol) @ x
    lhs = np.vdot(x, x).real - np.vdot(mx, mx).real
    ty = T @ y
    rhs = (1.0 - abs(w) ** 2) * (np.vdot(y, y).real - np.vdot(ty, ty).real)
    return float(abs(lhs - rhs))
