"""Executable checks of the uniqueness theorem for model matrices.

Positions in reports, tamper specifications and completion problems are
1-based ``(row, col)`` pairs, matching the usual matrix-entry notation;
everything else is plain 0-based numpy indexing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .core import DEFAULT_TOLERANCES, Tolerances, as_matrix, is_contraction, spectral_norm
from .errors import DomainError, InputError, NonUniqueCompletionError
from .model import ModelParameters, PrescribedBand, build_model_matrix, prescribed_superdiagonal
from .model_space import blaschke_condition_partial
from .moebius import moebius_matrix, moebius_scalar
from .parrott import ParrottBlocks, scalar_feasibility_disk

__all__ = [
    "ADVISORY_MODULUS",
    "MONOTONE_SLACK",
    "CompletionProblem",
    "Perturbation",
    "UniquenessReport",
    "TruncationReport",
    "window_blocks",
    "solve_completion",
    "unique_completion_solver",
    "uniqueness_sweep",
    "fact1_check",
    "fact2_check",
    "phase_normalize",
    "moebius_reduction",
    "truncation_check",
]

# beyond this modulus the defect products get tiny and pass/fail is advisory only
ADVISORY_MODULUS = 0.9
# rounding slack when comparing norms of nested truncations
MONOTONE_SLACK = 1e-12


@dataclass(frozen=True)
class CompletionProblem:
    """Upper-triangular matrix with known band and unknown entries above it.

    ``known_entries`` maps 1-based ``(i, j)`` with ``j - i >= 2`` to values
    that are held fixed; every other such entry is solved for.
    """

    band: PrescribedBand
    known_entries: Mapping[tuple[int, int], complex] = field(default_factory=dict)

    def __post_init__(self):
        n = self.band.n
        for (i, j) in self.known_entries:
            if not (1 <= i and j <= n and j - i >= 2):
                raise InputError(f"known entry ({i}, {j}) must satisfy 1 <= i, j <= {n}, j - i >= 2")

    @property
    def n(self) -> int:
        return self.band.n

    @classmethod
    def from_parameters(cls, p) -> "CompletionProblem":
        return cls(prescribed_superdiagonal(p))

    def initial_matrix(self) -> np.ndarray:
        n = self.n
        T = np.zeros((n, n), dtype=np.complex128)
        T[np.diag_indices(n)] = self.band.diagonal
        T[np.arange(n - 1), np.arange(1, n)] = self.band.superdiagonal
        for (i, j), v in self.known_entries.items():
            T[i - 1, j - 1] = v
        return T


@dataclass(frozen=True)
class Perturbation:
    row: int
    col: int
    epsilon: float
    phase: float
    resulting_norm: float
    verdict: str


@dataclass
class UniquenessReport:
    omegas: tuple[complex, ...]
    solved_matrix: np.ndarray
    max_disk_radius: float
    max_deviation_from_model: float
    perturbation_results: list[Perturbation] = field(default_factory=list)
    advisory: bool = False

    @property
    def all_violations(self) -> bool:
        return all(p.verdict == "VIOLATION" for p in self.perturbation_results)

    @property
    def min_perturbed_norm(self) -> float | None:
        if not self.perturbation_results:
            return None
        return min(p.resulting_norm for p in self.perturbation_results)


@dataclass
class TruncationReport:
    sizes: list[int]
    norms: list[float]
    blaschke_partial: float
    tamper: tuple[int, int, complex] | None = None
    violation_start: int | None = None
    monotone: bool = True
    contract_ok: bool = True


def window_blocks(T: np.ndarray, start: int, size: int) -> ParrottBlocks:
    """Split the principal window ``T[start:start+size, start:start+size]``
    around its top-right corner: ``A`` is the first row without the corner,
    ``C`` the remaining rows without the last column, ``D`` the last column
    below the corner."""
    W = T[start:start + size, start:start + size]
    return ParrottBlocks(W[:1, :-1], W[1:, :-1], W[1:, -1:])


def solve_completion(
    problem: CompletionProblem, tol: Tolerances = DEFAULT_TOLERANCES, strict: bool = True
) -> tuple[np.ndarray, float]:
    """Fill the unknown entries offset by offset, each as the centre of its
    feasibility disk.

    Returns the completed matrix and the largest disk radius met. With
    ``strict`` a radius above ``10 * cert_tol`` raises
    :class:`NonUniqueCompletionError`.
    """
    T = problem.initial_matrix()
    n = problem.n
    limit = 10.0 * tol.cert_tol
    max_radius = 0.0
    for offset in range(2, n):
        for i in range(n - offset):
            if (i + 1, i + 1 + offset) in problem.known_entries:
                continue
            disk = scalar_feasibility_disk(window_blocks(T, i, offset + 1), tol)
            max_radius = max(max_radius, disk.radius)
            if strict and disk.radius > limit:
                raise NonUniqueCompletionError(
                    f"non-unique completion detected at ({i + 1}, {i + 1 + offset}): "
                    f"disk radius {disk.radius:.3e} > {limit:g}"
                )
            T[i, i + offset] = disk.center
    return T, max_radius


def unique_completion_solver(p, tol: Tolerances = DEFAULT_TOLERANCES) -> UniquenessReport:
    """Rebuild the model matrix from its diagonal and superdiagonal alone."""
    p = ModelParameters.coerce(p)
    if p.n < 2:
        raise InputError("the completion problem needs n >= 2")
    if p.max_modulus > 1.0 - 1e-6:
        raise DomainError(f"max |omega| = {p.max_modulus!r} exceeds 1 - 1e-6")
    advisory = p.max_modulus > ADVISORY_MODULUS
    T, radius = solve_completion(CompletionProblem.from_parameters(p), tol, strict=not advisory)
    deviation = float(np.max(np.abs(T - build_model_matrix(p))))
    return UniquenessReport(p.omegas, T, radius, deviation, advisory=advisory)


def uniqueness_sweep(
    p,
    epsilon: float = 1e-2,
    phases: int = 8,
    tol: Tolerances = DEFAULT_TOLERANCES,
    include_superdiagonal: bool = False,
) -> UniquenessReport:
    """Move one entry above the superdiagonal by ``epsilon * e^{i theta}``
    and certify the result, for every such entry and ``phases`` angles.

    ``include_superdiagonal`` additionally pushes each superdiagonal entry
    up by ``epsilon``, which breaks the 2x2 window criterion.
    """
    p = ModelParameters.coerce(p)
    if p.n < 3:
        raise InputError("a sweep needs n >= 3; smaller sizes have no free entries")
    if not epsilon > 0 or phases < 1:
        raise InputError("epsilon must be positive and phases at least 1")
    report = unique_completion_solver(p, tol)
    M = build_model_matrix(p)
    n = p.n
    results = []

    def record(i, j, delta, theta):
        T = M.copy()
        T[i, j] += delta
        cert = is_contraction(T, tol)
        results.append(Perturbation(i + 1, j + 1, float(epsilon), float(theta), cert.norm, cert.verdict.value))

    for i, j in itertools.combinations(range(n), 2):
        if j - i < 2:
            continue
        for l in range(phases):
            theta = 2.0 * np.pi * l / phases
            record(i, j, epsilon * np.exp(1j * theta), theta)
    if include_superdiagonal:
        for i in range(n - 1):
            record(i, i + 1, epsilon, 0.0)
    report.perturbation_results = results
    return report


def _require_omega2_zero(p: ModelParameters) -> None:
    if p.n < 4:
        raise InputError("needs n >= 4")
    if p.omegas[1] != 0:
        raise InputError(f"omega_2 must be exactly 0, got {p.omegas[1]!r}")


def fact1_check(p, tol: Tolerances = DEFAULT_TOLERANCES) -> float:
    """With ``omega_2 = 0``, ``C* C`` for the lower-left block of the model
    matrix is ``diag(0, 0, 1, ..., 1)``; returns the max entrywise deviation."""
    p = ModelParameters.coerce(p)
    _require_omega2_zero(p)
    C = build_model_matrix(p)[1:, :-1]
    expected = np.diag([0.0, 0.0] + [1.0] * (p.n - 3))
    return float(np.max(np.abs(C.conj().T @ C - expected)))


def fact2_check(p, tol: Tolerances = DEFAULT_TOLERANCES) -> bool:
    """With ``omega_2 = 0`` the corner's feasibility disk is ``{0}``."""
    p = ModelParameters.coerce(p)
    _require_omega2_zero(p)
    M = build_model_matrix(p)
    disk = scalar_feasibility_disk(window_blocks(M, 0, p.n), tol)
    limit = 10.0 * tol.cert_tol
    return abs(disk.center) <= limit and disk.radius <= limit and abs(M[0, -1]) <= limit


def phase_normalize(T, tol: Tolerances = DEFAULT_TOLERANCES) -> tuple[np.ndarray, np.ndarray]:
    """Diagonal unitary ``U`` (last entry 1) with a real nonnegative
    superdiagonal in ``U* T U``.

    A zero superdiagonal entry contributes phase 0.
    """
    T = as_matrix(T, "T")
    n = T.shape[0]
    if T.shape != (n, n):
        raise InputError(f"T must be square, got shape {T.shape}")
    if n > 1 and np.max(np.abs(np.tril(T, -1))) > tol.eig_tol:
        raise InputError("T must be upper triangular")
    theta = np.zeros(n)
    for i in range(n - 2, -1, -1):
        t = T[i, i + 1]
        theta[i] = theta[i + 1] + (np.angle(t) if t != 0 else 0.0)
    u = np.exp(1j * theta)
    U = np.diag(u)
    normalized = np.triu(u.conj()[:, None] * T * u[None, :])
    return U, normalized


def moebius_reduction(p, tol: Tolerances = DEFAULT_TOLERANCES) -> dict:
    """Send ``omega_2`` to 0 with the Moebius map and phase-normalize.

    Reports how far the result is from having a zero second diagonal entry,
    the prescribed superdiagonal of the mapped points, and from being the
    model matrix of the mapped points.
    """
    p = ModelParameters.coerce(p)
    if p.n < 2:
        raise InputError("needs n >= 2")
    w2 = p.omegas[1]
    _, N = phase_normalize(moebius_matrix(w2, build_model_matrix(p), tol), tol)
    mapped = ModelParameters(tuple(complex(moebius_scalar(w2, w)) for w in p.omegas))
    band = np.array(prescribed_superdiagonal(mapped).superdiagonal)
    return {
        "second_diagonal": float(abs(N[1, 1])),
        "superdiagonal_deviation": float(np.max(np.abs(np.diag(N, 1) - band))),
        "model_deviation": float(np.max(np.abs(N - build_model_matrix(mapped)))),
    }


def truncation_check(
    omegas: Iterable[complex],
    n_max: int,
    tamper: tuple[int, int, complex] | None = None,
    tol: Tolerances = DEFAULT_TOLERANCES,
) -> TruncationReport:
    """Norms of the leading ``n x n`` truncations of the infinite model matrix.

    ``omegas`` may be any iterable (including an infinite generator); only
    the first ``n_max`` points are read. ``tamper = (i, j, delta)`` adds
    ``delta`` to entry ``(i, j)`` of every truncation that contains it.
    Untampered, every truncation must be a contraction; tampered, every
    truncation of size ``>= max(i, j)`` must violate.
    """
    if n_max < 2:
        raise InputError("n_max must be at least 2")
    head = [complex(w) for w in itertools.islice(omegas, n_max)]
    if len(head) < n_max:
        raise InputError(f"sequence provides {len(head)} points, need {n_max}")
    full = build_model_matrix(head)
    if tamper is not None:
        i, j, delta = int(tamper[0]), int(tamper[1]), complex(tamper[2])
        if not (1 <= i <= n_max and 1 <= j <= n_max):
            raise InputError(f"tamper position ({i}, {j}) outside 1..{n_max}")
        full[i - 1, j - 1] += delta
        tamper = (i, j, delta)
    sizes = list(range(2, n_max + 1))
    norms = [spectral_norm(full[:n, :n]) for n in sizes]
    monotone = all(b >= a - MONOTONE_SLACK for a, b in zip(norms, norms[1:]))
    bound = 1.0 + tol.cert_tol
    violation_start = None
    for n, norm in zip(reversed(sizes), reversed(norms)):
        if norm <= bound:
            break
        violation_start = n
    if tamper is None:
        contract_ok = all(v <= bound for v in norms)
    else:
        window = max(tamper[0], tamper[1])
        contract_ok = all((v > bound) == (n >= window) for n, v in zip(sizes, norms))
    return TruncationReport(
        sizes=sizes,
        norms=norms,
        blaschke_partial=blaschke_condition_partial(head, n_max),
        tamper=tamper,
        violation_start=violation_start,
        monotone=monotone,
        contract_ok=contract_ok and monotone,
    )
