"""Random inputs and independent oracles shared by the test modules."""

import numpy as np
from hypothesis import strategies as st

from contractive.sampling import draw_omegas, rng_for

# filled by test_acceptance, printed by conftest's terminal summary
ACCEPTANCE_LINES = []


def disk_points(max_modulus=0.9):
    """Hypothesis strategy for a point of the disk of radius ``max_modulus``."""
    return st.builds(
        lambda r, t: complex(r * np.cos(t), r * np.sin(t)),
        st.floats(0.0, max_modulus),
        st.floats(0.0, 2 * np.pi),
    )


def omega_lists(min_size=2, max_size=8, max_modulus=0.9):
    return st.lists(disk_points(max_modulus), min_size=min_size, max_size=max_size)


def random_matrix(rng, rows, cols=None):
    cols = rows if cols is None else cols
    return rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))


def oracle_norm(M):
    """Spectral norm via the largest eigenvalue of M* M (no SVD involved)."""
    M = np.asarray(M)
    return float(np.sqrt(max(np.linalg.eigvalsh(M.conj().T @ M)[-1], 0.0)))


def scaled_to_norm(M, norm):
    return M * (norm / np.linalg.svd(M, compute_uv=False)[0])


def random_unitary(rng, n):
    q, r = np.linalg.qr(random_matrix(rng, n))
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_omegas(seed, index, n, radius=0.8):
    return draw_omegas(rng_for(seed, index), n, radius)
