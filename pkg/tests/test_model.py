import numpy as np
import pytest
from hypothesis import given, settings

from contractive.core import Verdict, is_contraction, numerical_rank, spectral_norm
from contractive.errors import DomainError, InputError
from contractive.model import (
    ModelParameters,
    PrescribedBand,
    build_model_matrix,
    is_sn_class,
    prescribed_superdiagonal,
)
from helpers import omega_lists


def s(w):
    return np.sqrt(1 - abs(w) ** 2)


class TestModelParameters:
    @pytest.mark.parametrize("w", [1.0, 1j, 0.6 + 0.8j, 2.0, complex(np.nan, 0), 1 - 1e-15])
    def test_rejects_outside_disk(self, w):
        with pytest.raises(DomainError):
            ModelParameters((0.1, w))

    def test_rejects_empty(self):
        with pytest.raises(InputError):
            ModelParameters(())

    def test_defects(self):
        p = ModelParameters((0.6, 0.8j))
        np.testing.assert_allclose(p.defects, [0.8, 0.6], atol=1e-15)


class TestBuildModelMatrix:
    def test_two_by_two(self):
        w1, w2 = 0.3 + 0.2j, -0.5j
        expected = np.array([[w1, s(w1) * s(w2)], [0, w2]])
        np.testing.assert_allclose(build_model_matrix([w1, w2]), expected, atol=1e-15)

    def test_three_by_three(self):
        w1, w2, w3 = 0.1 - 0.4j, 0.5 + 0.3j, -0.2
        M = build_model_matrix([w1, w2, w3])
        expected = np.array([
            [w1, s(w1) * s(w2), -np.conj(w2) * s(w1) * s(w3)],
            [0, w2, s(w2) * s(w3)],
            [0, 0, w3],
        ])
        np.testing.assert_allclose(M, expected, atol=1e-15)

    def test_zeros_give_shift(self):
        np.testing.assert_array_equal(build_model_matrix([0, 0, 0]), np.eye(3, k=1))

    def test_single_point(self):
        np.testing.assert_array_equal(build_model_matrix([0.4j]), [[0.4j]])

    def test_repeated_values_swap(self):
        a, b = 0.3 + 0.1j, -0.2j
        M = build_model_matrix([a, b, a, b])
        np.testing.assert_array_equal(M, build_model_matrix([a, b, a, b]))
        assert np.max(np.abs(M - build_model_matrix([b, a, a, b]))) > 1e-3

    def test_domain_error(self):
        with pytest.raises(DomainError):
            build_model_matrix([0.2, 1.0])

    @settings(max_examples=60, deadline=None)
    @given(omega_lists())
    def test_norm_one_and_rank_one_defect(self, omegas):
        M = build_model_matrix(omegas)
        n = len(omegas)
        cert = is_contraction(M)
        assert cert.verdict is Verdict.CONTRACTION
        assert abs(spectral_norm(M) - 1) <= 1e-10
        assert numerical_rank(np.eye(n) - M.conj().T @ M) == 1

    @settings(max_examples=60, deadline=None)
    @given(omega_lists())
    def test_singular_values(self, omegas):
        M = build_model_matrix(omegas)
        # oracle: eigenvalues of M* M, and |det M| from the triangular diagonal
        # compare squares: sqrt amplifies rounding near zero
        sq = np.linalg.eigvalsh(M.conj().T @ M)
        expected = np.sort([np.prod(np.abs(omegas))] + [1.0] * (len(omegas) - 1))
        assert np.max(np.abs(sq - expected**2)) <= 1e-12
        assert abs(np.prod(np.abs(np.diag(M))) - expected[0]) <= 1e-12

    @settings(max_examples=30, deadline=None)
    @given(omega_lists())
    def test_eigenvalues_are_omegas(self, omegas):
        np.testing.assert_array_equal(np.diag(build_model_matrix(omegas)), np.array(omegas))


class TestPrescribedSuperdiagonal:
    def test_zeros(self):
        assert prescribed_superdiagonal([0, 0]).superdiagonal == (1.0,)

    def test_equality_case(self):
        assert prescribed_superdiagonal([0.5, 0.5]).superdiagonal[0] == pytest.approx(0.75, abs=1e-15)

    def test_three_points(self):
        omegas = [0.3, 0.4j, -0.5]
        band = prescribed_superdiagonal(omegas)
        expected = [np.sqrt(0.91) * np.sqrt(0.84), np.sqrt(0.84) * np.sqrt(0.75)]
        np.testing.assert_allclose(band.superdiagonal, expected, atol=1e-15)
        np.testing.assert_allclose(band.superdiagonal, np.diag(build_model_matrix(omegas), 1).real, atol=1e-12)

    def test_needs_two(self):
        with pytest.raises(InputError):
            prescribed_superdiagonal([0.3])

    def test_band_length_checked(self):
        with pytest.raises(InputError):
            PrescribedBand((0.1, 0.2), (0.5, 0.5))


class TestSnClass:
    def test_model_matrix(self):
        ok, report = is_sn_class(build_model_matrix([0.2, 0.5j]))
        assert ok and report.defect_rank == 1

    def test_identity(self):
        ok, report = is_sn_class(np.eye(2))
        assert not ok and not report.spectrum_inside

    def test_scalar_diagonal(self):
        ok, report = is_sn_class(np.diag([0.5, 0.5]))
        assert not ok and report.defect_rank == 2 and report.contraction

    def test_non_square(self):
        with pytest.raises(InputError):
            is_sn_class(np.zeros((2, 3)))
