"""Exception hierarchy.

Input problems (bad shapes, non-finite entries, points outside the disk)
derive from :class:`InputError`; everything else signals that a numerical
contract could not be met for otherwise valid input.
"""

import numpy as np


class ContractiveError(Exception):
    """Base class for all errors raised by this package."""


class InputError(ContractiveError, ValueError):
    """Malformed or non-finite input, or a dimension mismatch."""


class DomainError(InputError):
    """A point lies outside the open unit disk, or a pole was hit."""


class NotAContractionError(ContractiveError, ValueError):
    """An operation requiring a contraction received something larger."""


class SingularResolventError(ContractiveError, np.linalg.LinAlgError):
    """``Id - conj(w) T`` is numerically singular.

    ``sigma_min`` holds the smallest singular value that was observed.
    """

    def __init__(self, msg, sigma_min):
        super().__init__(msg)
        self.sigma_min = sigma_min


class InconsistentFactorizationError(ContractiveError, ArithmeticError):
    """The Parrott factor equations could not be solved to tolerance."""

    def __init__(self, msg, residual_z, residual_y):
        super().__init__(msg)
        self.residual_z = residual_z
        self.residual_y = residual_y


class NonUniqueCompletionError(ContractiveError, ArithmeticError):
    """A feasibility disk that should have collapsed has positive radius."""
