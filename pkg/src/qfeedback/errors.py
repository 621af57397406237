"""Exception types shared across the package."""

from __future__ import annotations


class DimensionError(ValueError):
    """Matrix or vector shapes are incompatible with the requested operation."""


class NotHermitianError(ValueError):
    """A matrix required to be Hermitian is not, beyond tolerance."""


class NotUnitaryError(ValueError):
    """A matrix required to be unitary is not, beyond tolerance."""


class CompletenessError(ValueError):
    """A set of measurement operators violates sum(M_k^dag M_k) = I."""


class DegenerateOutcomeError(ValueError):
    """Conditioning on an outcome whose probability is numerically zero."""


class NotDpcError(ValueError):
    """Measurement does not admit asymptotic density-to-pure control."""


class NotStabilizableError(ValueError):
    """Target pure state fails the feedback stabilizability condition."""


class NotScalarUnitaryError(ValueError):
    """Operators are not all scalar multiples of unitaries."""


class FormMismatchError(ValueError):
    """Diagonalized two-outcome pair cannot be permuted into the singular
    complementary pattern needed for finite-time synthesis.

    Carries the offending diagonals so callers can report them.
    """

    def __init__(self, message: str, alphas=None, betas=None):
        super().__init__(message)
        self.alphas = alphas
        self.betas = betas


class PlanExhaustedError(ValueError):
    """A fixed feedback plan has fewer steps than the simulation asked for."""
