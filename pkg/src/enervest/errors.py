"""Exception hierarchy.

Two families matter for callers: :class:`InputError` covers anything wrong
with user-supplied data or configuration (CLI exit code 2), while
:class:`ComputationError` covers failures that arise inside an otherwise
well-posed computation (CLI exit code 3).
"""

from __future__ import annotations


class EnervestError(Exception):
    """Base class for all package errors."""


class InputError(EnervestError):
    """Invalid input data or configuration; maps to CLI exit code 2."""


class SchemaError(InputError):
    """A required column or configuration key is missing or malformed."""


class ParseError(InputError):
    """A cell or value could not be parsed; carries row/column context."""


class IntegrityError(InputError):
    """A structural constraint is violated (e.g. duplicate panel keys)."""


class DataDomainError(InputError):
    """A value lies outside its documented domain (e.g. investment <= 0)."""


class ComputationError(EnervestError):
    """A computation failed on valid inputs; maps to CLI exit code 3."""


class NoRootError(ComputationError):
    """Root search found no sign change over the admissible bracket."""


class ArbitrageError(ComputationError):
    """Lattice parameters admit arbitrage (risk-neutral probability outside [0, 1])."""


class DomainError(ComputationError):
    """An argument lies outside the mathematical domain of an operation."""


class CollinearityError(ComputationError):
    """Design matrix is rank deficient after absorbing fixed effects."""

    def __init__(self, message: str, variables: tuple[str, ...] = ()):
        super().__init__(message)
        self.variables = variables


class NormalizationError(ComputationError):
    """A normalizing quantity is zero, so a ratio is undefined."""


class IrrAmbiguityWarning(UserWarning):
    """Cash flows change sign more than once; the reported rate is the
    smallest root in the bracket and other roots may exist."""
