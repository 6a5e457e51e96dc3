"""Semantic exceptions shared across the package."""


class CylmapsError(Exception):
    """Base class for all package errors."""


class DomainError(CylmapsError, ValueError):
    """An argument lies outside the domain of the requested operation."""


class PreconditionError(CylmapsError, ValueError):
    """A documented precondition of an operation is violated."""


class WrongFamilyError(PreconditionError):
    """The operation is only defined for a different fiber family."""


class DegenerateQuadrupleError(DomainError):
    """Cross-ratio arguments contain a repeated value."""
