"""Exception types shared across the package.

Validation errors carry a short witness tuple naming the elements that
violate the axiom, so failures are reproducible by hand.
"""


class Error(Exception):
    """Base class for all package errors."""


class ValidationError(Error):
    """An algebraic axiom failed; ``witness`` holds the offending elements."""

    def __init__(self, message, witness=None):
        super().__init__(message if witness is None else f"{message}: witness {witness}")
        self.witness = witness


# lattice axioms
class NotCommutative(ValidationError):
    pass


class NotAssociative(ValidationError):
    pass


class NotIdempotent(ValidationError):
    pass


class BadZero(ValidationError):
    pass


# semiring axioms
class AddNotCommutative(ValidationError):
    pass


class AddNotAssociative(ValidationError):
    pass


class MulNotAssociative(ValidationError):
    pass


class LeftDistFail(ValidationError):
    pass


class RightDistFail(ValidationError):
    pass


class ZeroNotAbsorbing(ValidationError):
    pass


# semimodule axioms
class ModuleAxiomFail(ValidationError):
    pass


class NotCompatible(ValidationError):
    """A partition is not compatible with the operations."""


class NotDistributive(Error):
    """Operation requires a distributive lattice."""


class NotALattice(Error):
    """Operation requires an idempotent (lattice-like) addition."""


class PreconditionFailed(Error):
    pass


class AnnulatorIsEverything(Error):
    """Every element is annihilated, so the quotient would be trivial."""


class SizeLimit(Error):
    """An enumeration exceeded its configured size budget."""


class LimitExceeded(Error):
    """Requested size is beyond the configured hard limit."""


class ParseError(Error):
    def __init__(self, message, line=None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


class Mismatch(Error):
    """Computed values disagree with the expected data file."""


class CatalogMissing(Error):
    pass


class StaleVersion(Error):
    pass
