class LatsheafError(Exception):
    """Base class for every error raised by latsheaf."""


class DuplicateElement(LatsheafError):
    pass


class UnknownElement(LatsheafError):
    pass


class NotALattice(LatsheafError):
    pass


class NotAPartialOrder(NotALattice):
    pass


class NoBounds(LatsheafError):
    pass


class NotDistributive(LatsheafError):
    pass


class NotClosed(LatsheafError):
    """A subset that should be a subalgebra is not closed under some operation."""


class NotCompatible(LatsheafError):
    pass


class NotWellDefined(LatsheafError):
    """Raised when a quotient-level map depends on the chosen representative."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class NotPrime(LatsheafError):
    pass


class NotAPartition(LatsheafError):
    pass


class NotClopen(NotAPartition):
    pass


class FactorNotIndecomposable(LatsheafError):
    pass


class TooLarge(LatsheafError):
    pass


class BadManifest(LatsheafError):
    pass


class BadInput(LatsheafError):
    pass
