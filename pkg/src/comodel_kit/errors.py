"""Exception types shared across the package."""


class ComodelKitError(Exception):
    """Base class for all errors raised by comodel_kit."""


class InputError(ComodelKitError):
    """Malformed user input (bad JSON, unknown symbol, wrong arity)."""


class ArityMismatch(InputError):
    pass


class UnknownSymbol(InputError):
    pass


class NotWellFormed(InputError):
    pass


class NotBuiltin(ComodelKitError):
    """An operation needs a built-in theory but got a generic one."""


class NotDyck(ComodelKitError):
    pass


class IsoNotFound(ComodelKitError):
    pass


class TooLarge(ComodelKitError):
    """A size guard (states, objects, depth) would be exceeded."""


class Undetermined(ComodelKitError):
    """A bounded search ran out of budget before deciding."""


class LawViolation(ComodelKitError):
    """Input data breaks a law it is required to satisfy."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class AxiomViolation(LawViolation):
    pass


class NodeNotFound(ComodelKitError):
    pass
