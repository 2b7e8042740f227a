"""Exception hierarchy shared by all modules."""


class ContractError(ValueError):
    """An operation was called outside its documented preconditions."""


class CapacityError(ContractError):
    """A register would exceed the configured maximum total dimension."""


class StructureError(ContractError):
    """A unitary does not act as a programmable network on the given program.

    ``violation`` is the distance of the offending output from the nearest
    product state with a data-independent program factor.
    """

    def __init__(self, message: str, violation: float):
        super().__init__(message)
        self.violation = violation


class ArrangementError(ContractError):
    """Program lines activate non-commuting control terms in one layer."""


class InputError(ValueError):
    """A program, gate-set or QCA file is malformed."""
