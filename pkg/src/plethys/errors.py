"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command-line front end:
1 for malformed input, 2 for domain errors, 3 for budget and cap errors.
"""


class PlethysError(Exception):
    exit_code = 2


class SchemaError(PlethysError, ValueError):
    exit_code = 1

    def __init__(self, message, field=None):
        super().__init__(message)
        self.field = field


class DomainError(PlethysError):
    exit_code = 2


class BudgetError(PlethysError):
    exit_code = 3


class DimensionMismatch(DomainError, ValueError):
    pass


class NotIntegerValued(DomainError):
    """Raised when a rational polynomial fails to map the integers into themselves."""

    def __init__(self, witness, value=None):
        self.witness = witness
        self.value = value
        super().__init__(f"not integer-valued: value {value} at {witness}")


class ThetaObstruction(DomainError):
    """A co-operation produced a non-integral product-binomial coefficient."""


class NotWpc(DomainError):
    def __init__(self, verdict):
        self.verdict = verdict
        super().__init__(f"algebra is not WPC: witness {verdict.witness}")


class ActionEscape(DomainError):
    pass


class ClosureEscape(DomainError):
    pass


class ClosureUnbounded(DomainError):
    pass


class RankEscape(DomainError):
    pass


class PrecisionInsufficient(DomainError):
    pass


class ParameterMismatch(DomainError, ValueError):
    pass


class DegreeExceeded(BudgetError):
    pass


class BudgetExceeded(BudgetError):
    pass
