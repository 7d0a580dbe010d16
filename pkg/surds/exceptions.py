"""Exception hierarchy shared by every app.

Commands map these onto exit codes and the GraphQL layer onto
``GraphQLError``; the engines themselves only ever raise them.
"""


class CreepersError(Exception):
    """Base class for all errors raised by the engines."""


class DomainError(CreepersError):
    """The input lies outside the mathematical domain of an operation."""


class RationalSurdError(DomainError):
    """The radicand (integer or polynomial) is a perfect square."""


class NotADiscriminantError(DomainError):
    """An order-mode seed was requested for D = 2 or 3 (mod 4)."""


class NotQuadraticFunctionFieldError(DomainError):
    """The polynomial has odd degree or a non-square leading coefficient."""


class FamilyConstraintError(DomainError):
    """A family was evaluated outside the parameters it is declared for."""


class NoPeriodError(DomainError):
    """Periodic data was requested from a truncated expansion."""


class InvariantViolation(CreepersError):
    """A state broke the admissibility invariant Q | N - P^2."""


class PolynomialSyntaxError(CreepersError):
    """Text could not be read as a polynomial in canonical form."""


class FixtureParseError(CreepersError):
    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class KindMismatchError(CreepersError):
    """An integer expansion was checked against a polynomial table or vice versa."""


class UnknownFamilyError(CreepersError):
    """No registered family carries the requested name."""
