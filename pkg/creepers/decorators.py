import functools

from django.core.management.base import CommandError
from graphql import GraphQLError

from surds.exceptions import (
    CreepersError,
    FixtureParseError,
    KindMismatchError,
    PolynomialSyntaxError,
    UnknownFamilyError,
)

USAGE_ERROR = 2
MISMATCH = 3
DOMAIN_ERROR = 4

_USAGE_ERRORS = (FixtureParseError, KindMismatchError, UnknownFamilyError, PolynomialSyntaxError)


def graphql_errors(func):
    @functools.wraps(func)
    def wrapper(root, info, **kwargs):
        try:
            return func(root, info, **kwargs)
        except CreepersError as exc:
            raise GraphQLError(str(exc)) from exc
        except ValueError as exc:
            raise GraphQLError(f"Invalid argument: {exc}") from exc

    return wrapper


def exit_code_for(exc):
    if isinstance(exc, _USAGE_ERRORS):
        return USAGE_ERROR
    return DOMAIN_ERROR


def command_errors(func):
    """Turn engine errors raised inside ``handle`` into CommandErrors with the right exit code."""

    @functools.wraps(func)
    def wrapper(self, *args, **options):
        try:
            return func(self, *args, **options)
        except CreepersError as exc:
            raise CommandError(str(exc), returncode=exit_code_for(exc)) from exc
        except ValueError as exc:
            raise CommandError(str(exc), returncode=USAGE_ERROR) from exc

    return wrapper
