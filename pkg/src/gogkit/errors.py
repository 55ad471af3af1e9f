"""Exception hierarchy; each class maps to a CLI exit code."""


class GogkitError(Exception):
    exit_code = 1


class InputError(GogkitError, ValueError):
    """Malformed or inconsistent input data."""

    exit_code = 1


class BudgetError(GogkitError):
    """An enumeration exceeded its configured size budget."""

    exit_code = 2


class StateError(GogkitError):
    """Operation called on an object in the wrong state (e.g. an overflowed coset table)."""

    exit_code = 1


class DomainError(InputError):
    pass


class UnverifiableError(GogkitError):
    exit_code = 1


class FunctorInapplicable(InputError):
    """Preconditions of the graph-to-complex functor ((T1)/(T2), valences) fail."""
