"""Exception types shared across the package."""

from __future__ import annotations


class InputError(ValueError):
    """Malformed or inconsistent user input."""


class NotFiniteDimensional(InputError):
    """Path enumeration did not terminate within the configured degree bound."""


class UnsupportedAlgebra(RuntimeError):
    """The algebra lacks the idempotent or radical data an operation needs."""


class ConstructionError(RuntimeError):
    """A construction failed to certify its own postconditions."""


class BoundExceeded(RuntimeError):
    """A resolution was truncated before the requested degree."""
