"""Exception types shared across the package."""

from __future__ import annotations


class GpsError(Exception):
    """Base class for all package errors."""


class SpecError(GpsError):
    """Invalid user input: bad Cartan label, malformed problem spec, violated
    precondition.  The message names the violated invariant."""


class EnumerationCapError(GpsError):
    """A Weyl group enumeration would exceed the configured element cap."""

    def __init__(self, label: str, order: int, cap: int):
        super().__init__(
            f"enumeration too large: |W({label})| = {order} exceeds the cap {cap}"
        )
        self.label = label
        self.order = order
        self.cap = cap


class InvariantViolation(GpsError):
    """An internal structural invariant failed.  This never indicates bad
    input: it means either an implementation bug or a falsified structural
    claim, and must surface loudly."""
