"""Exceptions raised by the Sarkisov link engine."""

from typing import Optional


class SarkisovError(Exception):
    """Base class for all engine errors."""


class InvalidAmbientError(SarkisovError, ValueError):
    """Ambient Fano data violates the index or degree invariants."""


class CatalogError(SarkisovError):
    """Ambient catalog could not be built or parsed."""

    def __init__(self, message: str, line_number: Optional[int] = None):
        self.line_number = line_number
        if line_number is not None:
            message = f"line {line_number}: {message}"
        super().__init__(message)


class UnknownAmbientError(CatalogError, KeyError):
    """Ambient label is not present in the catalog."""

    def __str__(self):
        return self.args[0] if self.args else "unknown ambient"


class FormulaDomainError(SarkisovError, ValueError):
    """A closed formula was evaluated outside its validity domain."""


class UnsupportedAmbientError(SarkisovError):
    """The requested computation is only defined for other ambients."""


class InvariantViolationError(SarkisovError, ValueError):
    """Input data breaks an invariant the computation relies on."""


class DegeneratePairingError(SarkisovError, ValueError):
    """(-K)^2 pairs to zero with the whole Picard lattice."""


class DivisorParseError(SarkisovError, ValueError):
    """A divisor expression could not be parsed."""

    def __init__(self, message: str, token: str):
        self.token = token
        super().__init__(f"{message}: {token!r}")


class ScanRequestError(SarkisovError, ValueError):
    """A scan request has an invalid (d, g) range."""
