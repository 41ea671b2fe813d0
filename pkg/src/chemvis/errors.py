"""Exception types shared across the package."""


class ChemvisError(Exception):
    """Base class for every error this package raises on purpose."""


class EmptyInput(ChemvisError):
    """Empty or whitespace-only input where content is required."""


class UnknownElement(ChemvisError):
    """A token that looks like an element symbol but is not in the periodic table."""


class MalformedFormula(ChemvisError):
    """Formula text that cannot be parsed (unbalanced groups, zero counts, stray characters)."""


class UnsupportedFormat(ChemvisError):
    """Document format the ingestor does not handle."""


class MalformedDocument(ChemvisError):
    """Structured document that fails to parse."""


class EmptyDocument(ChemvisError):
    """Zero-byte or whitespace-only document payload."""


class StorageCorrupt(ChemvisError):
    """Corpus store files that cannot be read back."""


class UnknownDocument(ChemvisError):
    """Document id not present in the store."""


class ExternalServiceError(ChemvisError):
    """Network or HTTP failure talking to the external compound service."""


class NotFound(ChemvisError):
    """Identifier unknown to the external compound service."""


class InvalidWeights(ChemvisError, ValueError):
    """Similarity weights that are negative or sum to zero."""


class PayloadTooLarge(ChemvisError):
    """Upload body exceeding the configured size cap."""
