"""Semantic exception hierarchy shared across the package."""


class WelfareaxError(Exception):
    """Base class for all package-specific errors."""


class ProfileParseError(WelfareaxError):
    """Malformed profile text; carries 1-based line and column."""

    def __init__(self, message: str, line: int = 1, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ConfigError(WelfareaxError):
    """Malformed ordering / axiom-instance configuration document."""


class DomainError(WelfareaxError):
    """A value fell outside the domain of a concave transform g."""


class MissingLambda(WelfareaxError):
    """No weight defined for the requested population size."""


class InfeasibleParameters(WelfareaxError):
    """Parameters violate a guard (magnitude ordering, proposition hypothesis, ...)."""


class SizeMismatch(WelfareaxError):
    """Operation requires equal population sizes."""


class MaterializeError(WelfareaxError):
    """Profile too large to expand entry-by-entry."""


class CertificateError(WelfareaxError):
    """Malformed derivation-chain certificate."""
