"""Shared error type for configuration and parameter handling."""

from __future__ import annotations

__all__ = ["ConfigError"]


class ConfigError(ValueError):
    """A configuration document or override is invalid.

    ``field`` identifies the offending entry as a dotted path when known.
    """

    def __init__(self, message: str, field: str | None = None):
        super().__init__(message if field is None else f"{field}: {message}")
        self.field = field
        self.reason = message
