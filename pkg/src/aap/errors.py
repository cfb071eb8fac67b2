"""Exception types shared across the package.

Every error raised by the library derives from :class:`AapError` so callers
(CLI, service) can map failures to exit codes and API error payloads in one
place. ``field_path`` identifies the offending field in document-shaped input
when one is known (e.g. ``iterations[2].snapshot.pi``).
"""

from __future__ import annotations


class AapError(Exception):
    """Base class for all library errors."""

    def __init__(self, message: str, *, field_path: str | None = None) -> None:
        super().__init__(message)
        self.field_path = field_path


class RangeViolation(AapError):
    """A numeric value fell outside its permitted range."""


class DegenerateInput(AapError):
    """Input too small to estimate from (fewer than 2 members or 1 rater)."""


class InstrumentInvalid(AapError):
    """An assessment instrument violates its invariants."""


class EmptyInventory(InstrumentInvalid):
    """A data or process inventory holds no entries."""


class UnknownIndexName(AapError):
    """A what-if override referenced an index that does not exist."""


class SchemaVersionMismatch(AapError):
    """A project document declares a schema version this build cannot read."""


class MalformedDocument(AapError):
    """A project document or request body does not match the schema."""


class InvariantViolation(AapError):
    """Stored values disagree with what recomputation from instruments yields."""


class RevisionConflict(AapError):
    """An append carried a stale revision (another writer got there first)."""


class EmptyHistory(AapError):
    """An operation that needs at least one iteration found none."""
