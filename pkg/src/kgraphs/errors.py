"""Exception types shared across the package."""

from __future__ import annotations


class KGraphError(Exception):
    """Base class for all domain errors raised by this package."""


class NotComposableError(KGraphError):
    """Two paths (or consecutive edges) do not share the required endpoint."""


class EnumerationCapError(KGraphError):
    """A path enumeration would exceed the configured degree or size cap."""


class DualSizeError(KGraphError):
    """Building a dual graph would exceed the vertex-count guard."""


class WordError(KGraphError):
    """A word is not allowable, or inconsistent with the graph's squares."""


class ConnectorError(KGraphError):
    """No connecting path exists between the requested vertices."""


class ParseError(KGraphError):
    """Raised when a k-graph file cannot be parsed.

    `diagnostics` is a list of (line_number, message) pairs covering every
    problem found, not just the first.
    """

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        lines = "; ".join(f"line {n}: {msg}" for n, msg in self.diagnostics)
        super().__init__(lines or "parse error")


class InvalidGraphError(KGraphError):
    """Raised when an operation requires a valid k-graph but validation failed.

    `report` is the ValidationReport listing every violated invariant.
    """

    def __init__(self, report):
        self.report = report
        super().__init__("; ".join(report.problems) or "invalid k-graph")
