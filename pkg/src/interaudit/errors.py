"""Exception hierarchy shared across the toolchain."""

from __future__ import annotations


class InterauditError(Exception):
    """Base class for all errors raised by this package."""


class InvalidClaim(InterauditError):
    """A collection claim violates a construction invariant."""


class ParseError(InterauditError):
    """Input text does not match the expected grammar.

    Carries whatever location information the parser could recover:
    ``span`` (character offsets) for claim sentences, ``line``/``column``
    for XML, ``path`` for file-based parsers.
    """

    def __init__(self, message, *, path=None, line=None, column=None, span=None):
        super().__init__(message)
        self.path = path
        self.line = line
        self.column = column
        self.span = span

    def __str__(self):
        msg = super().__str__()
        where = []
        if self.path:
            where.append(str(self.path))
        if self.line is not None:
            where.append(f"line {self.line}")
        if self.column is not None:
            where.append(f"col {self.column}")
        if self.span is not None:
            where.append(f"chars {self.span[0]}..{self.span[1]}")
        if where:
            return f"{msg} ({', '.join(where)})"
        return msg


class UnmappedWidgetKind(InterauditError):
    """A widget kind outside the closed classification table."""

    def __init__(self, name):
        super().__init__(f"no interaction data type for widget kind {name!r}")
        self.name = name


class LexiconError(InterauditError):
    """The lexicon file violates a schema or uniqueness rule."""


class EmptyPolicy(InterauditError):
    """A policy document contains no text after markup stripping."""


class VagueOnlyPolicy(InterauditError):
    """Every matched policy sentence was vague: no types, no means.

    The findings are attached so callers can still report them.
    """

    def __init__(self, findings):
        super().__init__("policy makes only vague collection claims")
        self.findings = list(findings)


class ManifestInvalid(InterauditError):
    """AndroidManifest.xml is missing required attributes."""


class InvalidAppDirectory(InterauditError):
    """The input directory is not an apktool-decoded app."""


class NoEvidence(InterauditError):
    """Evidence extraction produced no records for an app."""


class ProvenanceError(InterauditError):
    """A claim with the wrong provenance was passed to the checker."""
