"""Fact-check privacy-policy claims about user interaction data
collection against static-analysis evidence from Android apps."""

from .checker import FactCheckReport, ReportFormat, Verdict, check, render_report
from .errors import (
    EmptyPolicy,
    InterauditError,
    InvalidAppDirectory,
    InvalidClaim,
    LexiconError,
    ManifestInvalid,
    NoEvidence,
    ParseError,
    ProvenanceError,
    UnmappedWidgetKind,
    VagueOnlyPolicy,
)
from .vocabulary import (
    CollectionClaim,
    CollectionMeans,
    InteractionDataType,
    Provenance,
    WidgetKind,
    parse_claim,
    render_claim,
    widget_kind_to_data_type,
)

__version__ = "0.1.0"

__all__ = [
    "CollectionClaim",
    "CollectionMeans",
    "EmptyPolicy",
    "FactCheckReport",
    "InteractionDataType",
    "InterauditError",
    "InvalidAppDirectory",
    "InvalidClaim",
    "LexiconError",
    "ManifestInvalid",
    "NoEvidence",
    "ParseError",
    "Provenance",
    "ProvenanceError",
    "ReportFormat",
    "UnmappedWidgetKind",
    "VagueOnlyPolicy",
    "Verdict",
    "WidgetKind",
    "check",
    "parse_claim",
    "render_claim",
    "render_report",
    "widget_kind_to_data_type",
]
