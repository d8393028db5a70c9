"""Closed vocabulary for user-interaction-data collection claims.

Defines the six interaction data types, the three means of collection,
the standardized claim type, and the fixed-template sentence rendering
and parsing used everywhere else in the toolchain.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .errors import InvalidClaim, ParseError, UnmappedWidgetKind


class InteractionDataType(enum.Enum):
    """The six kinds of user interaction data an app can collect.

    Definition order is the canonical rendering order.
    """

    APP_PRESENTATION = "app presentation"
    BINARY = "binary"
    CATEGORICAL = "categorical"
    USER_INPUT = "user input"
    GESTURE = "gesture"
    COMPOSITE_GESTURE = "composite gesture"

    @property
    def phrase(self) -> str:
        return self.value


class CollectionMeans(enum.Enum):
    """How an interaction is recorded: how often, how long, or how exactly."""

    FREQUENCY = "frequency"
    DURATION = "duration"
    MOTION_DETAILS = "motion details"

    @property
    def phrase(self) -> str:
        return self.value


DATA_TYPE_ORDER: tuple[InteractionDataType, ...] = tuple(InteractionDataType)
MEANS_ORDER: tuple[CollectionMeans, ...] = tuple(CollectionMeans)

_TYPE_BY_PHRASE = {t.phrase: t for t in InteractionDataType}
_MEANS_BY_PHRASE = {m.phrase: m for m in CollectionMeans}


class Provenance(enum.Enum):
    POLICY_DERIVED = "policy_derived"
    EVIDENCE_DERIVED = "evidence_derived"
    CHECKED_STANDARDIZED = "checked_standardized"


@dataclass(frozen=True)
class CollectionClaim:
    """A set of data types and a set of means, with provenance.

    The unit compared by the claim checker.  A claim naming neither a
    data type nor a means carries no information and is rejected.
    """

    data_types: frozenset[InteractionDataType]
    means: frozenset[CollectionMeans]
    provenance: Provenance
    source_refs: tuple[str, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "data_types", frozenset(self.data_types))
        object.__setattr__(self, "means", frozenset(self.means))
        object.__setattr__(self, "source_refs", tuple(self.source_refs))
        if not self.data_types and not self.means:
            raise InvalidClaim("a claim must name at least one data type or means")
        if not self.source_refs and self.provenance is not Provenance.CHECKED_STANDARDIZED:
            raise InvalidClaim(
                f"{self.provenance.value} claims must carry source references"
            )

    def to_dict(self) -> dict:
        return {
            "data_types": [t.phrase for t in sorted_types(self.data_types)],
            "means": [m.phrase for m in sorted_means(self.means)],
            "provenance": self.provenance.value,
            "source_refs": list(self.source_refs),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "CollectionClaim":
        try:
            return cls(
                data_types=frozenset(_TYPE_BY_PHRASE[p] for p in data["data_types"]),
                means=frozenset(_MEANS_BY_PHRASE[p] for p in data["means"]),
                provenance=Provenance(data["provenance"]),
                source_refs=tuple(data.get("source_refs", ())),
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise InvalidClaim(f"malformed claim object: {exc}") from exc


def sorted_types(types) -> list[InteractionDataType]:
    """Data types in canonical enumeration order."""
    return [t for t in DATA_TYPE_ORDER if t in types]


def sorted_means(means) -> list[CollectionMeans]:
    """Means in canonical enumeration order."""
    return [m for m in MEANS_ORDER if m in means]


def _join(phrases: list[str]) -> str:
    if len(phrases) == 1:
        return phrases[0]
    return ", ".join(phrases[:-1]) + " and " + phrases[-1]


def render_claim(claim: CollectionClaim, *, decorate_type=None, decorate_means=None) -> str:
    """Render a claim as one standardized template sentence.

    Data types come first in canonical order with a single trailing
    "interactions"; the means clause is appended when means are present
    and omitted otherwise.  ``decorate_type`` / ``decorate_means`` wrap
    individual phrases (used by the report renderer for highlighting).
    """
    decorate_type = decorate_type or (lambda p, t: p)
    decorate_means = decorate_means or (lambda p, m: p)

    types = sorted_types(claim.data_types)
    means = sorted_means(claim.means)

    if types:
        type_list = _join([decorate_type(t.phrase, t) for t in types])
        sentence = (
            "We collect the following types of user interaction data: "
            f"{type_list} interactions"
        )
        possessive = "their"
    else:
        sentence = "We collect user interaction data"
        possessive = "its"

    if means:
        means_list = _join([decorate_means(m.phrase, m) for m in means])
        sentence += f", along with {possessive} {means_list}"

    return sentence + "."


_TYPED_PREFIX = re.compile(
    r"^\s*we\s+collect\s+the\s+following\s+types\s+of\s+user\s+interaction\s+data\s*:\s*",
    re.IGNORECASE,
)
_BARE_PREFIX = re.compile(
    r"^\s*we\s+collect\s+user\s+interaction\s+data\s*", re.IGNORECASE
)
_MEANS_CLAUSE = re.compile(r",?\s*along\s+with\s+(?:their|its)\s+", re.IGNORECASE)
_AND_SEP = re.compile(r",\s*and\s+|\s+and\s+|,\s*", re.IGNORECASE)
_INTERACTIONS_SUFFIX = re.compile(r"\s*\binteractions?\s*$", re.IGNORECASE)


def _error_span(text: str, token: str) -> tuple[int, int]:
    start = text.lower().find(token.lower())
    if start < 0:
        return (0, len(text))
    return (start, start + len(token))


def _parse_items(segment: str, text: str, table: dict, *, strip_interactions: bool):
    found = set()
    for raw in _AND_SEP.split(segment):
        item = raw.strip().strip(".")
        if strip_interactions:
            item = _INTERACTIONS_SUFFIX.sub("", item)
        item = " ".join(item.split())
        if not item:
            continue
        value = table.get(item.lower())
        if value is None:
            raise ParseError(
                f"unrecognized phrase {item!r} in claim sentence",
                span=_error_span(text, item),
            )
        found.add(value)
    return frozenset(found)


def parse_claim(text: str) -> CollectionClaim:
    """Parse a standardized claim sentence back into a claim.

    Tolerant of case, Oxford commas, and "and" placement; the returned
    claim has provenance CHECKED_STANDARDIZED.  Re-rendering it gives the
    canonical form of the input sentence.
    """
    match = _TYPED_PREFIX.match(text)
    if match:
        rest = text[match.end():]
        has_types = True
    else:
        match = _BARE_PREFIX.match(text)
        if not match:
            token = text.strip().split()[0] if text.strip() else text
            raise ParseError(
                "sentence does not start with the claim template",
                span=_error_span(text, token),
            )
        rest = text[match.end():]
        has_types = False

    parts = _MEANS_CLAUSE.split(rest, maxsplit=1)
    type_segment = parts[0] if has_types else ""
    means_segment = parts[1] if len(parts) > 1 else ""

    if not has_types and parts[0].strip().strip("."):
        leftover = parts[0].strip()
        raise ParseError(
            f"unexpected text {leftover!r} after claim template",
            span=_error_span(text, leftover),
        )

    data_types = _parse_items(type_segment, text, _TYPE_BY_PHRASE, strip_interactions=True)
    means = _parse_items(means_segment, text, _MEANS_BY_PHRASE, strip_interactions=False)

    if not data_types and not means:
        raise ParseError("claim sentence names no data types or means", span=(0, len(text)))

    return CollectionClaim(
        data_types=data_types,
        means=means,
        provenance=Provenance.CHECKED_STANDARDIZED,
    )


class WidgetKind(enum.Enum):
    """UI widget classification used to type collection evidence.

    OTHER covers everything outside the closed table; the element name
    travels separately on the widget record.
    """

    VIEW = "View"
    BUTTON = "Button"
    TEXTFIELD = "Textfield"
    CHECKBOX_OR_SPINNER = "CheckboxOrSpinner"
    GESTURE_DETECTOR = "GestureDetector"
    COMPOSITE_GESTURE_DETECTOR = "CompositeGestureDetector"
    OTHER = "Other"


_WIDGET_DATA_TYPES = {
    WidgetKind.VIEW: InteractionDataType.APP_PRESENTATION,
    WidgetKind.BUTTON: InteractionDataType.BINARY,
    WidgetKind.TEXTFIELD: InteractionDataType.USER_INPUT,
    WidgetKind.CHECKBOX_OR_SPINNER: InteractionDataType.CATEGORICAL,
    WidgetKind.GESTURE_DETECTOR: InteractionDataType.GESTURE,
    WidgetKind.COMPOSITE_GESTURE_DETECTOR: InteractionDataType.COMPOSITE_GESTURE,
}


def widget_kind_to_data_type(kind: WidgetKind, name: str | None = None) -> InteractionDataType:
    """Map a named widget kind to the data type it produces.

    OTHER has no mapping; the caller decides whether to skip or report.
    """
    if kind is WidgetKind.OTHER:
        raise UnmappedWidgetKind(name or "Other")
    return _WIDGET_DATA_TYPES[kind]
