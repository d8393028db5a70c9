"""Data collection method (DCM) signature database.

A signature names one analytics-service method whose invocation logs
user interaction data.  The category drives default means inference.
The shipped database covers the major services; the JSON format is the
extension point for the rest.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from importlib import resources

from .errors import LexiconError


class DcmCategory(enum.Enum):
    EVENT_LOG = "event_log"
    TIMED_EVENT = "timed_event"
    MOTION_LOG = "motion_log"
    SCREEN_VIEW = "screen_view"


@dataclass(frozen=True)
class DcmSignature:
    service_name: str
    class_pattern: str  # exact dotted class name, or a prefix ending '*'
    method_name: str
    category: DcmCategory
    descriptor_pattern: str | None = None

    def __post_init__(self):
        if not self.class_pattern:
            raise ValueError("class_pattern must be non-empty")

    def matches_class(self, class_name: str) -> bool:
        if self.class_pattern.endswith("*"):
            return class_name.startswith(self.class_pattern[:-1])
        return class_name == self.class_pattern

    def matches(self, target_class: str, target_name: str, target_descriptor: str) -> bool:
        if target_name != self.method_name:
            return False
        if not self.matches_class(target_class):
            return False
        if self.descriptor_pattern is not None and target_descriptor != self.descriptor_pattern:
            return False
        return True

    @property
    def specificity(self) -> int:
        score = 0
        if self.descriptor_pattern is not None:
            score += 2
        if not self.class_pattern.endswith("*"):
            score += 1
        return score

    def to_dict(self) -> dict:
        return {
            "service_name": self.service_name,
            "class_pattern": self.class_pattern,
            "method_name": self.method_name,
            "descriptor_pattern": self.descriptor_pattern,
            "category": self.category.value,
        }


def sigdb_from_list(entries: list[dict]) -> list[DcmSignature]:
    sigs = []
    for entry in entries:
        try:
            sigs.append(
                DcmSignature(
                    service_name=entry["service_name"],
                    class_pattern=entry["class_pattern"],
                    method_name=entry["method_name"],
                    descriptor_pattern=entry.get("descriptor_pattern"),
                    category=DcmCategory(entry["category"]),
                )
            )
        except (KeyError, ValueError, TypeError) as exc:
            raise LexiconError(f"malformed signature entry {entry!r}: {exc}") from exc
    return sigs


def load_sigdb(path) -> list[DcmSignature]:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            entries = json.load(fh)
        except json.JSONDecodeError as exc:
            raise LexiconError(f"{path}: {exc}") from exc
    if not isinstance(entries, list):
        raise LexiconError(f"{path}: signature database must be a JSON list")
    return sigdb_from_list(entries)


def default_sigdb() -> list[DcmSignature]:
    entries = json.loads(
        resources.files("interaudit.data").joinpath("sigdb.json").read_text("utf-8")
    )
    return sigdb_from_list(entries)
