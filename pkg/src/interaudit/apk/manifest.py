"""AndroidManifest.xml parsing (apktool text output)."""

from __future__ import annotations

import re
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from ..errors import ManifestInvalid, ParseError

ANDROID_NS = "http://schemas.android.com/apk/res/android"

_CLASS_NAME = re.compile(r"^[A-Za-z_$][\w$]*(\.[A-Za-z_$][\w$]*)+$")
_PACKAGE_NAME = re.compile(r"^[A-Za-z_][\w]*(\.[A-Za-z_][\w]*)*$")


@dataclass(frozen=True)
class ManifestInfo:
    package_name: str
    activities: frozenset[str]

    def to_dict(self) -> dict:
        return {
            "package_name": self.package_name,
            "activities": sorted(self.activities),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "ManifestInfo":
        return cls(data["package_name"], frozenset(data["activities"]))


def _android_attr(elem, name):
    return elem.get(f"{{{ANDROID_NS}}}{name}") or elem.get(name)


def resolve_class_name(name: str, package: str) -> str:
    if name.startswith("."):
        return package + name
    if "." not in name:
        return f"{package}.{name}"
    return name


def parse_manifest(xml_text: str) -> ManifestInfo:
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        line, column = exc.position if exc.position else (None, None)
        raise ParseError(f"malformed manifest: {exc}", line=line, column=column) from exc
    except ValueError as exc:
        raise ParseError(f"malformed manifest: {exc}") from exc

    package = root.get("package")
    if not package:
        raise ManifestInvalid("manifest has no package attribute")
    if not _PACKAGE_NAME.match(package):
        raise ManifestInvalid(f"invalid package name {package!r}")

    activities = set()
    for elem in root.iter():
        tag = elem.tag.rsplit("}", 1)[-1]
        if tag not in ("activity", "activity-alias"):
            continue
        name = _android_attr(elem, "name")
        if not name:
            continue
        resolved = resolve_class_name(name, package)
        if not _CLASS_NAME.match(resolved):
            raise ManifestInvalid(f"invalid activity name {name!r}")
        activities.add(resolved)

    return ManifestInfo(package_name=package, activities=frozenset(activities))
