"""Assembly of one app's manifest, layouts, and smali classes."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass, field
from pathlib import Path

from ..errors import InterauditError, InvalidAppDirectory, ParseError
from .layout import LayoutWidget, parse_layout
from .manifest import ManifestInfo, parse_manifest
from .smali import SmaliClass, parse_smali


@dataclass(frozen=True)
class Warning:
    code: str
    path: str
    message: str

    def to_dict(self) -> dict:
        return {"code": self.code, "path": self.path, "message": self.message}


@dataclass
class AppModel:
    """Everything the evidence extractor needs about one app.

    Immutable by convention after load_app returns it.
    """

    manifest: ManifestInfo
    layouts: list[LayoutWidget]
    classes: dict[str, SmaliClass]
    resource_ids: dict[str, int]
    warnings: list[Warning] = field(default_factory=list)

    def widget_by_resource_id(self, numeric_id: int) -> LayoutWidget | None:
        for name, value in self.resource_ids.items():
            if value == numeric_id:
                for widget in self.layouts:
                    if widget.resource_id_name == name:
                        return widget
        return None

    def to_dict(self) -> dict:
        return {
            "manifest": self.manifest.to_dict(),
            "layouts": [w.to_dict() for w in self.layouts],
            "classes": {name: c.to_dict() for name, c in sorted(self.classes.items())},
            "resource_ids": dict(sorted(self.resource_ids.items())),
            "warnings": [w.to_dict() for w in self.warnings],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "AppModel":
        return cls(
            manifest=ManifestInfo.from_dict(data["manifest"]),
            layouts=[LayoutWidget.from_dict(w) for w in data["layouts"]],
            classes={
                name: SmaliClass.from_dict(c) for name, c in data["classes"].items()
            },
            resource_ids={k: int(v) for k, v in data["resource_ids"].items()},
            warnings=[Warning(**w) for w in data.get("warnings", [])],
        )


def _parse_public_xml(xml_text: str) -> dict[str, int]:
    ids = {}
    root = ET.fromstring(xml_text)
    for elem in root.iter("public"):
        if elem.get("type") != "id":
            continue
        name = elem.get("name")
        raw = elem.get("id")
        if not name or not raw:
            continue
        try:
            ids[name] = int(raw, 0)
        except ValueError:
            continue
    return ids


def load_app(directory) -> AppModel:
    """Parse an apktool-decoded directory into an AppModel.

    Per-file parse failures become warnings; only a missing or broken
    manifest is fatal.
    """
    root = Path(directory)
    manifest_path = root / "AndroidManifest.xml"
    if not manifest_path.is_file():
        raise InvalidAppDirectory(f"{root}: no AndroidManifest.xml")

    manifest = parse_manifest(manifest_path.read_text(encoding="utf-8", errors="replace"))

    warnings: list[Warning] = []
    layouts: list[LayoutWidget] = []
    for layout_dir in sorted(root.glob("res/layout*")):
        if not layout_dir.is_dir():
            continue
        for layout_path in sorted(layout_dir.glob("*.xml")):
            rel = str(layout_path.relative_to(root))
            try:
                layouts.extend(
                    parse_layout(
                        layout_path.read_text(encoding="utf-8", errors="replace"), rel
                    )
                )
            except ParseError as exc:
                warnings.append(Warning("layout-parse", rel, str(exc)))

    resource_ids: dict[str, int] = {}
    public_path = root / "res" / "values" / "public.xml"
    if public_path.is_file():
        try:
            resource_ids = _parse_public_xml(
                public_path.read_text(encoding="utf-8", errors="replace")
            )
        except (ET.ParseError, ValueError) as exc:
            warnings.append(
                Warning("public-xml-parse", str(public_path.relative_to(root)), str(exc))
            )

    classes: dict[str, SmaliClass] = {}
    smali_dirs = sorted(p for p in root.glob("smali*") if p.is_dir())
    for smali_dir in smali_dirs:
        for smali_path in sorted(smali_dir.rglob("*.smali")):
            rel = str(smali_path.relative_to(root))
            try:
                parsed = parse_smali(
                    smali_path.read_text(encoding="utf-8", errors="replace"), rel
                )
            except InterauditError as exc:
                warnings.append(Warning("smali-parse", rel, str(exc)))
                continue
            classes[parsed.name] = parsed

    if not layouts:
        warnings.append(Warning("no-layouts", str(root), "no res/layout XML files found"))
    if not classes:
        warnings.append(Warning("no-smali", str(root), "no smali classes found"))

    return AppModel(
        manifest=manifest,
        layouts=layouts,
        classes=classes,
        resource_ids=resource_ids,
        warnings=warnings,
    )
