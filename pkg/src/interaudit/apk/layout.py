"""Layout XML parsing and widget classification."""

from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass

from ..errors import ParseError
from ..vocabulary import WidgetKind
from .manifest import ANDROID_NS

# closed classification table; anything not listed falls back to OTHER.
# explicit sets take precedence over the *Button suffix rule, so that
# RadioButton classifies as a categorical choice rather than a button.
_TEXTFIELD_ELEMENTS = {"EditText", "SearchView", "AutoCompleteTextView"}
_CHECKBOX_ELEMENTS = {"CheckBox", "Spinner", "RadioButton", "RadioGroup", "Switch", "RatingBar"}
_VIEW_ELEMENTS = {
    "VideoView", "WebView", "ImageView", "TextView", "RecyclerView",
    "ListView", "ViewPager", "ScrollView",
}


@dataclass(frozen=True)
class LayoutWidget:
    layout_file: str
    element_name: str
    widget_kind: WidgetKind
    resource_id_name: str | None = None
    onclick_handler: str | None = None

    def to_dict(self) -> dict:
        return {
            "layout_file": self.layout_file,
            "element_name": self.element_name,
            "widget_kind": self.widget_kind.value,
            "resource_id_name": self.resource_id_name,
            "onclick_handler": self.onclick_handler,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "LayoutWidget":
        return cls(
            layout_file=data["layout_file"],
            element_name=data["element_name"],
            widget_kind=WidgetKind(data["widget_kind"]),
            resource_id_name=data.get("resource_id_name"),
            onclick_handler=data.get("onclick_handler"),
        )


def classify_element(element_name: str, extra: dict[str, WidgetKind] | None = None) -> WidgetKind:
    # fully-qualified custom widgets classify by their simple name
    simple = element_name.rsplit(".", 1)[-1]
    if extra and simple in extra:
        return extra[simple]
    if simple in _TEXTFIELD_ELEMENTS:
        return WidgetKind.TEXTFIELD
    if simple in _CHECKBOX_ELEMENTS:
        return WidgetKind.CHECKBOX_OR_SPINNER
    if simple in _VIEW_ELEMENTS:
        return WidgetKind.VIEW
    if simple.endswith("Button"):
        return WidgetKind.BUTTON
    return WidgetKind.OTHER


def _id_name(value: str | None) -> str | None:
    if value and value.startswith(("@+id/", "@id/")):
        return value.split("/", 1)[1]
    return None


def parse_layout(
    xml_text: str,
    path: str,
    extra_classes: dict[str, WidgetKind] | None = None,
) -> list[LayoutWidget]:
    """One LayoutWidget per element in a layout file, containers included."""
    try:
        root = ET.fromstring(xml_text)
    except ET.ParseError as exc:
        line, column = exc.position if exc.position else (None, None)
        raise ParseError(
            f"malformed layout: {exc}", path=path, line=line, column=column
        ) from exc
    except ValueError as exc:
        raise ParseError(f"malformed layout: {exc}", path=path) from exc

    widgets = []
    for elem in root.iter():
        name = elem.tag.rsplit("}", 1)[-1]
        widgets.append(
            LayoutWidget(
                layout_file=path,
                element_name=name,
                widget_kind=classify_element(name, extra_classes),
                resource_id_name=_id_name(
                    elem.get(f"{{{ANDROID_NS}}}id") or elem.get("id")
                ),
                onclick_handler=elem.get(f"{{{ANDROID_NS}}}onClick") or elem.get("onClick"),
            )
        )
    return widgets
