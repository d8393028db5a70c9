from .layout import LayoutWidget, parse_layout
from .manifest import ManifestInfo, parse_manifest
from .model import AppModel, load_app
from .smali import ConstInt, Invoke, Other, SmaliClass, SmaliMethod, parse_smali

__all__ = [
    "AppModel",
    "ConstInt",
    "Invoke",
    "LayoutWidget",
    "ManifestInfo",
    "Other",
    "SmaliClass",
    "SmaliMethod",
    "load_app",
    "parse_layout",
    "parse_manifest",
    "parse_smali",
]
