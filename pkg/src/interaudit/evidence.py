"""Collection evidence extraction from an app model.

Finds analytics invocations (direct and through app-defined wrapper
classes), binds UI widgets to listener callbacks, and associates the two
through bounded call-graph reachability.  Each association becomes one
EvidenceRecord typed by interaction data type and means of collection.
"""

from __future__ import annotations

import enum
import logging
from dataclasses import dataclass
from statistics import mean

from .apk.layout import LayoutWidget
from .apk.model import AppModel
from .apk.smali import ConstInt, Invoke, Other, SmaliMethod, descriptor_arg_types
from .callgraph import CallGraph, MethodRef
from .errors import NoEvidence
from .sigdb import DcmCategory, DcmSignature
from .vocabulary import (
    CollectionClaim,
    CollectionMeans,
    InteractionDataType,
    Provenance,
    WidgetKind,
    sorted_means,
    widget_kind_to_data_type,
)

log = logging.getLogger("interaudit")

DEFAULT_BOUND = 5

LIFECYCLE_METHODS = ("onCreate", "onStart", "onResume", "onPause", "onStop", "onDestroy")

# callback names recognised on listener classes
_SIMPLE_GESTURE_CALLBACKS = {
    "onScroll", "onFling", "onDown", "onShowPress", "onSingleTapUp", "onScale",
    "onScaleBegin", "onScaleEnd",
}
_COMPOSITE_GESTURE_CALLBACKS = {"onDoubleTap", "onDoubleTapEvent", "onLongPress"}
_TOUCH_CALLBACKS = _SIMPLE_GESTURE_CALLBACKS | _COMPOSITE_GESTURE_CALLBACKS | {"onTouch"}

CALLBACK_NAMES = _TOUCH_CALLBACKS | {
    "onClick", "onLongClick", "onCheckedChanged", "onItemSelected",
    "onItemClick", "onItemLongClick", "onEditorAction", "onKey",
    "onFocusChange", "onQueryTextSubmit", "onQueryTextChange",
    "onRatingChanged", "onProgressChanged", "onTextChanged",
    "onScrollStateChanged", "onPageSelected", "onMenuItemClick",
    "onSingleTapConfirmed",
}

# fallback widget kind when the receiver of a listener registration could
# not be resolved to a layout widget: infer from what the callback reports
_CALLBACK_KINDS = {
    "onClick": WidgetKind.BUTTON,
    "onLongClick": WidgetKind.BUTTON,
    "onMenuItemClick": WidgetKind.BUTTON,
    "onKey": WidgetKind.TEXTFIELD,
    "onEditorAction": WidgetKind.TEXTFIELD,
    "onQueryTextSubmit": WidgetKind.TEXTFIELD,
    "onQueryTextChange": WidgetKind.TEXTFIELD,
    "onTextChanged": WidgetKind.TEXTFIELD,
    "onCheckedChanged": WidgetKind.CHECKBOX_OR_SPINNER,
    "onItemSelected": WidgetKind.CHECKBOX_OR_SPINNER,
    "onItemClick": WidgetKind.CHECKBOX_OR_SPINNER,
    "onItemLongClick": WidgetKind.CHECKBOX_OR_SPINNER,
    "onRatingChanged": WidgetKind.CHECKBOX_OR_SPINNER,
    "onProgressChanged": WidgetKind.CHECKBOX_OR_SPINNER,
    "onTouch": WidgetKind.GESTURE_DETECTOR,
    "onScrollStateChanged": WidgetKind.GESTURE_DETECTOR,
    "onPageSelected": WidgetKind.VIEW,
    "onFocusChange": WidgetKind.VIEW,
}

_GESTURE_DETECTOR_CLASSES = {
    "android.view.GestureDetector",
    "android.view.ScaleGestureDetector",
    "androidx.core.view.GestureDetectorCompat",
}

_TIME_SOURCES = {
    ("java.lang.System", "currentTimeMillis"),
    ("java.lang.System", "nanoTime"),
    ("android.os.SystemClock", "elapsedRealtime"),
    ("android.os.SystemClock", "uptimeMillis"),
}

_MOTION_EVENT_DESC = "Landroid/view/MotionEvent;"


def kind_for_callback(callback_name: str) -> WidgetKind:
    if callback_name in _COMPOSITE_GESTURE_CALLBACKS:
        return WidgetKind.COMPOSITE_GESTURE_DETECTOR
    if callback_name in _SIMPLE_GESTURE_CALLBACKS:
        return WidgetKind.GESTURE_DETECTOR
    return _CALLBACK_KINDS.get(callback_name, WidgetKind.VIEW)


@dataclass(frozen=True, order=True)
class InvocationSite:
    owner_class: str
    method_name: str
    method_descriptor: str
    instruction_index: int

    def to_dict(self) -> dict:
        return {
            "owner_class": self.owner_class,
            "method_name": self.method_name,
            "method_descriptor": self.method_descriptor,
            "instruction_index": self.instruction_index,
        }


@dataclass(frozen=True)
class DcmInvocation:
    site: InvocationSite
    signature: DcmSignature
    wrapper_class: str | None = None  # set when reached via customized analytics

    @property
    def kind(self) -> str:
        return "direct" if self.wrapper_class is None else "via_custom_analytics"

    def to_dict(self) -> dict:
        return {
            "site": self.site.to_dict(),
            "signature": self.signature.to_dict(),
            "kind": self.kind,
            "wrapper_class": self.wrapper_class,
        }


class Registration(enum.Enum):
    SET_LISTENER_CALL = "set_listener_call"
    XML_ONCLICK = "xml_onclick"
    GESTURE_DETECTOR_ATTACH = "gesture_detector_attach"


@dataclass(frozen=True)
class ListenerBinding:
    """One widget (or synthetic gesture source) wired to one callback."""

    activity_class: str
    listener_class: str
    callback: MethodRef
    registration: Registration
    widget: LayoutWidget | None = None
    synthetic_kind: WidgetKind = WidgetKind.OTHER

    def effective_kind(self) -> WidgetKind:
        if self.widget is not None:
            return self.widget.widget_kind
        return self.synthetic_kind

    def sort_key(self):
        return (
            self.activity_class,
            self.callback,
            self.registration.value,
            self.widget.resource_id_name or "" if self.widget else "",
        )

    def to_dict(self) -> dict:
        return {
            "activity_class": self.activity_class,
            "listener_class": self.listener_class,
            "callback": self.callback.to_dict(),
            "registration": self.registration.value,
            "widget": self.widget.to_dict() if self.widget else None,
            "synthetic_kind": self.synthetic_kind.value,
        }


@dataclass(frozen=True)
class EvidenceRecord:
    data_type: InteractionDataType
    means: frozenset[CollectionMeans]
    activity_class: str
    invocation: DcmInvocation
    call_chain: tuple[MethodRef, ...]
    widget: LayoutWidget | None = None

    @property
    def record_id(self) -> str:
        site = self.invocation.site
        return (
            f"{self.activity_class}/{self.call_chain[0].name}"
            f"->{site.owner_class}.{site.method_name}@{site.instruction_index}"
        )

    def to_dict(self) -> dict:
        return {
            "record_id": self.record_id,
            "data_type": self.data_type.phrase,
            "means": [m.phrase for m in sorted_means(self.means)],
            "activity_class": self.activity_class,
            "widget": self.widget.to_dict() if self.widget else None,
            "invocation": self.invocation.to_dict(),
            "call_chain": [str(ref) for ref in self.call_chain],
        }


def _iter_sites(app: AppModel):
    for cls in sorted(app.classes):
        for method in app.classes[cls].methods:
            for index, instr in enumerate(method.instructions):
                if isinstance(instr, Invoke):
                    yield method, index, instr


def _best_signature(sigdb, invoke) -> DcmSignature | None:
    best = None
    for sig in sigdb:
        if sig.matches(invoke.target_class, invoke.target_name, invoke.target_descriptor):
            if best is None or sig.specificity > best.specificity:
                best = sig
    return best


def find_direct_dcm_invocations(app: AppModel, sigdb: list[DcmSignature]) -> list[DcmInvocation]:
    """Invoke instructions whose target matches a DCM signature.

    When several signatures match one site, the most specific wins, so a
    site yields exactly one invocation.
    """
    invocations = []
    for method, index, invoke in _iter_sites(app):
        sig = _best_signature(sigdb, invoke)
        if sig is None:
            continue
        invocations.append(
            DcmInvocation(
                site=InvocationSite(
                    method.owner_class, method.name, method.descriptor, index
                ),
                signature=sig,
            )
        )
    return invocations


def _activity_owned(class_name: str, activities: frozenset[str]) -> str | None:
    """The manifest activity owning a class, through inner-class nesting."""
    outer = class_name.split("$", 1)[0]
    if outer in activities:
        return outer
    return None


def find_custom_analytics_classes(app: AppModel, sigdb: list[DcmSignature]) -> set[str]:
    """App classes acting as customized analytics services.

    A class qualifies when it invokes an external DCM (or extends an
    analytics class) and is itself invoked from a declared activity.
    Activities and their inner classes never qualify; they belong to the
    UI side of the association.
    """
    activities = app.manifest.activities
    direct_sites = {
        inv.site.owner_class for inv in find_direct_dcm_invocations(app, sigdb)
    }
    analytics_like = set(direct_sites)
    for cls in app.classes.values():
        parents = list(cls.interfaces) + ([cls.super_class] if cls.super_class else [])
        if any(sig.matches_class(p) for p in parents for sig in sigdb):
            analytics_like.add(cls.name)

    invoked_from_activity = set()
    for cls_name, cls in app.classes.items():
        if _activity_owned(cls_name, activities) is None:
            continue
        for method in cls.methods:
            for instr in method.instructions:
                if isinstance(instr, Invoke) and instr.target_class in app.classes:
                    invoked_from_activity.add(instr.target_class)

    return {
        name
        for name in analytics_like & invoked_from_activity
        if _activity_owned(name, activities) is None
    }


def wrapper_signatures(
    app: AppModel, sigdb: list[DcmSignature], custom_classes: set[str] | None = None
) -> list[DcmSignature]:
    """Promote public methods of customized analytics classes to signatures.

    A wrapper method inherits the category of the DCM it invokes.
    """
    if custom_classes is None:
        custom_classes = find_custom_analytics_classes(app, sigdb)
    promoted = []
    for name in sorted(custom_classes):
        cls = app.classes[name]
        for method in cls.methods:
            if not method.is_public or method.name in ("<init>", "<clinit>"):
                continue
            categories = set()
            for instr in method.instructions:
                if isinstance(instr, Invoke):
                    sig = _best_signature(sigdb, instr)
                    if sig is not None:
                        categories.add(sig.category)
            if not categories:
                continue
            category = sorted(categories, key=lambda c: c.value)[0]
            promoted.append(
                DcmSignature(
                    service_name=f"custom:{name}",
                    class_pattern=name,
                    method_name=method.name,
                    descriptor_pattern=method.descriptor,
                    category=category,
                )
            )
    return promoted


def find_dcm_invocations(app: AppModel, sigdb: list[DcmSignature]) -> list[DcmInvocation]:
    """Direct DCM invocations plus invocations of customized wrappers."""
    custom = find_custom_analytics_classes(app, sigdb)
    invocations = find_direct_dcm_invocations(app, sigdb)
    wrappers = wrapper_signatures(app, sigdb, custom)
    if wrappers:
        for inv in find_direct_dcm_invocations(app, wrappers):
            # only calls into the wrapper count, not the wrapper's own body
            if inv.site.owner_class in custom:
                continue
            invocations.append(
                DcmInvocation(
                    site=inv.site,
                    signature=inv.signature,
                    wrapper_class=inv.signature.class_pattern,
                )
            )
    return invocations


_NEW_INSTANCE = "new-instance"
_MOVE_RESULT_OBJECT = "move-result-object"


def _scan_registers(method: SmaliMethod):
    """Linear register bookkeeping: const values, views, new-instance types."""
    reg_const: dict[int, dict[str, int]] = {}
    reg_view: dict[int, dict[str, int]] = {}
    reg_new: dict[int, dict[str, str]] = {}
    consts: dict[str, int] = {}
    views: dict[str, int] = {}
    news: dict[str, str] = {}
    pending_view_id: int | None = None

    for index, instr in enumerate(method.instructions):
        reg_const[index] = dict(consts)
        reg_view[index] = dict(views)
        reg_new[index] = dict(news)

        if isinstance(instr, ConstInt):
            consts[instr.register] = instr.value
            pending_view_id = None
        elif isinstance(instr, Invoke):
            if instr.target_name == "findViewById" and instr.arg_registers:
                pending_view_id = consts.get(instr.arg_registers[-1])
            else:
                pending_view_id = None
        elif isinstance(instr, Other):
            parts = instr.text.split()
            if parts and parts[0] == _NEW_INSTANCE and len(parts) >= 2:
                reg = parts[1].rstrip(",")
                target = parts[-1]
                if target.startswith("L") and target.endswith(";"):
                    news[reg] = target[1:-1].replace("/", ".")
                pending_view_id = None
            elif parts and parts[0] == _MOVE_RESULT_OBJECT and len(parts) == 2:
                if pending_view_id is not None:
                    views[parts[1]] = pending_view_id
                pending_view_id = None
            else:
                pending_view_id = None
    return reg_const, reg_view, reg_new


_SET_LISTENER_PREFIX = "setOn"
_SET_LISTENER_SUFFIX = "Listener"


def _listener_callbacks(app: AppModel, listener_class: str) -> list[MethodRef]:
    refs = []
    seen = set()
    current = listener_class
    while current in app.classes and current not in seen:
        seen.add(current)
        cls = app.classes[current]
        for method in cls.methods:
            if method.name in CALLBACK_NAMES:
                # owner is the defining class so call-graph lookups line up
                refs.append(MethodRef(current, method.name, method.descriptor))
        current = cls.super_class
    return refs


def _resolve_activity(owner_class: str, app: AppModel) -> str:
    outer = owner_class.split("$", 1)[0]
    if outer in app.manifest.activities:
        return outer
    return outer


def find_listener_bindings(app: AppModel) -> list[ListenerBinding]:
    """Widget-to-callback bindings from code and layout attributes.

    Covers setOn*Listener calls on findViewById results, android:onClick
    layout attributes, and GestureDetector construction.  Unresolvable
    receivers degrade to widget-absent bindings instead of being dropped.
    """
    bindings: list[ListenerBinding] = []

    for cls_name in sorted(app.classes):
        cls = app.classes[cls_name]
        activity = _resolve_activity(cls_name, app)
        for method in cls.methods:
            _, reg_view, reg_new = _scan_registers(method)
            for index, instr in enumerate(method.instructions):
                if not isinstance(instr, Invoke):
                    continue

                name = instr.target_name
                if (
                    name.startswith(_SET_LISTENER_PREFIX)
                    and name.endswith(_SET_LISTENER_SUFFIX)
                    and len(instr.arg_registers) >= 2
                ):
                    receiver, listener_reg = instr.arg_registers[0], instr.arg_registers[1]
                    listener_class = reg_new[index].get(listener_reg)
                    if listener_class is None:
                        log.warning(
                            "unresolved-listener %s %s.%s: listener register %s",
                            cls.source_path, cls_name, method.name, listener_reg,
                        )
                        continue
                    widget = None
                    view_id = reg_view[index].get(receiver)
                    if view_id is not None:
                        widget = app.widget_by_resource_id(view_id)
                    if widget is None:
                        log.warning(
                            "unresolved-widget %s %s.%s: receiver %s of %s",
                            cls.source_path, cls_name, method.name, receiver, name,
                        )
                    for callback in _listener_callbacks(app, listener_class):
                        bindings.append(
                            ListenerBinding(
                                activity_class=activity,
                                listener_class=listener_class,
                                callback=callback,
                                registration=Registration.SET_LISTENER_CALL,
                                widget=widget,
                                synthetic_kind=kind_for_callback(callback.name),
                            )
                        )

                elif (
                    name == "<init>"
                    and instr.target_class in _GESTURE_DETECTOR_CLASSES
                    and instr.arg_registers
                ):
                    listener_class = reg_new[index].get(instr.arg_registers[-1])
                    if listener_class is None:
                        continue
                    for callback in _listener_callbacks(app, listener_class):
                        if callback.name not in _TOUCH_CALLBACKS:
                            continue
                        bindings.append(
                            ListenerBinding(
                                activity_class=activity,
                                listener_class=listener_class,
                                callback=callback,
                                registration=Registration.GESTURE_DETECTOR_ATTACH,
                                widget=None,
                                synthetic_kind=kind_for_callback(callback.name),
                            )
                        )

    # layout android:onClick attributes bind to the activity itself
    for widget in app.layouts:
        if not widget.onclick_handler:
            continue
        for activity in sorted(app.manifest.activities):
            cls = app.classes.get(activity)
            if cls is None:
                continue
            handler = cls.method(widget.onclick_handler)
            if handler is None:
                continue
            bindings.append(
                ListenerBinding(
                    activity_class=activity,
                    listener_class=activity,
                    callback=MethodRef(activity, handler.name, handler.descriptor),
                    registration=Registration.XML_ONCLICK,
                    widget=widget,
                    synthetic_kind=kind_for_callback("onClick"),
                )
            )

    return sorted(bindings, key=ListenerBinding.sort_key)


def _method_of(app: AppModel, ref: MethodRef) -> SmaliMethod | None:
    cls = app.classes.get(ref.owner)
    return cls.method(ref.name, ref.descriptor) if cls else None


def _motion_event_registers(method: SmaliMethod) -> set[str]:
    """Parameter registers holding a MotionEvent argument."""
    regs = set()
    is_static = "static" in method.flags
    slot = 0 if is_static else 1
    for arg in descriptor_arg_types(method.descriptor):
        if arg == _MOTION_EVENT_DESC:
            regs.add(f"p{slot}")
        slot += 2 if arg in ("J", "D") else 1
    return regs


def _invokes_time_sources(method: SmaliMethod) -> int:
    count = 0
    for instr in method.instructions:
        if isinstance(instr, Invoke):
            if (instr.target_class, instr.target_name) in _TIME_SOURCES:
                count += 1
    return count


def _has_field_access(method: SmaliMethod) -> bool:
    for instr in method.instructions:
        if isinstance(instr, Other) and instr.text.split()[0].startswith(("iput", "sput", "iget", "sget")):
            return True
    return False


def infer_means(
    app: AppModel,
    invocation: DcmInvocation,
    callback: MethodRef | None = None,
) -> frozenset[CollectionMeans]:
    """Means of collection for one DCM invocation in its context.

    Frequency is the universal baseline; duration and motion details are
    added from the signature category and bytecode-level heuristics.
    """
    means = {CollectionMeans.FREQUENCY}
    category = invocation.signature.category
    site = invocation.site
    containing = _method_of(
        app, MethodRef(site.owner_class, site.method_name, site.method_descriptor)
    )

    if category is DcmCategory.TIMED_EVENT:
        means.add(CollectionMeans.DURATION)
    if invocation.signature.method_name in ("startTimedEvent", "endTimedEvent"):
        means.add(CollectionMeans.DURATION)
    if containing is not None:
        time_calls = _invokes_time_sources(containing)
        if time_calls >= 2 or (time_calls >= 1 and _has_field_access(containing)):
            means.add(CollectionMeans.DURATION)

    if category is DcmCategory.MOTION_LOG:
        means.add(CollectionMeans.MOTION_DETAILS)
    elif (
        callback is not None
        and callback.name in _TOUCH_CALLBACKS
        and containing is not None
        and site.owner_class == callback.owner
        and site.method_name == callback.name
        and site.method_descriptor == callback.descriptor
    ):
        motion_regs = _motion_event_registers(containing)
        instr = containing.instructions[site.instruction_index]
        if isinstance(instr, Invoke) and motion_regs & set(instr.arg_registers):
            means.add(CollectionMeans.MOTION_DETAILS)

    return frozenset(means)


def associate(
    app: AppModel,
    invocations: list[DcmInvocation],
    bindings: list[ListenerBinding],
    bound: int = DEFAULT_BOUND,
) -> list[EvidenceRecord]:
    """Evidence records from callback-to-DCM reachability.

    One record per (binding, invocation) pair whose DCM call is within
    ``bound`` call edges of the callback.  DCM invocations reachable only
    from activity lifecycle methods are reported as app presentation
    collection: content consumption tied to a screen, not a widget.
    """
    if bound < 1:
        raise ValueError("reachability bound must be >= 1")

    graph = CallGraph(app)
    by_method: dict[MethodRef, list[DcmInvocation]] = {}
    for inv in invocations:
        ref = MethodRef(inv.site.owner_class, inv.site.method_name, inv.site.method_descriptor)
        by_method.setdefault(ref, []).append(inv)

    records: list[EvidenceRecord] = []
    covered_sites: set[InvocationSite] = set()
    seen: set[tuple] = set()

    for binding in sorted(bindings, key=ListenerBinding.sort_key):
        kind = binding.effective_kind()
        if kind is WidgetKind.OTHER:
            log.warning(
                "unmapped-widget %s: skipping binding on %s element",
                binding.activity_class,
                binding.widget.element_name if binding.widget else "?",
            )
            continue
        data_type = widget_kind_to_data_type(kind)
        chains = graph.reachable(binding.callback, bound - 1)
        for ref in sorted(chains):
            for inv in sorted(by_method.get(ref, ()), key=lambda i: i.site):
                key = (binding.sort_key(), inv.site)
                if key in seen:
                    continue
                seen.add(key)
                site_invoke = app.classes[ref.owner].method(ref.name, ref.descriptor)
                instr = site_invoke.instructions[inv.site.instruction_index]
                dcm_ref = MethodRef(
                    instr.target_class, instr.target_name, instr.target_descriptor
                )
                records.append(
                    EvidenceRecord(
                        data_type=data_type,
                        means=infer_means(app, inv, binding.callback),
                        activity_class=binding.activity_class,
                        widget=binding.widget,
                        invocation=inv,
                        call_chain=chains[ref] + (dcm_ref,),
                    )
                )
                covered_sites.add(inv.site)

    # screen/content consumption: DCMs reachable only from lifecycle methods
    lifecycle_seen: set[tuple[str, InvocationSite]] = set()
    for activity in sorted(app.manifest.activities):
        cls = app.classes.get(activity)
        if cls is None:
            continue
        for lifecycle_name in LIFECYCLE_METHODS:
            method = cls.method(lifecycle_name)
            if method is None:
                continue
            start = MethodRef(activity, method.name, method.descriptor)
            chains = graph.reachable(start, bound - 1)
            for ref in sorted(chains):
                for inv in sorted(by_method.get(ref, ()), key=lambda i: i.site):
                    if inv.site in covered_sites:
                        continue
                    key = (activity, inv.site)
                    if key in lifecycle_seen:
                        continue
                    lifecycle_seen.add(key)
                    site_invoke = app.classes[ref.owner].method(ref.name, ref.descriptor)
                    instr = site_invoke.instructions[inv.site.instruction_index]
                    dcm_ref = MethodRef(
                        instr.target_class, instr.target_name, instr.target_descriptor
                    )
                    records.append(
                        EvidenceRecord(
                            data_type=InteractionDataType.APP_PRESENTATION,
                            means=infer_means(app, inv),
                            activity_class=activity,
                            widget=None,
                            invocation=inv,
                            call_chain=chains[ref] + (dcm_ref,),
                        )
                    )

    return records


def extract_evidence(
    app: AppModel, sigdb: list[DcmSignature], bound: int = DEFAULT_BOUND
) -> list[EvidenceRecord]:
    """Full per-app pipeline: invocations, bindings, association."""
    invocations = find_dcm_invocations(app, sigdb)
    bindings = find_listener_bindings(app)
    return associate(app, invocations, bindings, bound)


def build_evidence_claim(records: list[EvidenceRecord]) -> CollectionClaim:
    if not records:
        raise NoEvidence("no collection evidence records")
    types = frozenset(r.data_type for r in records)
    means = frozenset().union(*(r.means for r in records))
    return CollectionClaim(
        data_types=types,
        means=means,
        provenance=Provenance.EVIDENCE_DERIVED,
        source_refs=tuple(r.record_id for r in records),
    )


_STATS_ROWS = (
    (WidgetKind.VIEW, "View (Presentation)"),
    (WidgetKind.BUTTON, "Button (Binary)"),
    (WidgetKind.TEXTFIELD, "Textfield (Input)"),
    (WidgetKind.CHECKBOX_OR_SPINNER, "Checkbox & Spinner (Categorical)"),
    (WidgetKind.GESTURE_DETECTOR, "GestureDetector (Gesture)"),
)
_COMPOSITE_ROW = (WidgetKind.COMPOSITE_GESTURE_DETECTOR, "Composite gesture")


@dataclass(frozen=True)
class EvidenceStatsRow:
    label: str
    data_type: InteractionDataType
    percent_collected: float
    average_collected: int
    top_means: list[tuple[str, float]]
    top_categories: list[str]

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "data_type": self.data_type.phrase,
            "percent_collected": self.percent_collected,
            "average_collected": self.average_collected,
            "top_means": [{"means": m, "percent": p} for m, p in self.top_means],
            "top_categories": list(self.top_categories),
        }


@dataclass(frozen=True)
class EvidenceStats:
    total_apps: int
    rows: list[EvidenceStatsRow]

    def to_dict(self) -> dict:
        return {"total_apps": self.total_apps, "rows": [r.to_dict() for r in self.rows]}


def corpus_evidence_stats(
    apps: list[tuple[str, list[EvidenceRecord]]],
    include_composite: bool = False,
) -> EvidenceStats:
    """Per-UI-type collection statistics across a corpus.

    "Average # collected" is the mean record count over the apps that
    collect that type, rounded to an integer.
    """
    if not apps:
        return EvidenceStats(total_apps=0, rows=[])

    rows = []
    row_specs = _STATS_ROWS + ((_COMPOSITE_ROW,) if include_composite else ())
    for kind, label in row_specs:
        data_type = widget_kind_to_data_type(kind)
        collecting = []
        for category, records in apps:
            matching = [r for r in records if r.data_type is data_type]
            if matching:
                collecting.append((category, matching))
        percent = 100.0 * len(collecting) / len(apps)
        average = round(mean(len(m) for _, m in collecting)) if collecting else 0

        means_share = []
        for m in CollectionMeans:
            with_means = sum(
                1 for _, matching in collecting if any(m in r.means for r in matching)
            )
            if collecting and with_means:
                means_share.append((m.phrase, 100.0 * with_means / len(collecting)))
        means_share.sort(key=lambda kv: (-kv[1], kv[0]))

        category_counts: dict[str, int] = {}
        for category, _ in collecting:
            category_counts[category] = category_counts.get(category, 0) + 1
        top_categories = [
            c for c, _ in sorted(category_counts.items(), key=lambda kv: (-kv[1], kv[0]))[:3]
        ]

        rows.append(
            EvidenceStatsRow(
                label=label,
                data_type=data_type,
                percent_collected=percent,
                average_collected=average,
                top_means=means_share[:2],
                top_categories=top_categories,
            )
        )
    return EvidenceStats(total_apps=len(apps), rows=rows)
