import pytest

from appgen import (
    FIREBASE,
    FLURRY,
    bind_listener,
    firebase_log_event,
    smali_class,
    smali_method,
    write_layout,
    write_manifest,
    write_public_xml,
    write_smali,
    write_synthetic_app,
)

from interaudit.apk.model import load_app
from interaudit.errors import NoEvidence
from interaudit.evidence import (
    Registration,
    associate,
    build_evidence_claim,
    corpus_evidence_stats,
    extract_evidence,
    find_custom_analytics_classes,
    find_dcm_invocations,
    find_direct_dcm_invocations,
    find_listener_bindings,
    infer_means,
    wrapper_signatures,
)
from interaudit.sigdb import DcmCategory
from interaudit.vocabulary import (
    CollectionMeans,
    InteractionDataType,
    WidgetKind,
    render_claim,
)

T = InteractionDataType
M = CollectionMeans


def build_app(tmp_path, package, classes, layouts=None, ids=None, activities=None):
    root = tmp_path / "app"
    root.mkdir()
    write_manifest(root, package, activities or [".MainActivity"])
    for name, widgets in (layouts or {}).items():
        write_layout(root, name, widgets)
    if ids:
        write_public_xml(root, ids)
    for class_name, text in classes.items():
        write_smali(root, class_name, text)
    return load_app(root)


class TestInvocations:
    def test_yr_app_has_four_direct_invocations(self, yr_app, sigdb):
        invocations = find_direct_dcm_invocations(yr_app, sigdb)
        assert len(invocations) == 4
        assert all(inv.kind == "direct" for inv in invocations)
        names = {inv.signature.method_name for inv in invocations}
        assert names == {"logEvent", "setCurrentScreen"}

    def test_two_invokes_same_method_get_distinct_sites(self, tmp_path, sigdb):
        app = build_app(
            tmp_path,
            "com.two",
            {
                "com.two.MainActivity": smali_class(
                    "com/two/MainActivity",
                    super_class="Landroid/app/Activity;",
                    methods=[
                        smali_method(
                            "onCreate",
                            "(Landroid/os/Bundle;)V",
                            firebase_log_event() + firebase_log_event(),
                        )
                    ],
                )
            },
        )
        invocations = find_direct_dcm_invocations(app, sigdb)
        assert len(invocations) == 2
        indices = {inv.site.instruction_index for inv in invocations}
        assert len(indices) == 2

    def test_app_without_analytics_is_empty(self, tmp_path, sigdb):
        app = build_app(
            tmp_path,
            "com.none",
            {
                "com.none.MainActivity": smali_class(
                    "com/none/MainActivity",
                    super_class="Landroid/app/Activity;",
                    methods=[smali_method("onCreate", "(Landroid/os/Bundle;)V", [])],
                )
            },
        )
        assert find_direct_dcm_invocations(app, sigdb) == []


class TestCustomAnalytics:
    def _tracker_app(self, tmp_path):
        return build_app(
            tmp_path,
            "com.app",
            {
                "com.app.MainActivity": smali_class(
                    "com/app/MainActivity",
                    super_class="Landroid/app/Activity;",
                    methods=[
                        smali_method(
                            "onCreate",
                            "(Landroid/os/Bundle;)V",
                            [
                                'const-string v0, "opened"',
                                "invoke-static {v0}, Lcom/app/Tracker;->log(Ljava/lang/String;)V",
                            ],
                        )
                    ],
                ),
                "com.app.Tracker": smali_class(
                    "com/app/Tracker",
                    methods=[
                        smali_method(
                            "log",
                            "(Ljava/lang/String;)V",
                            firebase_log_event(),
                            flags="public static",
                        ),
                        smali_method(
                            "helper", "()V", [], flags="private"
                        ),
                    ],
                ),
            },
        )

    def test_wrapper_class_detected(self, tmp_path, sigdb):
        app = self._tracker_app(tmp_path)
        assert find_custom_analytics_classes(app, sigdb) == {"com.app.Tracker"}

    def test_activity_inner_classes_never_qualify(self, yr_app, sigdb):
        assert find_custom_analytics_classes(yr_app, sigdb) == set()

    def test_wrapper_signatures_promote_public_methods(self, tmp_path, sigdb):
        app = self._tracker_app(tmp_path)
        (sig,) = wrapper_signatures(app, sigdb)
        assert sig.class_pattern == "com.app.Tracker"
        assert sig.method_name == "log"
        assert sig.category is DcmCategory.EVENT_LOG

    def test_wrapper_calls_reported_as_via_custom(self, tmp_path, sigdb):
        app = self._tracker_app(tmp_path)
        invocations = find_dcm_invocations(app, sigdb)
        kinds = sorted(inv.kind for inv in invocations)
        assert kinds == ["direct", "via_custom_analytics"]
        wrapped = next(i for i in invocations if i.wrapper_class)
        assert wrapped.site.owner_class == "com.app.MainActivity"
        assert wrapped.wrapper_class == "com.app.Tracker"


class TestBindings:
    def test_yr_app_bindings(self, yr_app):
        bindings = find_listener_bindings(yr_app)
        assert len(bindings) == 3
        by_callback = {b.callback.name: b for b in bindings}
        assert by_callback["onClick"].widget.element_name == "Button"
        assert by_callback["onItemSelected"].widget.element_name == "Spinner"
        assert by_callback["onQueryTextSubmit"].widget.element_name == "SearchView"
        assert all(
            b.registration is Registration.SET_LISTENER_CALL for b in bindings
        )

    def test_xml_onclick_binds_to_activity_method(self, tmp_path):
        app = build_app(
            tmp_path,
            "com.xml",
            {
                "com.xml.MainActivity": smali_class(
                    "com/xml/MainActivity",
                    super_class="Landroid/app/Activity;",
                    methods=[
                        smali_method("onGo", "(Landroid/view/View;)V", []),
                    ],
                )
            },
            layouts={
                "activity_main": [
                    '<Button android:id="@+id/go" android:onClick="onGo"/>'
                ]
            },
            ids={"go": 0x7F0A0001},
        )
        (binding,) = find_listener_bindings(app)
        assert binding.registration is Registration.XML_ONCLICK
        assert binding.callback.name == "onGo"
        assert binding.widget.resource_id_name == "go"

    def test_gesture_detector_attach_yields_gesture_bindings(self, tmp_path):
        listener = smali_class(
            "com/g/MainActivity$1",
            super_class="Landroid/view/GestureDetector$SimpleOnGestureListener;",
            methods=[
                smali_method(
                    "onScroll",
                    "(Landroid/view/MotionEvent;Landroid/view/MotionEvent;FF)Z",
                    [],
                ),
                smali_method(
                    "onDoubleTap", "(Landroid/view/MotionEvent;)Z", []
                ),
            ],
        )
        activity = smali_class(
            "com/g/MainActivity",
            super_class="Landroid/app/Activity;",
            methods=[
                smali_method(
                    "onCreate",
                    "(Landroid/os/Bundle;)V",
                    [
                        "new-instance v1, Lcom/g/MainActivity$1;",
                        "invoke-direct {v1}, Lcom/g/MainActivity$1;-><init>()V",
                        "new-instance v0, Landroid/view/GestureDetector;",
                        "invoke-direct {v0, p0, v1}, Landroid/view/GestureDetector;-><init>"
                        "(Landroid/content/Context;Landroid/view/GestureDetector$OnGestureListener;)V",
                    ],
                )
            ],
        )
        app = build_app(
            tmp_path,
            "com.g",
            {"com.g.MainActivity": activity, "com.g.MainActivity$1": listener},
        )
        bindings = find_listener_bindings(app)
        kinds = {b.callback.name: b.effective_kind() for b in bindings}
        assert kinds == {
            "onScroll": WidgetKind.GESTURE_DETECTOR,
            "onDoubleTap": WidgetKind.COMPOSITE_GESTURE_DETECTOR,
        }
        assert all(
            b.registration is Registration.GESTURE_DETECTOR_ATTACH for b in bindings
        )

    def test_unresolved_receiver_degrades_to_synthetic_kind(self, tmp_path):
        # the receiver comes from a field, not findViewById: no widget,
        # but the binding survives with a callback-derived kind
        activity = smali_class(
            "com/u/MainActivity",
            super_class="Landroid/app/Activity;",
            methods=[
                smali_method(
                    "onCreate",
                    "(Landroid/os/Bundle;)V",
                    [
                        "iget-object v2, p0, Lcom/u/MainActivity;->view:Landroid/view/View;",
                        "new-instance v3, Lcom/u/MainActivity$1;",
                        "invoke-direct {v3}, Lcom/u/MainActivity$1;-><init>()V",
                        "invoke-virtual {v2, v3}, Landroid/view/View;->setOnClickListener"
                        "(Landroid/view/View$OnClickListener;)V",
                    ],
                )
            ],
        )
        listener = smali_class(
            "com/u/MainActivity$1",
            interfaces=["Landroid/view/View$OnClickListener;"],
            methods=[smali_method("onClick", "(Landroid/view/View;)V", [])],
        )
        app = build_app(
            tmp_path,
            "com.u",
            {"com.u.MainActivity": activity, "com.u.MainActivity$1": listener},
        )
        (binding,) = find_listener_bindings(app)
        assert binding.widget is None
        assert binding.effective_kind() is WidgetKind.BUTTON


class TestMeans:
    def test_frequency_is_always_present(self, yr_app, sigdb):
        for inv in find_dcm_invocations(yr_app, sigdb):
            assert M.FREQUENCY in infer_means(yr_app, inv)

    def test_timed_event_adds_duration(self, tmp_path, sigdb):
        app = build_app(
            tmp_path,
            "com.t",
            {
                "com.t.MainActivity": smali_class(
                    "com/t/MainActivity",
                    super_class="Landroid/app/Activity;",
                    methods=[
                        smali_method(
                            "onPause",
                            "()V",
                            [
                                'const-string v0, "read_article"',
                                f"invoke-static {{v0}}, {FLURRY}->endTimedEvent(Ljava/lang/String;)V",
                            ],
                        )
                    ],
                )
            },
        )
        (inv,) = find_dcm_invocations(app, sigdb)
        assert infer_means(app, inv) == frozenset({M.FREQUENCY, M.DURATION})

    def test_time_source_pair_adds_duration(self, tmp_path, sigdb):
        app = build_app(
            tmp_path,
            "com.t2",
            {
                "com.t2.MainActivity": smali_class(
                    "com/t2/MainActivity",
                    super_class="Landroid/app/Activity;",
                    methods=[
                        smali_method(
                            "onStop",
                            "()V",
                            [
                                "invoke-static {}, Ljava/lang/System;->currentTimeMillis()J",
                                "invoke-static {}, Ljava/lang/System;->currentTimeMillis()J",
                            ]
                            + firebase_log_event(),
                        )
                    ],
                )
            },
        )
        (inv,) = find_dcm_invocations(app, sigdb)
        assert M.DURATION in infer_means(app, inv)

    def test_motion_event_forwarded_to_dcm_adds_motion_details(self, tmp_path, sigdb):
        listener = smali_class(
            "com/m/MainActivity$1",
            super_class="Landroid/view/GestureDetector$SimpleOnGestureListener;",
            methods=[
                smali_method(
                    "onScroll",
                    "(Landroid/view/MotionEvent;Landroid/view/MotionEvent;FF)Z",
                    [
                        f"invoke-static {{p0}}, {FIREBASE}->getInstance(Landroid/content/Context;)"
                        f"Lcom/google/firebase/analytics/FirebaseAnalytics;",
                        "move-result-object v0",
                        'const-string v1, "scroll"',
                        f"invoke-virtual {{v0, v1, p1}}, {FIREBASE}->logEvent"
                        "(Ljava/lang/String;Landroid/os/Bundle;)V",
                    ],
                )
            ],
        )
        activity = smali_class(
            "com/m/MainActivity",
            super_class="Landroid/app/Activity;",
            methods=[
                smali_method(
                    "onCreate",
                    "(Landroid/os/Bundle;)V",
                    [
                        "new-instance v1, Lcom/m/MainActivity$1;",
                        "invoke-direct {v1}, Lcom/m/MainActivity$1;-><init>()V",
                        "new-instance v0, Landroid/view/GestureDetector;",
                        "invoke-direct {v0, p0, v1}, Landroid/view/GestureDetector;-><init>"
                        "(Landroid/content/Context;Landroid/view/GestureDetector$OnGestureListener;)V",
                    ],
                )
            ],
        )
        app = build_app(
            tmp_path,
            "com.m",
            {"com.m.MainActivity": activity, "com.m.MainActivity$1": listener},
        )
        records = extract_evidence(app, sigdb)
        (record,) = records
        assert record.data_type is T.GESTURE
        assert M.MOTION_DETAILS in record.means


class TestAssociate:
    def test_yr_app_records(self, yr_app, sigdb):
        records = extract_evidence(yr_app, sigdb)
        assert len(records) == 4
        by_type = {r.data_type: r for r in records}
        assert set(by_type) == {T.APP_PRESENTATION, T.BINARY, T.CATEGORICAL, T.USER_INPUT}
        presentation = by_type[T.APP_PRESENTATION]
        assert presentation.widget is None
        assert presentation.invocation.signature.method_name == "setCurrentScreen"
        assert by_type[T.BINARY].widget.element_name == "Button"

    def test_lifecycle_only_sites_are_app_presentation(self, tmp_path, sigdb):
        app = build_app(
            tmp_path,
            "com.l",
            {
                "com.l.MainActivity": smali_class(
                    "com/l/MainActivity",
                    super_class="Landroid/app/Activity;",
                    methods=[
                        smali_method("onResume", "()V", firebase_log_event())
                    ],
                )
            },
        )
        (record,) = extract_evidence(app, sigdb)
        assert record.data_type is T.APP_PRESENTATION
        assert record.widget is None

    def test_bound_limits_reachability(self, tmp_path, sigdb):
        root = write_synthetic_app(
            tmp_path / "chain", "com.chain", n_helper_classes=0, chain_depth=3
        )
        app = load_app(root)
        # onClick -> Helper0 -> Helper1 -> Helper2 -> logEvent: 4 edges
        assert extract_evidence(app, sigdb, bound=3) == []
        records = extract_evidence(app, sigdb, bound=4)
        (record,) = records
        assert len(record.call_chain) - 1 == 4
        assert record.call_chain[0].name == "onClick"
        assert record.call_chain[-1].name == "logEvent"

    def test_bound_below_one_rejected(self, yr_app, sigdb):
        with pytest.raises(ValueError):
            associate(yr_app, [], [], bound=0)

    def test_records_are_deterministic(self, yr_app, sigdb):
        first = [r.to_dict() for r in extract_evidence(yr_app, sigdb)]
        second = [r.to_dict() for r in extract_evidence(yr_app, sigdb)]
        assert first == second


class TestEvidenceClaim:
    def test_yr_claim_renders_checked_sentence(self, yr_app, sigdb):
        claim = build_evidence_claim(extract_evidence(yr_app, sigdb))
        assert render_claim(claim) == (
            "We collect the following types of user interaction data: "
            "app presentation, binary, categorical and user input interactions, "
            "along with their frequency."
        )

    def test_empty_records_raise(self):
        with pytest.raises(NoEvidence):
            build_evidence_claim([])


class TestStats:
    def test_rows_cover_the_five_ui_types(self, yr_app, sigdb):
        records = extract_evidence(yr_app, sigdb)
        stats = corpus_evidence_stats([("Weather", records)])
        assert stats.total_apps == 1
        assert [row.data_type for row in stats.rows] == [
            T.APP_PRESENTATION, T.BINARY, T.USER_INPUT, T.CATEGORICAL, T.GESTURE,
        ]
        by_type = {row.data_type: row for row in stats.rows}
        assert by_type[T.BINARY].percent_collected == 100.0
        assert by_type[T.BINARY].average_collected == 1
        assert by_type[T.BINARY].top_means[0] == ("frequency", 100.0)
        assert by_type[T.BINARY].top_categories == ["Weather"]
        assert by_type[T.GESTURE].percent_collected == 0.0

    def test_empty_corpus(self):
        stats = corpus_evidence_stats([])
        assert stats.total_apps == 0 and stats.rows == []
