import pytest

from interaudit.errors import EmptyPolicy, LexiconError, VagueOnlyPolicy
from interaudit.lexicon import lexicon_from_dict
from interaudit.policy import (
    Classification,
    PolicyDocument,
    PolicyFormat,
    build_policy_claim,
    corpus_policy_stats,
    find_collection_sentences,
    load_policy,
    split_sentences,
    stats_from_findings,
)
from interaudit.vocabulary import CollectionMeans, InteractionDataType, Provenance

DAMI = (
    "We may work with analytics companies to help us understand how the "
    "Applications are being used, such as the frequency and duration of usage."
)
WISH = (
    "Some examples include: Equipment, Performance, Websites Usage, Viewing "
    "and other Technical Information about your use of our network, services, "
    "products or websites."
)


class TestHtmlExtraction:
    def test_tags_stripped_and_blocks_separated(self):
        doc = load_policy(
            "<html><head><title>x</title><style>p{}</style></head><body>"
            "<h1>Privacy</h1><p>We collect <b>usage statistics</b> such as "
            "how often you open the app.</p>"
            "<script>var analytics = 1;</script>"
            "<p>Contact us.</p></body></html>",
            PolicyFormat.HTML,
            "doc",
        )
        joined = " ".join(doc.sentences)
        assert "We collect usage statistics such as how often you open the app." in joined
        assert "var analytics" not in joined
        assert "p{}" not in joined

    def test_empty_document_rejected(self):
        with pytest.raises(EmptyPolicy):
            load_policy(
                "<html><body><script>x()</script></body></html>",
                PolicyFormat.HTML,
                "doc",
            )

    def test_plain_text_and_bytes_input(self):
        doc = load_policy(f"{DAMI}\n\nWe value privacy.".encode(), PolicyFormat.PLAIN_TEXT, "p")
        assert DAMI in doc.sentences
        assert "We value privacy." in doc.sentences


class TestSentenceSplitting:
    def test_basic_boundaries(self):
        assert split_sentences("First one. Second one! Third?") == [
            "First one.", "Second one!", "Third?",
        ]

    def test_abbreviations_do_not_split(self):
        text = "We share data with partners, e.g. Advertisers and brokers. They use it."
        assert split_sentences(text) == [
            "We share data with partners, e.g. Advertisers and brokers.",
            "They use it.",
        ]

    def test_no_trailing_period(self):
        assert split_sentences("We collect analytics") == ["We collect analytics"]


class TestClassification:
    def _classify(self, lexicon, text):
        doc = PolicyDocument("doc", (text,))
        findings = find_collection_sentences(doc, lexicon)
        return findings[0] if findings else None

    def test_dami_sentence_is_means_only(self, lexicon):
        finding = self._classify(lexicon, DAMI)
        assert finding.classification is Classification.MEANS_ONLY
        assert finding.mentioned_means == frozenset(
            {CollectionMeans.FREQUENCY, CollectionMeans.DURATION}
        )
        assert not finding.mentioned_types

    def test_wish_sentence_is_types_only(self, lexicon):
        finding = self._classify(lexicon, WISH)
        assert finding.classification is Classification.TYPES_ONLY
        assert InteractionDataType.APP_PRESENTATION in finding.mentioned_types
        assert not finding.mentioned_means

    def test_sentence_without_term_is_skipped(self, lexicon):
        # Phrase hits alone must not qualify a sentence.
        assert self._classify(lexicon, "Tap the button twice to exit.") is None

    def test_annotated_fixture_full_agreement(self, lexicon, annotated_sentences):
        doc = PolicyDocument("fx", tuple(r["text"] for r in annotated_sentences))
        findings = {
            f.sentence_index: f for f in find_collection_sentences(doc, lexicon)
        }
        for index, row in enumerate(annotated_sentences):
            finding = findings.get(index)
            got = finding.classification.value if finding else "vague"
            assert got == row["label"], row["text"]

    def test_source_refs_are_stable(self, lexicon):
        doc = PolicyDocument("mydoc", ("Nothing here.", DAMI))
        findings = find_collection_sentences(doc, lexicon)
        assert [f.source_ref for f in findings] == ["mydoc#1"]

    def test_finding_to_dict_uses_canonical_order(self, lexicon):
        finding = self._classify(
            lexicon,
            "Our analytics track the search terms you type and which pages visited.",
        )
        d = finding.to_dict()
        assert d["mentioned_types"] == ["app presentation", "user input"]
        assert d["classification"] == "types_only"


class TestPolicyClaim:
    def test_union_across_findings(self, lexicon):
        doc = PolicyDocument("doc", (DAMI, WISH))
        findings = find_collection_sentences(doc, lexicon)
        claim = build_policy_claim(findings)
        assert claim.provenance is Provenance.POLICY_DERIVED
        assert InteractionDataType.APP_PRESENTATION in claim.data_types
        assert claim.means == frozenset(
            {CollectionMeans.FREQUENCY, CollectionMeans.DURATION}
        )
        assert set(claim.source_refs) == {"doc#0", "doc#1"}

    def test_vague_only_policy_raises(self, lexicon):
        doc = PolicyDocument(
            "doc", ("We use different tools to track the use on our app and website.",)
        )
        findings = find_collection_sentences(doc, lexicon)
        assert findings and findings[0].classification is Classification.VAGUE
        with pytest.raises(VagueOnlyPolicy):
            build_policy_claim(findings)

    def test_no_findings_is_an_error(self):
        with pytest.raises(ValueError):
            build_policy_claim([])


class TestStats:
    def test_counts_partition_findings(self, lexicon, annotated_sentences):
        doc = PolicyDocument("fx", tuple(r["text"] for r in annotated_sentences))
        findings = find_collection_sentences(doc, lexicon)
        stats = stats_from_findings(1, findings)
        counts = stats.classification_counts
        assert counts["both_specified"] == 10
        assert counts["means_only"] == 8
        assert counts["types_only"] == 7
        assert sum(counts.values()) == stats.total_findings == len(findings)
        assert sum(stats.classification_percentages.values()) == pytest.approx(100.0)

    def test_corpus_stats_aggregate(self, lexicon):
        docs = [PolicyDocument("a", (DAMI,)), PolicyDocument("b", (WISH,))]
        stats = corpus_policy_stats(docs, lexicon)
        assert stats.total_documents == 2
        assert stats.classification_counts["means_only"] == 1
        assert stats.classification_counts["types_only"] == 1
        assert stats.term_counts["analytics"] == 1


class TestLexiconValidation:
    def test_duplicate_phrase_rejected(self):
        with pytest.raises(LexiconError):
            lexicon_from_dict(
                {
                    "terms": {"analytics": ["analytics"]},
                    "verbs": {"collect": ["collect"]},
                    "type_phrases": {"binary": ["click"]},
                    "means_phrases": {"frequency": ["click"]},
                }
            )

    def test_longer_phrase_wins(self, lexicon):
        doc = PolicyDocument(
            "d", ("Our analytics record the length of time you spend in menus.",)
        )
        (finding,) = find_collection_sentences(doc, lexicon)
        # "length of time" must match as one phrase, classified under duration.
        assert finding.mentioned_means == frozenset({CollectionMeans.DURATION})
