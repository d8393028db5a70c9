"""Privacy-policy ingestion, sentence matching, and claim synthesis."""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from html.parser import HTMLParser

from .errors import EmptyPolicy, VagueOnlyPolicy
from .lexicon import Lexicon
from .vocabulary import (
    CollectionClaim,
    CollectionMeans,
    InteractionDataType,
    Provenance,
    sorted_means,
    sorted_types,
)


class PolicyFormat(enum.Enum):
    HTML = "html"
    PLAIN_TEXT = "text"


@dataclass(frozen=True)
class PolicyDocument:
    doc_id: str
    sentences: tuple[str, ...]

    def numbered(self):
        return list(enumerate(self.sentences))


class Classification(enum.Enum):
    BOTH_SPECIFIED = "both_specified"
    MEANS_ONLY = "means_only"
    TYPES_ONLY = "types_only"
    VAGUE = "vague"


@dataclass(frozen=True)
class SentenceFinding:
    """One policy sentence that matched the collection lexicon."""

    doc_id: str
    sentence_index: int
    sentence: str
    matched_terms: frozenset[str]
    matched_verbs: frozenset[str]
    mentioned_types: frozenset[InteractionDataType]
    mentioned_means: frozenset[CollectionMeans]
    classification: Classification

    @property
    def source_ref(self) -> str:
        return f"{self.doc_id}#{self.sentence_index}"

    def to_dict(self) -> dict:
        return {
            "doc_id": self.doc_id,
            "sentence_index": self.sentence_index,
            "sentence": self.sentence,
            "matched_terms": sorted(self.matched_terms),
            "matched_verbs": sorted(self.matched_verbs),
            "mentioned_types": [t.phrase for t in sorted_types(self.mentioned_types)],
            "mentioned_means": [m.phrase for m in sorted_means(self.mentioned_means)],
            "classification": self.classification.value,
        }


_BLOCK_TAGS = {
    "p", "div", "li", "ul", "ol", "br", "tr", "td", "th", "table",
    "h1", "h2", "h3", "h4", "h5", "h6", "section", "article", "header",
    "footer", "blockquote", "dt", "dd",
}
_SKIP_TAGS = {"script", "style", "head", "noscript"}


class _TextExtractor(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.blocks: list[list[str]] = [[]]
        self._skip_depth = 0

    def _break(self):
        if self.blocks[-1]:
            self.blocks.append([])

    def handle_starttag(self, tag, attrs):
        if tag in _SKIP_TAGS:
            self._skip_depth += 1
        elif tag in _BLOCK_TAGS:
            self._break()

    def handle_endtag(self, tag):
        if tag in _SKIP_TAGS and self._skip_depth > 0:
            self._skip_depth -= 1
        elif tag in _BLOCK_TAGS:
            self._break()

    def handle_data(self, data):
        if self._skip_depth == 0 and data.strip():
            self.blocks[-1].append(data)

    def text_blocks(self) -> list[str]:
        out = []
        for block in self.blocks:
            text = " ".join(" ".join(block).split())
            if text:
                out.append(text)
        return out


# a boundary is terminal punctuation + whitespace + capital/digit,
# unless the punctuation belongs to a known abbreviation
_ABBREVIATIONS = {
    "e.g.", "i.e.", "etc.", "cf.", "vs.", "al.", "no.", "fig.",
    "dr.", "mr.", "mrs.", "ms.", "st.", "inc.", "ltd.", "co.",
}
_BOUNDARY = re.compile(r"[.!?]+(?=\s+[A-Z0-9])")


def split_sentences(text: str) -> list[str]:
    sentences = []
    start = 0
    for match in _BOUNDARY.finditer(text):
        end = match.end()
        preceding = text[start:end].rsplit(None, 1)
        last_word = preceding[-1].lower() if preceding else ""
        if last_word in _ABBREVIATIONS:
            continue
        sentence = text[start:end].strip()
        if sentence:
            sentences.append(sentence)
        start = end
    tail = text[start:].strip()
    if tail:
        sentences.append(tail)
    return sentences


def load_policy(data: bytes | str, format: PolicyFormat, doc_id: str) -> PolicyDocument:
    """Decode a policy file into markup-free, sentence-segmented text."""
    if isinstance(data, bytes):
        text = data.decode("utf-8", errors="replace")
    else:
        text = data

    if format is PolicyFormat.HTML:
        extractor = _TextExtractor()
        extractor.feed(text)
        extractor.close()
        blocks = extractor.text_blocks()
    else:
        blocks = [" ".join(line.split()) for line in re.split(r"\n\s*\n", text)]
        blocks = [b for b in blocks if b]

    sentences = []
    for block in blocks:
        sentences.extend(split_sentences(block))

    if not sentences:
        raise EmptyPolicy(f"policy {doc_id!r} contains no text")
    return PolicyDocument(doc_id=doc_id, sentences=tuple(sentences))


def _classify(types, means) -> Classification:
    if types and means:
        return Classification.BOTH_SPECIFIED
    if means:
        return Classification.MEANS_ONLY
    if types:
        return Classification.TYPES_ONLY
    return Classification.VAGUE


def find_collection_sentences(doc: PolicyDocument, lexicon: Lexicon) -> list[SentenceFinding]:
    """Findings for every sentence matching at least one term group.

    Verb matches are recorded but never qualify a sentence on their own;
    verbs like "use" are too common outside collection statements.
    """
    findings = []
    for index, sentence in doc.numbered():
        terms = lexicon.match_terms(sentence)
        if not terms:
            continue
        verbs = lexicon.match_verbs(sentence)
        types = frozenset(lexicon.match_types(sentence))
        means = frozenset(lexicon.match_means(sentence))
        findings.append(
            SentenceFinding(
                doc_id=doc.doc_id,
                sentence_index=index,
                sentence=sentence,
                matched_terms=frozenset(terms),
                matched_verbs=frozenset(verbs),
                mentioned_types=types,
                mentioned_means=means,
                classification=_classify(types, means),
            )
        )
    return findings


def build_policy_claim(findings: list[SentenceFinding]) -> CollectionClaim:
    """Union of everything the findings mention, as one policy claim."""
    if not findings:
        raise ValueError("build_policy_claim requires at least one finding")
    types = frozenset().union(*(f.mentioned_types for f in findings))
    means = frozenset().union(*(f.mentioned_means for f in findings))
    if not types and not means:
        raise VagueOnlyPolicy(findings)
    return CollectionClaim(
        data_types=types,
        means=means,
        provenance=Provenance.POLICY_DERIVED,
        source_refs=tuple(f.source_ref for f in findings),
    )


@dataclass(frozen=True)
class PolicyStats:
    """Corpus-level counts shaped like the term/verb frequency tables."""

    total_documents: int
    total_findings: int
    classification_counts: dict[str, int]
    classification_percentages: dict[str, float]
    term_counts: dict[str, int]
    verb_counts: dict[str, int]

    def to_dict(self) -> dict:
        return {
            "total_documents": self.total_documents,
            "total_findings": self.total_findings,
            "classification_counts": dict(self.classification_counts),
            "classification_percentages": dict(self.classification_percentages),
            "term_counts": dict(self.term_counts),
            "verb_counts": dict(self.verb_counts),
        }


def stats_from_findings(n_docs: int, findings: list[SentenceFinding]) -> PolicyStats:
    counts = {c.value: 0 for c in Classification}
    term_counts: dict[str, int] = {}
    verb_counts: dict[str, int] = {}
    for finding in findings:
        counts[finding.classification.value] += 1
        for term in finding.matched_terms:
            term_counts[term] = term_counts.get(term, 0) + 1
        for verb in finding.matched_verbs:
            verb_counts[verb] = verb_counts.get(verb, 0) + 1

    total = len(findings)
    percentages = {
        c: (100.0 * n / total if total else 0.0) for c, n in counts.items()
    }
    return PolicyStats(
        total_documents=n_docs,
        total_findings=total,
        classification_counts=counts,
        classification_percentages=percentages,
        term_counts=dict(sorted(term_counts.items(), key=lambda kv: (-kv[1], kv[0]))),
        verb_counts=dict(sorted(verb_counts.items(), key=lambda kv: (-kv[1], kv[0]))),
    )


def corpus_policy_stats(docs: list[PolicyDocument], lexicon: Lexicon) -> PolicyStats:
    if not docs:
        raise ValueError("corpus_policy_stats requires at least one document")
    findings = []
    for doc in docs:
        findings.extend(find_collection_sentences(doc, lexicon))
    return stats_from_findings(len(docs), findings)
