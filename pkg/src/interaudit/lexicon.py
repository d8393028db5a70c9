"""Keyword lexicon used to find collection sentences in policies.

The lexicon is explicit data: term groups and verb groups with their
synonym sets, plus phrase tables mapping concrete wording to data types
and means.  A default lexicon ships with the package; callers can load
their own from a JSON file with the same four sections.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from importlib import resources

from .errors import LexiconError
from .vocabulary import CollectionMeans, InteractionDataType


def _phrase_regex(phrase: str) -> re.Pattern:
    # whole-word match, flexible internal whitespace
    parts = [re.escape(p) for p in phrase.split()]
    return re.compile(r"\b" + r"\s+".join(parts) + r"\b", re.IGNORECASE)


@dataclass(eq=False)
class Lexicon:
    """Term/verb synonym groups and type/means phrase tables.

    All phrases are stored lowercase; no phrase may appear in two groups.
    """

    term_groups: dict[str, frozenset[str]]
    verb_groups: dict[str, frozenset[str]]
    type_phrases: dict[str, InteractionDataType]
    means_phrases: dict[str, CollectionMeans]
    _matchers: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        seen: dict[str, str] = {}
        sections = [
            ("terms", [p for g in self.term_groups.values() for p in g]),
            ("verbs", [p for g in self.verb_groups.values() for p in g]),
            ("type_phrases", list(self.type_phrases)),
            ("means_phrases", list(self.means_phrases)),
        ]
        for section, phrases in sections:
            for phrase in phrases:
                if phrase != phrase.lower():
                    raise LexiconError(f"phrase {phrase!r} in {section} is not lowercase")
                if phrase in seen:
                    raise LexiconError(
                        f"phrase {phrase!r} appears in both {seen[phrase]} and {section}"
                    )
                seen[phrase] = section

    def _compiled(self, key, phrases):
        if key not in self._matchers:
            self._matchers[key] = [(p, _phrase_regex(p)) for p in sorted(phrases)]
        return self._matchers[key]

    def match_terms(self, sentence: str) -> set[str]:
        """Canonical names of term groups with a phrase in the sentence."""
        hits = set()
        for canonical, synonyms in self.term_groups.items():
            for _, regex in self._compiled(("term", canonical), synonyms):
                if regex.search(sentence):
                    hits.add(canonical)
                    break
        return hits

    def match_verbs(self, sentence: str) -> set[str]:
        hits = set()
        for canonical, synonyms in self.verb_groups.items():
            for _, regex in self._compiled(("verb", canonical), synonyms):
                if regex.search(sentence):
                    hits.add(canonical)
                    break
        return hits

    def _match_table(self, key, table, sentence):
        # collect spans so a longer phrase suppresses shorter ones it contains
        # ("composite gesture" should not also report "gesture")
        matches = []
        for phrase, regex in self._compiled(key, table):
            for m in regex.finditer(sentence):
                matches.append((m.start(), m.end(), table[phrase]))
        kept = set()
        for start, end, value in matches:
            contained = any(
                (s <= start and end <= e) and (e - s > end - start)
                for s, e, _ in matches
            )
            if not contained:
                kept.add(value)
        return kept

    def match_types(self, sentence: str) -> set[InteractionDataType]:
        return self._match_table("types", self.type_phrases, sentence)

    def match_means(self, sentence: str) -> set[CollectionMeans]:
        return self._match_table("means", self.means_phrases, sentence)


def _load_groups(section, raw):
    if not isinstance(raw, dict):
        raise LexiconError(f"section {section!r} must be an object")
    groups = {}
    for canonical, synonyms in raw.items():
        if not isinstance(synonyms, list) or not all(isinstance(s, str) for s in synonyms):
            raise LexiconError(f"synonyms of {canonical!r} must be a list of strings")
        groups[canonical] = frozenset(synonyms)
    return groups


def lexicon_from_dict(data: dict) -> Lexicon:
    for section in ("terms", "verbs", "type_phrases", "means_phrases"):
        if section not in data:
            raise LexiconError(f"lexicon is missing section {section!r}")

    type_by_phrase = {t.phrase: t for t in InteractionDataType}
    means_by_phrase = {m.phrase: m for m in CollectionMeans}

    type_phrases = {}
    for type_name, phrases in _load_groups("type_phrases", data["type_phrases"]).items():
        if type_name not in type_by_phrase:
            raise LexiconError(f"unknown interaction data type {type_name!r}")
        for phrase in phrases:
            type_phrases[phrase] = type_by_phrase[type_name]

    means_phrases = {}
    for means_name, phrases in _load_groups("means_phrases", data["means_phrases"]).items():
        if means_name not in means_by_phrase:
            raise LexiconError(f"unknown collection means {means_name!r}")
        for phrase in phrases:
            means_phrases[phrase] = means_by_phrase[means_name]

    return Lexicon(
        term_groups=_load_groups("terms", data["terms"]),
        verb_groups=_load_groups("verbs", data["verbs"]),
        type_phrases=type_phrases,
        means_phrases=means_phrases,
    )


def load_lexicon(path) -> Lexicon:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise LexiconError(f"{path}: {exc}") from exc
    return lexicon_from_dict(data)


def default_lexicon() -> Lexicon:
    data = json.loads(
        resources.files("interaudit.data").joinpath("lexicon.json").read_text("utf-8")
    )
    return lexicon_from_dict(data)
