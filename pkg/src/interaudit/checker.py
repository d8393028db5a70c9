"""Fact-checking policy claims against evidence claims."""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass

from .errors import ProvenanceError
from .vocabulary import (
    CollectionClaim,
    CollectionMeans,
    InteractionDataType,
    Provenance,
    render_claim,
    sorted_means,
    sorted_types,
)

REPORT_VERSION = 1


class Verdict(enum.Enum):
    """Disclosure completeness is the criterion: a claim is Complete when
    the policy discloses everything the evidence shows, even if it also
    claims more.  Static analysis under-approximates behavior, so absence
    of evidence is not evidence of absence."""

    COMPLETE = "complete"
    INCOMPLETE = "incomplete"
    OVERCLAIMED = "overclaimed"
    MIXED = "mixed"


class ReportFormat(enum.Enum):
    MARKDOWN = "markdown"
    JSON = "json"
    PLAIN = "plain"


@dataclass(frozen=True)
class FactCheckReport:
    policy_claim: CollectionClaim | None  # None: policy made only vague claims
    evidence_claim: CollectionClaim
    undisclosed_types: frozenset[InteractionDataType]
    undisclosed_means: frozenset[CollectionMeans]
    overclaimed_types: frozenset[InteractionDataType]
    overclaimed_means: frozenset[CollectionMeans]
    verdict: Verdict

    def to_dict(self) -> dict:
        return {
            "report_version": REPORT_VERSION,
            "policy_claim": self.policy_claim.to_dict() if self.policy_claim else None,
            "evidence_claim": self.evidence_claim.to_dict(),
            "undisclosed_types": [t.phrase for t in sorted_types(self.undisclosed_types)],
            "undisclosed_means": [m.phrase for m in sorted_means(self.undisclosed_means)],
            "overclaimed_types": [t.phrase for t in sorted_types(self.overclaimed_types)],
            "overclaimed_means": [m.phrase for m in sorted_means(self.overclaimed_means)],
            "verdict": self.verdict.value,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "FactCheckReport":
        types = {t.phrase: t for t in InteractionDataType}
        means = {m.phrase: m for m in CollectionMeans}
        policy = data.get("policy_claim")
        return cls(
            policy_claim=CollectionClaim.from_dict(policy) if policy else None,
            evidence_claim=CollectionClaim.from_dict(data["evidence_claim"]),
            undisclosed_types=frozenset(types[p] for p in data["undisclosed_types"]),
            undisclosed_means=frozenset(means[p] for p in data["undisclosed_means"]),
            overclaimed_types=frozenset(types[p] for p in data["overclaimed_types"]),
            overclaimed_means=frozenset(means[p] for p in data["overclaimed_means"]),
            verdict=Verdict(data["verdict"]),
        )


def _verdict(undisclosed_types, undisclosed_means, overclaimed_types, overclaimed_means):
    undisclosed = bool(undisclosed_types or undisclosed_means)
    overclaimed = bool(overclaimed_types or overclaimed_means)
    if undisclosed and overclaimed:
        return Verdict.MIXED
    if undisclosed:
        return Verdict.INCOMPLETE
    if overclaimed:
        return Verdict.OVERCLAIMED
    return Verdict.COMPLETE


def check(policy: CollectionClaim | None, evidence: CollectionClaim) -> FactCheckReport:
    """Compare what the policy says against what the evidence shows.

    ``policy=None`` stands for a policy that made only vague claims: it
    disclosed nothing concrete, so all evidence is undisclosed.
    """
    if policy is not None and policy.provenance not in (
        Provenance.POLICY_DERIVED,
        Provenance.CHECKED_STANDARDIZED,
    ):
        raise ProvenanceError(
            f"policy claim has provenance {policy.provenance.value}"
        )
    if evidence.provenance is not Provenance.EVIDENCE_DERIVED:
        raise ProvenanceError(
            f"evidence claim has provenance {evidence.provenance.value}"
        )

    policy_types = policy.data_types if policy else frozenset()
    policy_means = policy.means if policy else frozenset()

    undisclosed_types = evidence.data_types - policy_types
    undisclosed_means = evidence.means - policy_means
    overclaimed_types = policy_types - evidence.data_types
    overclaimed_means = policy_means - evidence.means

    return FactCheckReport(
        policy_claim=policy,
        evidence_claim=evidence,
        undisclosed_types=undisclosed_types,
        undisclosed_means=undisclosed_means,
        overclaimed_types=overclaimed_types,
        overclaimed_means=overclaimed_means,
        verdict=_verdict(
            undisclosed_types, undisclosed_means, overclaimed_types, overclaimed_means
        ),
    )


def _checked_sentence(report: FactCheckReport, markers: bool) -> str:
    if not markers:
        return render_claim(report.evidence_claim)
    return render_claim(
        report.evidence_claim,
        decorate_type=lambda phrase, t: (
            f"**{phrase}**" if t in report.undisclosed_types else phrase
        ),
        decorate_means=lambda phrase, m: (
            f"_{phrase}_" if m in report.undisclosed_means else phrase
        ),
    )


def _phrase_list(values) -> str:
    return ", ".join(values) if values else "none"


def render_report(report: FactCheckReport, format: ReportFormat = ReportFormat.MARKDOWN) -> str:
    """Render a fact-check report.

    Markdown marks undisclosed types in bold and undisclosed means in
    italics inside the checked standardized claim sentence; Plain omits
    the markers; Json serializes the full report.
    """
    if format is ReportFormat.JSON:
        return json.dumps(report.to_dict(), indent=2, sort_keys=True)

    markers = format is ReportFormat.MARKDOWN
    lines = []
    if markers:
        lines.append("# Collection claim fact-check")
        lines.append("")
        lines.append("## Checked standardized collection claim")
    else:
        lines.append("Checked standardized collection claim:")
    lines.append("")
    lines.append(_checked_sentence(report, markers))
    lines.append("")
    verdict = report.verdict.value.capitalize()
    lines.append(f"**Verdict:** {verdict}" if markers else f"Verdict: {verdict}")
    lines.append("")
    lines.append(
        "Undisclosed types: "
        + _phrase_list([t.phrase for t in sorted_types(report.undisclosed_types)])
    )
    lines.append(
        "Undisclosed means: "
        + _phrase_list([m.phrase for m in sorted_means(report.undisclosed_means)])
    )
    lines.append(
        "Overclaimed types: "
        + _phrase_list([t.phrase for t in sorted_types(report.overclaimed_types)])
    )
    lines.append(
        "Overclaimed means: "
        + _phrase_list([m.phrase for m in sorted_means(report.overclaimed_means)])
    )
    lines.append("")
    if report.policy_claim is None:
        lines.append("Policy basis: only vague collection statements.")
    elif report.policy_claim.source_refs:
        lines.append("Policy basis:")
        for ref in report.policy_claim.source_refs:
            lines.append(f"- {ref}" if markers else f"  {ref}")
    else:
        lines.append("Policy basis: hand-encoded standardized claim.")
    return "\n".join(lines) + "\n"
