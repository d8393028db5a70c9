"""Batch command-line front-end for the audit pipeline.

Subcommands: extract-claims, extract-evidence, check, corpus-stats.
Exit codes: 0 success, 1 I/O or parse failure, 2 vague-only policy,
3 no evidence, 64 usage error.  All output is deterministic: sets are
serialized in canonical vocabulary order and apps are processed in
input order even when a worker pool is used.
"""

from __future__ import annotations

import json
import logging
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import click

from . import evidence as ev
from . import policy as pol
from .apk.model import load_app
from .checker import FactCheckReport, ReportFormat, check, render_report
from .errors import InterauditError, InvalidClaim, NoEvidence, VagueOnlyPolicy
from .lexicon import default_lexicon, load_lexicon
from .sigdb import default_sigdb, load_sigdb
from .vocabulary import CollectionClaim, render_claim

EXIT_OK = 0
EXIT_IO = 1
EXIT_VAGUE_ONLY = 2
EXIT_NO_EVIDENCE = 3
EXIT_USAGE = 64


def _setup_logging():
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter("%(levelname).1s %(message)s"))
    logger = logging.getLogger("interaudit")
    logger.handlers[:] = [handler]
    logger.setLevel(logging.WARNING)


def _fail_usage(message: str):
    click.echo(f"usage error: {message}", err=True)
    sys.exit(EXIT_USAGE)


def _fail_io(message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(EXIT_IO)


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        click.echo(text, nl=False)


def _jsonl(objs) -> str:
    return "".join(json.dumps(o, sort_keys=True) + "\n" for o in objs)


def _load_lexicon_opt(path: str | None):
    try:
        return load_lexicon(path) if path else default_lexicon()
    except (OSError, InterauditError) as exc:
        _fail_io(str(exc))


def _load_sigdb_opt(path: str | None):
    try:
        return load_sigdb(path) if path else default_sigdb()
    except (OSError, InterauditError) as exc:
        _fail_io(str(exc))


@click.group()
def main():
    """Audit user-interaction-data collection claims of Android apps."""
    _setup_logging()


def _policy_format(path: Path) -> pol.PolicyFormat:
    if path.suffix.lower() in (".html", ".htm"):
        return pol.PolicyFormat.HTML
    return pol.PolicyFormat.PLAIN_TEXT


def _process_policy(path_str: str, lexicon) -> tuple[list[dict], bool]:
    path = Path(path_str)
    doc = pol.load_policy(path.read_bytes(), _policy_format(path), doc_id=path.name)
    findings = pol.find_collection_sentences(doc, lexicon)
    lines = [{"kind": "finding", **f.to_dict()} for f in findings]
    vague_only = False
    claim_obj = None
    sentence = None
    if findings:
        try:
            claim = pol.build_policy_claim(findings)
            claim_obj = claim.to_dict()
            sentence = render_claim(claim)
        except VagueOnlyPolicy:
            vague_only = True
    else:
        vague_only = True
    lines.append(
        {
            "kind": "claim",
            "doc_id": doc.doc_id,
            "vague_only": vague_only,
            "claim": claim_obj,
            "sentence": sentence,
        }
    )
    return lines, vague_only


@main.command("extract-claims")
@click.argument("policies", nargs=-1, type=click.Path())
@click.option("--lexicon", "lexicon_path", type=click.Path(), help="Lexicon JSON file.")
@click.option("--out", type=click.Path(), help="Write output here instead of stdout.")
def extract_claims(policies, lexicon_path, out):
    """Extract collection findings and a policy claim per policy file."""
    if not policies:
        _fail_usage("at least one policy file is required")
    lexicon = _load_lexicon_opt(lexicon_path)

    lines = []
    any_vague = False
    for policy_path in policies:
        try:
            policy_lines, vague = _process_policy(policy_path, lexicon)
        except OSError as exc:
            _fail_io(f"{policy_path}: {exc}")
        except InterauditError as exc:
            _fail_io(f"{policy_path}: {exc}")
        lines.extend(policy_lines)
        any_vague = any_vague or vague

    _emit(_jsonl(lines), out)
    sys.exit(EXIT_VAGUE_ONLY if any_vague else EXIT_OK)


def _process_app(args) -> tuple[list[dict], bool]:
    app_dir, sigdb_path, bound = args
    sigdb = load_sigdb(sigdb_path) if sigdb_path else default_sigdb()
    app = load_app(app_dir)
    records = ev.extract_evidence(app, sigdb, bound)
    lines = [{"kind": "record", "app": str(app_dir), **r.to_dict()} for r in records]
    claim_obj = None
    sentence = None
    no_evidence = not records
    if records:
        claim = ev.build_evidence_claim(records)
        claim_obj = claim.to_dict()
        sentence = render_claim(claim)
    lines.append(
        {
            "kind": "claim",
            "app": str(app_dir),
            "no_evidence": no_evidence,
            "claim": claim_obj,
            "sentence": sentence,
        }
    )
    return lines, no_evidence


def _map_jobs(worker, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [worker(item) for item in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(worker, items))


@main.command("extract-evidence")
@click.argument("app_dirs", nargs=-1, type=click.Path())
@click.option("--sigdb", "sigdb_path", type=click.Path(), help="Signature DB JSON file.")
@click.option("--bound", default=ev.DEFAULT_BOUND, show_default=True,
              help="Callback-to-DCM reachability depth.")
@click.option("--out", type=click.Path(), help="Write output here instead of stdout.")
@click.option("--jobs", default=1, show_default=True, help="Parallel worker processes.")
def extract_evidence(app_dirs, sigdb_path, bound, out, jobs):
    """Extract evidence records and an evidence claim per app directory."""
    if not app_dirs:
        _fail_usage("at least one app directory is required")
    if bound < 1:
        _fail_usage("--bound must be >= 1")
    _load_sigdb_opt(sigdb_path)  # validate once up front

    try:
        results = _map_jobs(
            _process_app, [(d, sigdb_path, bound) for d in app_dirs], jobs
        )
    except (OSError, InterauditError) as exc:
        _fail_io(str(exc))

    lines = []
    any_empty = False
    for app_lines, no_evidence in results:
        lines.extend(app_lines)
        any_empty = any_empty or no_evidence

    _emit(_jsonl(lines), out)
    sys.exit(EXIT_NO_EVIDENCE if any_empty else EXIT_OK)


def _read_claim_file(path: str) -> CollectionClaim | None:
    """Accept a bare claim object or an extract-* summary line."""
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        _fail_io(f"{path}: {exc}")
    if isinstance(data, dict) and "claim" in data and "data_types" not in data:
        if data["claim"] is None:
            return None
        data = data["claim"]
    try:
        return CollectionClaim.from_dict(data)
    except InvalidClaim as exc:
        _fail_io(f"{path}: {exc}")


_FORMATS = {
    "json": ReportFormat.JSON,
    "markdown": ReportFormat.MARKDOWN,
    "plain": ReportFormat.PLAIN,
}


@main.command("check")
@click.argument("policy_claim_file", type=click.Path())
@click.argument("evidence_claim_file", type=click.Path())
@click.option("--format", "fmt", type=click.Choice(sorted(_FORMATS)), default="markdown",
              show_default=True)
@click.option("--out", type=click.Path(), help="Write output here instead of stdout.")
def check_cmd(policy_claim_file, evidence_claim_file, fmt, out):
    """Fact-check a policy claim file against an evidence claim file."""
    policy = _read_claim_file(policy_claim_file)
    evidence_claim = _read_claim_file(evidence_claim_file)
    if evidence_claim is None:
        _fail_io(f"{evidence_claim_file}: evidence claim is empty")
    try:
        report = check(policy, evidence_claim)
    except InterauditError as exc:
        _fail_io(str(exc))
    _emit(render_report(report, _FORMATS[fmt]), out)
    sys.exit(EXIT_OK)


def _stats_policy_worker(args):
    policy_path, lexicon_path = args
    lexicon = load_lexicon(lexicon_path) if lexicon_path else default_lexicon()
    path = Path(policy_path)
    doc = pol.load_policy(path.read_bytes(), _policy_format(path), doc_id=path.name)
    return [f.to_dict() for f in pol.find_collection_sentences(doc, lexicon)]


def _stats_app_worker(args):
    app_dir, sigdb_path, bound = args
    sigdb = load_sigdb(sigdb_path) if sigdb_path else default_sigdb()
    app = load_app(app_dir)
    return ev.extract_evidence(app, sigdb, bound)


def _render_stats_markdown(doc: dict) -> str:
    lines = ["# Corpus statistics", ""]
    ps = doc["policy_stats"]
    lines.append("## Policy sentence classification")
    lines.append("")
    lines.append("| Classification | Count | Percent |")
    lines.append("| --- | --- | --- |")
    for name, count in ps["classification_counts"].items():
        pct = ps["classification_percentages"][name]
        lines.append(f"| {name} | {count} | {pct:.1f}% |")
    lines.append("")
    lines.append("## Term frequency")
    lines.append("")
    lines.append("| Term | Count |")
    lines.append("| --- | --- |")
    for term, count in ps["term_counts"].items():
        lines.append(f"| {term} | {count} |")
    lines.append("")
    lines.append("## Verb frequency")
    lines.append("")
    lines.append("| Verb | Count |")
    lines.append("| --- | --- |")
    for verb, count in ps["verb_counts"].items():
        lines.append(f"| {verb} | {count} |")
    lines.append("")
    lines.append("## Collection by UI type")
    lines.append("")
    lines.append(
        "| UI type | Top means | Top categories | Percent collected | Average # collected |"
    )
    lines.append("| --- | --- | --- | --- | --- |")
    for row in doc["evidence_stats"]["rows"]:
        means = ", ".join(
            f"{m['means']} ({m['percent']:.0f}%)" for m in row["top_means"]
        ) or "-"
        categories = ", ".join(row["top_categories"]) or "-"
        lines.append(
            f"| {row['label']} | {means} | {categories} "
            f"| {row['percent_collected']:.0f}% | {row['average_collected']} |"
        )
    lines.append("")
    return "\n".join(lines)


@main.command("corpus-stats")
@click.argument("manifest_file", type=click.Path())
@click.option("--lexicon", "lexicon_path", type=click.Path())
@click.option("--sigdb", "sigdb_path", type=click.Path())
@click.option("--bound", default=ev.DEFAULT_BOUND, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["json", "markdown"]), default="json",
              show_default=True)
@click.option("--out", type=click.Path())
@click.option("--jobs", default=1, show_default=True)
def corpus_stats(manifest_file, lexicon_path, sigdb_path, bound, fmt, out, jobs):
    """Combined policy and evidence statistics over a corpus manifest.

    The manifest is a JSON list of {"app_dir", "policy", "category"}.
    """
    try:
        entries = json.loads(Path(manifest_file).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        _fail_io(f"{manifest_file}: {exc}")
    if not isinstance(entries, list) or not entries:
        _fail_usage("manifest must be a non-empty JSON list")
    for entry in entries:
        if not isinstance(entry, dict) or not {"app_dir", "policy", "category"} <= set(entry):
            _fail_usage("each manifest entry needs app_dir, policy and category")

    lexicon = _load_lexicon_opt(lexicon_path)
    _load_sigdb_opt(sigdb_path)

    try:
        finding_lists = _map_jobs(
            _stats_policy_worker,
            [(e["policy"], lexicon_path) for e in entries],
            jobs,
        )
        record_lists = _map_jobs(
            _stats_app_worker,
            [(e["app_dir"], sigdb_path, bound) for e in entries],
            jobs,
        )
    except (OSError, InterauditError) as exc:
        _fail_io(str(exc))

    all_findings = []
    for findings in finding_lists:
        for f in findings:
            all_findings.append(f)
    # recount classification/term/verb tallies from the serialized findings
    counts = {c.value: 0 for c in pol.Classification}
    term_counts: dict[str, int] = {}
    verb_counts: dict[str, int] = {}
    for f in all_findings:
        counts[f["classification"]] += 1
        for term in f["matched_terms"]:
            term_counts[term] = term_counts.get(term, 0) + 1
        for verb in f["matched_verbs"]:
            verb_counts[verb] = verb_counts.get(verb, 0) + 1
    total = len(all_findings)
    policy_stats = {
        "total_documents": len(entries),
        "total_findings": total,
        "classification_counts": counts,
        "classification_percentages": {
            c: (100.0 * n / total if total else 0.0) for c, n in counts.items()
        },
        "term_counts": dict(sorted(term_counts.items(), key=lambda kv: (-kv[1], kv[0]))),
        "verb_counts": dict(sorted(verb_counts.items(), key=lambda kv: (-kv[1], kv[0]))),
    }
    del lexicon

    evidence_stats = ev.corpus_evidence_stats(
        [(e["category"], records) for e, records in zip(entries, record_lists)]
    )
    doc = {"policy_stats": policy_stats, "evidence_stats": evidence_stats.to_dict()}

    if fmt == "markdown":
        _emit(_render_stats_markdown(doc), out)
    else:
        _emit(json.dumps(doc, indent=2, sort_keys=True) + "\n", out)
    sys.exit(EXIT_OK)


if __name__ == "__main__":
    main()
