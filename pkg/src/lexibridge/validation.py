"""Correctness and completeness checks for translation records.

Rules come in two severities. Errors block a record from moving forward
into ``pending_correction``, ``pending_expert`` or ``accepted``; warnings
never block but ride along on the transition event so reviewers see them.

Record-local rules (E01 to E07, W01 to W03) need only the record itself.
W10 flags a synonym whose tokens appear contiguously inside a longer
synonym of the same record, which usually means the short form is implied
by the long one. W11 flags a lemma shared with a record whose source
synset sits above or below this one in the hypernym hierarchy: the same
word covering both the broad and the narrow concept. W12 reports a cycle
in that hierarchy, which the traversal survives but a reviewer should see.
"""

from __future__ import annotations

import re
from collections.abc import Mapping
from dataclasses import dataclass

from lexibridge.model import (
    Finding,
    Severity,
    SourceSynset,
    Synonym,
    SynsetId,
    TranslationRecord,
    WorkflowState,
    normalize_lemma,
)

_LATIN_RE = re.compile(r"[A-Za-z]")

GATED_STATES = frozenset(
    {
        WorkflowState.PENDING_CORRECTION,
        WorkflowState.PENDING_EXPERT,
        WorkflowState.ACCEPTED,
    }
)


@dataclass(frozen=True)
class Rule:
    rule_id: str
    severity: Severity
    description: str


RULES: tuple[Rule, ...] = (
    Rule("E01", Severity.ERROR, "gap record still lists synonyms"),
    Rule("E02", Severity.ERROR, "gap record has no substitute phrase"),
    Rule("E03", Severity.ERROR, "record has no target gloss"),
    Rule("E04", Severity.ERROR, "record has no synonyms"),
    Rule("E05", Severity.ERROR, "synonym lacks a usage example"),
    Rule("E06", Severity.ERROR, "duplicate lemma within the record"),
    Rule("E07", Severity.ERROR, "synonym ranks are not contiguous from 1"),
    Rule("W01", Severity.WARNING, "Latin script in target text"),
    Rule("W02", Severity.WARNING, "example does not contain its lemma"),
    Rule("W03", Severity.WARNING, "gloss is shorter than three words"),
    Rule("W10", Severity.WARNING, "lemma is contained in a longer synonym"),
    Rule("W11", Severity.WARNING, "lemma shared with a broader or narrower synset"),
    Rule("W12", Severity.WARNING, "hypernym hierarchy contains a cycle"),
)

RULES_BY_ID: dict[str, Rule] = {rule.rule_id: rule for rule in RULES}


def _finding(rule_id: str, message: str, synset: SynsetId | None, index: int | None = None) -> Finding:
    rule = RULES_BY_ID[rule_id]
    return Finding(
        rule_id=rule.rule_id,
        severity=rule.severity,
        message=message,
        synset=synset,
        synonym_index=index,
    )


def check_record(
    record: TranslationRecord, source: SourceSynset | None = None
) -> list[Finding]:
    """Run the record-local rules. Output is sorted by rule id, then locus."""
    del source  # content rules look at the target side only
    sid = record.source
    findings: list[Finding] = []

    if record.is_gap:
        if record.synonyms:
            findings.append(
                _finding("E01", "record is marked as a gap but lists synonyms", sid)
            )
        if not any(p.strip() for p in record.phrases):
            findings.append(
                _finding("E02", "gap record needs at least one substitute phrase", sid)
            )
    else:
        if not record.gloss.strip():
            findings.append(_finding("E03", "target gloss is empty", sid))
        if not record.synonyms:
            findings.append(_finding("E04", "record lists no synonyms", sid))

    for i, synonym in enumerate(record.synonyms):
        if not any(e.strip() for e in synonym.examples):
            findings.append(
                _finding("E05", f"synonym {synonym.lemma!r} has no usage example", sid, i)
            )

    seen: dict[str, int] = {}
    for i, synonym in enumerate(record.synonyms):
        lemma = normalize_lemma(synonym.lemma)
        if lemma in seen:
            findings.append(
                _finding(
                    "E06",
                    f"lemma {lemma!r} duplicates synonym {seen[lemma]}",
                    sid,
                    i,
                )
            )
        else:
            seen[lemma] = i

    if record.synonyms:
        ranks = sorted(s.rank for s in record.synonyms)
        if ranks != list(range(1, len(ranks) + 1)):
            listed = ", ".join(str(r) for r in ranks)
            findings.append(
                _finding("E07", f"ranks must run 1..{len(ranks)}, got {listed}", sid)
            )

    if _LATIN_RE.search(record.gloss):
        findings.append(_finding("W01", "gloss contains Latin characters", sid))
    for i, synonym in enumerate(record.synonyms):
        if _LATIN_RE.search(synonym.lemma):
            findings.append(
                _finding("W01", f"lemma {synonym.lemma!r} contains Latin characters", sid, i)
            )

    for i, synonym in enumerate(record.synonyms):
        lemma = normalize_lemma(synonym.lemma)
        missing = [
            e for e in synonym.examples if e.strip() and lemma not in normalize_lemma(e)
        ]
        if missing:
            findings.append(
                _finding(
                    "W02",
                    f"{len(missing)} example(s) do not contain {lemma!r}",
                    sid,
                    i,
                )
            )

    if not record.is_gap and record.gloss.strip():
        if len(record.gloss.split()) < 3:
            findings.append(_finding("W03", "gloss has fewer than three words", sid))

    findings.sort(key=Finding.sort_key)
    return findings


def detect_compound_subsumption(
    synonyms: tuple[Synonym, ...] | list[Synonym],
    record_id: SynsetId | None = None,
) -> list[Finding]:
    """W10: flag synonyms whose tokens sit contiguously inside a longer synonym.

    Comparison runs on normalized lemmas; identical lemmas are not flagged
    (those are duplicates, a different problem), and the result does not
    depend on the order of the synonyms.
    """
    token_lists = [normalize_lemma(s.lemma).split() for s in synonyms]
    padded = [" " + " ".join(tokens) + " " for tokens in token_lists]

    findings: list[Finding] = []
    for i, tokens in enumerate(token_lists):
        if not tokens:
            continue
        needle = " " + " ".join(tokens) + " "
        for j, haystack in enumerate(padded):
            if i == j or len(tokens) >= len(token_lists[j]):
                continue
            if needle in haystack:
                findings.append(
                    _finding(
                        "W10",
                        f"{normalize_lemma(synonyms[i].lemma)!r} is contained in "
                        f"{normalize_lemma(synonyms[j].lemma)!r}",
                        record_id,
                        i,
                    )
                )
                break

    findings.sort(key=Finding.sort_key)
    return findings


def _reachable(
    start: SynsetId, neighbours: Mapping[SynsetId, tuple[SynsetId, ...]]
) -> tuple[set[SynsetId], bool]:
    """All synsets reachable from ``start``; also whether a cycle led back to it.

    A visited set keeps the walk finite on any graph, so shared ancestors
    (diamonds) are fine and cycles cannot hang the traversal.
    """
    seen: set[SynsetId] = set()
    cyclic = False
    frontier = list(neighbours.get(start, ()))
    while frontier:
        node = frontier.pop()
        if node == start:
            cyclic = True
            continue
        if node in seen:
            continue
        seen.add(node)
        frontier.extend(neighbours.get(node, ()))
    return seen, cyclic


def detect_specialization_polysemy(
    record: TranslationRecord,
    records: Mapping[SynsetId, TranslationRecord],
    sources: Mapping[SynsetId, SourceSynset],
) -> list[Finding]:
    """W11: flag lemmas shared with records above or below in the hierarchy.

    Hypernym ids that resolve to nothing simply end the chain there. If the
    walk finds a cycle through this record's synset, a W12 warning is added
    and reachability is still answered from what the walk saw.
    """
    parents: dict[SynsetId, tuple[SynsetId, ...]] = {
        sid: synset.hypernyms for sid, synset in sources.items()
    }
    children: dict[SynsetId, list[SynsetId]] = {}
    for sid, synset in sources.items():
        for hid in synset.hypernyms:
            children.setdefault(hid, []).append(sid)
    children_t = {sid: tuple(kids) for sid, kids in children.items()}

    ancestors, cycle_up = _reachable(record.source, parents)
    descendants, cycle_down = _reachable(record.source, children_t)
    related = (ancestors | descendants) - {record.source}

    findings: list[Finding] = []
    if cycle_up or cycle_down:
        findings.append(
            _finding("W12", "hypernym hierarchy cycles back to this synset", record.source)
        )

    lemma_to_indices: dict[str, list[int]] = {}
    for i, synonym in enumerate(record.synonyms):
        lemma_to_indices.setdefault(normalize_lemma(synonym.lemma), []).append(i)

    flagged: set[int] = set()
    for other_id in related:
        other = records.get(other_id)
        if other is None or other_id == record.source:
            continue
        other_lemmas = {normalize_lemma(s.lemma) for s in other.synonyms}
        for lemma, indices in lemma_to_indices.items():
            if lemma in other_lemmas:
                for i in indices:
                    if i not in flagged:
                        flagged.add(i)
                        findings.append(
                            _finding(
                                "W11",
                                f"lemma {lemma!r} also covers related synset {other_id}",
                                record.source,
                                i,
                            )
                        )

    findings.sort(key=Finding.sort_key)
    return findings


def check_all(
    record: TranslationRecord,
    source: SourceSynset | None = None,
    records: Mapping[SynsetId, TranslationRecord] | None = None,
    sources: Mapping[SynsetId, SourceSynset] | None = None,
) -> list[Finding]:
    """Record-local rules plus the cross-record detectors where context allows."""
    findings = check_record(record, source)
    findings.extend(detect_compound_subsumption(record.synonyms, record.source))
    if records is not None and sources is not None:
        findings.extend(detect_specialization_polysemy(record, records, sources))
    findings.sort(key=Finding.sort_key)
    return findings


@dataclass(frozen=True)
class TransitionCheck:
    """Outcome of validating a record against a target state."""

    target: WorkflowState
    blocking: tuple[Finding, ...]
    warnings: tuple[Finding, ...]

    @property
    def ok(self) -> bool:
        return not self.blocking


def validate_for_transition(
    record: TranslationRecord,
    source: SourceSynset | None,
    target_state: WorkflowState,
    records: Mapping[SynsetId, TranslationRecord] | None = None,
    sources: Mapping[SynsetId, SourceSynset] | None = None,
) -> TransitionCheck:
    """Decide whether ``record`` may move into ``target_state``.

    Error findings block entry into the gated states; warnings are returned
    so the caller can attach them to the transition event.
    """
    # Late import: workflow builds on validation, not the other way round.
    from lexibridge.workflow import IllegalTransitionError, successors

    if target_state not in successors(record.state):
        raise IllegalTransitionError(
            f"no transition from {record.state.value} to {target_state.value}"
        )

    findings = check_all(record, source, records, sources)
    warnings = tuple(f for f in findings if f.severity is Severity.WARNING)
    if target_state in GATED_STATES:
        blocking = tuple(f for f in findings if f.severity is Severity.ERROR)
    else:
        blocking = ()
    return TransitionCheck(target=target_state, blocking=blocking, warnings=warnings)


def format_report(findings: list[Finding]) -> str:
    """Serialize findings to the tab-separated report format, one per line."""
    return "\n".join(f.to_line() for f in findings)
