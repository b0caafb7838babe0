"""Inventory and enrichment statistics over translation records.

Reports break down by part-of-speech group (satellites count as adjectives)
and always carry a total column computed from the groups, so the total can
never drift from the rows. Serialization is tab-separated UTF-8 with one
metric per row.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass

from lexibridge.model import (
    PartOfSpeech,
    Role,
    SynsetId,
    TranslationRecord,
    WorkflowState,
    normalize_lemma,
)

POS_GROUPS = ("nouns", "verbs", "adjectives", "adverbs")

S = WorkflowState

# Which states a record must be in for the inventory to count it.
COUNTING_POLICIES: dict[str, frozenset[WorkflowState]] = {
    "all": frozenset(S),
    "submitted": frozenset(S) - {S.UNTRANSLATED, S.NOT_UNDERSTOOD},
    "accepted": frozenset({S.ACCEPTED}),
}
DEFAULT_POLICY = "submitted"


@dataclass(frozen=True)
class PosBreakdown:
    """One metric split over the four reporting groups."""

    nouns: int = 0
    verbs: int = 0
    adjectives: int = 0
    adverbs: int = 0

    @property
    def total(self) -> int:
        return self.nouns + self.verbs + self.adjectives + self.adverbs

    @classmethod
    def from_counts(cls, counts: Mapping[str, int]) -> "PosBreakdown":
        return cls(**{group: counts.get(group, 0) for group in POS_GROUPS})

    def to_row(self) -> list[int]:
        return [self.nouns, self.verbs, self.adjectives, self.adverbs, self.total]

    def to_dict(self) -> dict:
        return {
            "nouns": self.nouns,
            "verbs": self.verbs,
            "adjectives": self.adjectives,
            "adverbs": self.adverbs,
            "total": self.total,
        }


def _tsv(rows: dict[str, PosBreakdown]) -> str:
    lines = ["metric\tnouns\tverbs\tadjectives\tadverbs\ttotal"]
    for metric, breakdown in rows.items():
        cells = "\t".join(str(n) for n in breakdown.to_row())
        lines.append(f"{metric}\t{cells}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class InventoryReport:
    """How many synsets are covered and how many synonyms they carry."""

    synsets: PosBreakdown
    synonyms: PosBreakdown
    policy: str = DEFAULT_POLICY

    def to_tsv(self) -> str:
        return _tsv({"synsets": self.synsets, "synonyms": self.synonyms})

    def to_dict(self) -> dict:
        return {
            "policy": self.policy,
            "synsets": self.synsets.to_dict(),
            "synonyms": self.synonyms.to_dict(),
        }


def inventory(
    records: Iterable[TranslationRecord], policy: str = DEFAULT_POLICY
) -> InventoryReport:
    """Count covered synsets and synonym entries per group.

    Gap records carry no synonyms and are excluded outright. The policy
    names which workflow states count as covered; the default counts
    everything that has been submitted at least once.
    """
    states = COUNTING_POLICIES[policy]
    synsets: dict[str, int] = {}
    synonyms: dict[str, int] = {}
    for record in records:
        if record.is_gap or record.state not in states:
            continue
        group = record.source.pos.group
        synsets[group] = synsets.get(group, 0) + 1
        synonyms[group] = synonyms.get(group, 0) + len(record.synonyms)
    return InventoryReport(
        synsets=PosBreakdown.from_counts(synsets),
        synonyms=PosBreakdown.from_counts(synonyms),
        policy=policy,
    )


@dataclass(frozen=True)
class EnrichmentDiff:
    """What the current project adds to or removes from a baseline."""

    synonyms_added: PosBreakdown
    synonyms_excluded: PosBreakdown
    glosses_added: PosBreakdown
    examples_added: PosBreakdown
    gaps_identified: PosBreakdown
    phrases_added: PosBreakdown
    ignored_baseline: tuple[SynsetId, ...] = ()

    METRICS = (
        "synonyms_added",
        "synonyms_excluded",
        "glosses_added",
        "examples_added",
        "gaps_identified",
        "phrases_added",
    )

    def rows(self) -> dict[str, PosBreakdown]:
        return {name: getattr(self, name) for name in self.METRICS}

    def to_tsv(self) -> str:
        return _tsv(self.rows())

    def to_dict(self) -> dict:
        data = {name: getattr(self, name).to_dict() for name in self.METRICS}
        data["ignored_baseline"] = [str(i) for i in self.ignored_baseline]
        return data


def _by_id(records: Iterable[TranslationRecord]) -> dict[SynsetId, TranslationRecord]:
    return {record.source: record for record in records}


def _lemma_set(record: TranslationRecord) -> set[str]:
    return {normalize_lemma(s.lemma) for s in record.synonyms}


def _phrase_set(record: TranslationRecord) -> set[str]:
    return {normalize_lemma(p) for p in record.phrases if normalize_lemma(p)}


def _example_count(record: TranslationRecord) -> int:
    return sum(len(s.examples) for s in record.synonyms)


def enrichment_diff(
    baseline: Iterable[TranslationRecord] | Mapping[SynsetId, TranslationRecord],
    current: Iterable[TranslationRecord] | Mapping[SynsetId, TranslationRecord],
) -> EnrichmentDiff:
    """Compare two snapshots of the same id space, record by record.

    Records are matched by synset id. A current record with no baseline
    counterpart counts everything it carries as added. Baseline records that
    vanished are not subtracted anywhere; they are listed in
    ``ignored_baseline`` for the caller to surface.
    """
    base = baseline if isinstance(baseline, Mapping) else _by_id(baseline)
    cur = current if isinstance(current, Mapping) else _by_id(current)

    counters: dict[str, dict[str, int]] = {name: {} for name in EnrichmentDiff.METRICS}

    def bump(metric: str, pos: PartOfSpeech, amount: int) -> None:
        if amount:
            group = pos.group
            counters[metric][group] = counters[metric].get(group, 0) + amount

    for sid, record in cur.items():
        old = base.get(sid)
        pos = sid.pos
        new_lemmas = _lemma_set(record)
        new_phrases = _phrase_set(record)
        if old is None:
            bump("synonyms_added", pos, len(new_lemmas))
            if record.gloss.strip():
                bump("glosses_added", pos, 1)
            bump("examples_added", pos, _example_count(record))
            if record.is_gap:
                bump("gaps_identified", pos, 1)
            bump("phrases_added", pos, len(new_phrases))
            continue
        old_lemmas = _lemma_set(old)
        bump("synonyms_added", pos, len(new_lemmas - old_lemmas))
        bump("synonyms_excluded", pos, len(old_lemmas - new_lemmas))
        if not old.gloss.strip() and record.gloss.strip():
            bump("glosses_added", pos, 1)
        bump("examples_added", pos, max(0, _example_count(record) - _example_count(old)))
        if record.is_gap and not old.is_gap:
            bump("gaps_identified", pos, 1)
        bump("phrases_added", pos, len(new_phrases - _phrase_set(old)))

    ignored = tuple(sorted((sid for sid in base if sid not in cur), key=str))

    return EnrichmentDiff(
        ignored_baseline=ignored,
        **{
            name: PosBreakdown.from_counts(counts)
            for name, counts in counters.items()
        },
    )


@dataclass(frozen=True)
class LoopReport:
    """Histogram of how often records bounced back, per reviewing role."""

    corrector_rejections: dict[int, int]
    expert_rejections: dict[int, int]

    @property
    def total_corrector_rejects(self) -> int:
        return sum(n * count for n, count in self.corrector_rejections.items())

    @property
    def total_expert_rejects(self) -> int:
        return sum(n * count for n, count in self.expert_rejections.items())

    def to_dict(self) -> dict:
        return {
            "corrector_rejections": dict(sorted(self.corrector_rejections.items())),
            "expert_rejections": dict(sorted(self.expert_rejections.items())),
            "total_corrector_rejects": self.total_corrector_rejects,
            "total_expert_rejects": self.total_expert_rejects,
        }


def loop_metrics(records: Iterable[TranslationRecord]) -> LoopReport:
    """Count reject events per record and bucket records by that count."""
    corrector: dict[int, int] = {}
    expert: dict[int, int] = {}
    for record in records:
        c = sum(
            1
            for e in record.history
            if e.action == "reject" and e.role is Role.CORRECTOR
        )
        x = sum(
            1 for e in record.history if e.action == "reject" and e.role is Role.EXPERT
        )
        corrector[c] = corrector.get(c, 0) + 1
        expert[x] = expert.get(x, 0) + 1
    return LoopReport(corrector_rejections=corrector, expert_rejections=expert)
