"""Builders shared by the test modules.

Default content is Arabic on purpose: the script warnings treat Latin
characters as suspicious, so tests that are not about those warnings need
clean target-language material to avoid incidental findings.
"""

from datetime import datetime, timedelta, timezone

from lexibridge.model import (
    PartOfSpeech,
    SourceSynset,
    Synonym,
    SynsetId,
    TranslationRecord,
    WorkflowState,
)
from lexibridge.workflow import RecordEdits

EPOCH = datetime(2024, 3, 1, 12, 0, 0, tzinfo=timezone.utc)

# A gloss of four words and one example per synonym, each example containing
# its lemma, so the built records trip neither the script, the missing-example
# nor the short-gloss checks.
CAR_GLOSS = "وسيلة نقل ذات عجلات"
CAR_SYNONYMS = (
    Synonym("سيارة", 1, ("اشتريت سيارة جديدة",)),
    Synonym("مركبة", 2, ("هذه مركبة سريعة",)),
)


def at(seconds: int = 0) -> datetime:
    """A deterministic clock: EPOCH plus the given number of seconds."""
    return EPOCH + timedelta(seconds=seconds)


def sid(text: str) -> SynsetId:
    return SynsetId.parse(text)


def make_source(
    id: str = "noun:02958343",
    lemmas: tuple[str, ...] = ("car", "auto"),
    gloss: str = "a motor vehicle with four wheels",
    examples: tuple[str, ...] = ("he needs a car to get to work",),
    hypernyms: tuple[str, ...] = (),
    lex_file: int = 6,
) -> SourceSynset:
    return SourceSynset(
        id=sid(id),
        lemmas=lemmas,
        gloss=gloss,
        examples=examples,
        hypernyms=tuple(sid(h) for h in hypernyms),
        lex_file=lex_file,
    )


def make_record(
    id: str = "noun:02958343",
    state: WorkflowState = WorkflowState.UNTRANSLATED,
    is_gap: bool = False,
    phrases: tuple[str, ...] = (),
    synonyms: tuple[Synonym, ...] = (),
    gloss: str = "",
    revision: int = 0,
) -> TranslationRecord:
    return TranslationRecord(
        source=sid(id),
        state=state,
        is_gap=is_gap,
        phrases=phrases,
        synonyms=synonyms,
        gloss=gloss,
        revision=revision,
    )


def good_edits() -> RecordEdits:
    """Edits that pass every gate for an ordinary (non-gap) record."""
    return RecordEdits(gloss=CAR_GLOSS, synonyms=CAR_SYNONYMS)


def filled_record(
    id: str = "noun:02958343",
    state: WorkflowState = WorkflowState.PENDING_CORRECTION,
    revision: int = 1,
) -> TranslationRecord:
    """A record already carrying gate-clean content at the given state."""
    return make_record(
        id=id,
        state=state,
        synonyms=CAR_SYNONYMS,
        gloss=CAR_GLOSS,
        revision=revision,
    )


def source_for(record: TranslationRecord, **kwargs) -> SourceSynset:
    return make_source(id=str(record.source), **kwargs)


def arabic_synonym(lemma: str, rank: int, with_example: bool = True) -> Synonym:
    examples = (f"مثال يذكر {lemma} بوضوح",) if with_example else ()
    return Synonym(lemma, rank, examples)


__all__ = [
    "CAR_GLOSS",
    "CAR_SYNONYMS",
    "EPOCH",
    "arabic_synonym",
    "at",
    "filled_record",
    "good_edits",
    "make_record",
    "make_source",
    "sid",
    "source_for",
]
