"""Core domain types shared by every other module.

A :class:`SourceSynset` is one concept taken from the English database.
A :class:`TranslationRecord` is the target-language side of that concept
and is the unit of work in the review pipeline. Records are frozen
dataclasses; the workflow module produces updated copies instead of
mutating in place, which keeps history append-only and makes optimistic
concurrency checks trivial.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from datetime import datetime
from enum import Enum


class LexibridgeError(Exception):
    """Base class for errors raised by this package."""


def normalize_lemma(raw: str) -> str:
    """Trim and collapse internal whitespace runs to single spaces.

    Nothing else is touched: diacritics, hamza variants and every other
    code point survive byte for byte. Near-duplicate spellings are a
    review concern, not something to fold away silently.
    """
    return " ".join(raw.split())


class PartOfSpeech(str, Enum):
    """Lexical categories used by the source database."""

    NOUN = "noun"
    VERB = "verb"
    ADJECTIVE = "adjective"
    ADJECTIVE_SATELLITE = "adjective-satellite"
    ADVERB = "adverb"

    @classmethod
    def from_wndb(cls, letter: str) -> "PartOfSpeech":
        try:
            return _WNDB_LETTERS[letter]
        except KeyError:
            raise ValueError(f"unknown synset type letter {letter!r}") from None

    @property
    def wndb_letter(self) -> str:
        return _TO_LETTER[self]

    @property
    def group(self) -> str:
        """Reporting group name; satellites are counted with adjectives."""
        if self is PartOfSpeech.ADJECTIVE_SATELLITE:
            return "adjectives"
        return self.value + "s"

    @classmethod
    def parse(cls, text: str) -> "PartOfSpeech":
        """Accept either the full tag (``noun``) or the file letter (``n``)."""
        text = text.strip()
        if text in _WNDB_LETTERS:
            return _WNDB_LETTERS[text]
        try:
            return cls(text)
        except ValueError:
            raise ValueError(f"unknown part of speech {text!r}") from None


_WNDB_LETTERS = {
    "n": PartOfSpeech.NOUN,
    "v": PartOfSpeech.VERB,
    "a": PartOfSpeech.ADJECTIVE,
    "s": PartOfSpeech.ADJECTIVE_SATELLITE,
    "r": PartOfSpeech.ADVERB,
}
_TO_LETTER = {pos: letter for letter, pos in _WNDB_LETTERS.items()}


class WorkflowState(str, Enum):
    UNTRANSLATED = "untranslated"
    NOT_UNDERSTOOD = "not_understood"
    PENDING_CORRECTION = "pending_correction"
    RETURNED_TO_TRANSLATOR = "returned_to_translator"
    PENDING_EXPERT = "pending_expert"
    RETURNED_TO_CORRECTOR = "returned_to_corrector"
    ACCEPTED = "accepted"


class Role(str, Enum):
    TRANSLATOR = "translator"
    CORRECTOR = "corrector"
    EXPERT = "expert"


class Severity(str, Enum):
    ERROR = "error"
    WARNING = "warning"


_OFFSET_RE = re.compile(r"^\d{8}$")


@dataclass(frozen=True, order=True)
class SynsetId:
    """Stable identity of a synset: part of speech plus zero-padded offset."""

    pos: PartOfSpeech
    offset: str

    def __post_init__(self) -> None:
        if not isinstance(self.pos, PartOfSpeech):
            raise ValueError(f"pos must be a PartOfSpeech, got {self.pos!r}")
        if not _OFFSET_RE.match(self.offset):
            raise ValueError(f"offset must be 8 decimal digits, got {self.offset!r}")

    def __str__(self) -> str:
        return f"{self.pos.value}:{self.offset}"

    @classmethod
    def parse(cls, text: str) -> "SynsetId":
        pos_part, sep, offset = text.partition(":")
        if not sep:
            raise ValueError(f"expected pos:offset, got {text!r}")
        return cls(PartOfSpeech.parse(pos_part), offset)


@dataclass(frozen=True)
class SourceSynset:
    """One concept from the English database, as parsed from a data file."""

    id: SynsetId
    lemmas: tuple[str, ...]
    gloss: str
    examples: tuple[str, ...] = ()
    hypernyms: tuple[SynsetId, ...] = ()
    lex_file: int = 0

    def __post_init__(self) -> None:
        if not self.lemmas:
            raise ValueError(f"{self.id}: a synset needs at least one lemma")
        seen: set[str] = set()
        for lemma in self.lemmas:
            folded = lemma.casefold()
            if folded in seen:
                raise ValueError(f"{self.id}: duplicate lemma {lemma!r}")
            seen.add(folded)
        if not self.gloss.strip():
            raise ValueError(f"{self.id}: gloss must not be empty")
        if self.id in self.hypernyms:
            raise ValueError(f"{self.id}: synset cannot be its own hypernym")
        if not 0 <= self.lex_file <= 99:
            raise ValueError(f"{self.id}: lex_file out of range: {self.lex_file}")

    def to_dict(self) -> dict:
        return {
            "id": str(self.id),
            "lemmas": list(self.lemmas),
            "gloss": self.gloss,
            "examples": list(self.examples),
            "hypernyms": [str(h) for h in self.hypernyms],
            "lex_file": self.lex_file,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "SourceSynset":
        return cls(
            id=SynsetId.parse(data["id"]),
            lemmas=tuple(data["lemmas"]),
            gloss=data["gloss"],
            examples=tuple(data.get("examples", ())),
            hypernyms=tuple(SynsetId.parse(h) for h in data.get("hypernyms", ())),
            lex_file=data.get("lex_file", 0),
        )


@dataclass(frozen=True)
class Synonym:
    """One target-language synonym with its rank and usage examples."""

    lemma: str
    rank: int
    examples: tuple[str, ...] = ()

    def __post_init__(self) -> None:
        normalized = normalize_lemma(self.lemma)
        if not normalized:
            raise ValueError("synonym lemma must not be empty")
        object.__setattr__(self, "lemma", normalized)
        if not isinstance(self.rank, int) or self.rank < 1:
            raise ValueError(f"rank must be a positive integer, got {self.rank!r}")

    def to_dict(self) -> dict:
        return {"lemma": self.lemma, "rank": self.rank, "examples": list(self.examples)}

    @classmethod
    def from_dict(cls, data: dict) -> "Synonym":
        return cls(
            lemma=data["lemma"],
            rank=data["rank"],
            examples=tuple(data.get("examples", ())),
        )


@dataclass(frozen=True)
class WorkflowEvent:
    """One audit entry: who did what to a record, and at which revision."""

    actor: str
    role: Role
    action: str
    note: str
    timestamp: datetime
    revision: int
    warnings: tuple[str, ...] = ()

    def to_dict(self) -> dict:
        return {
            "actor": self.actor,
            "role": self.role.value,
            "action": self.action,
            "note": self.note,
            "timestamp": self.timestamp.isoformat(),
            "revision": self.revision,
            "warnings": list(self.warnings),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "WorkflowEvent":
        return cls(
            actor=data["actor"],
            role=Role(data["role"]),
            action=data["action"],
            note=data.get("note", ""),
            timestamp=datetime.fromisoformat(data["timestamp"]),
            revision=data["revision"],
            warnings=tuple(data.get("warnings", ())),
        )


@dataclass(frozen=True)
class TranslationRecord:
    """Target-language content and review status for one synset.

    ``revision`` starts at 0 and goes up by exactly one for every applied
    action; ``history`` holds the matching events in order. A record with
    ``is_gap`` set carries substitute phrases instead of synonyms.
    """

    source: SynsetId
    state: WorkflowState = WorkflowState.UNTRANSLATED
    is_gap: bool = False
    phrases: tuple[str, ...] = ()
    synonyms: tuple[Synonym, ...] = ()
    gloss: str = ""
    not_understood: bool = False
    revision: int = 0
    history: tuple[WorkflowEvent, ...] = ()

    def to_dict(self) -> dict:
        return {
            "source": str(self.source),
            "state": self.state.value,
            "is_gap": self.is_gap,
            "phrases": list(self.phrases),
            "synonyms": [s.to_dict() for s in self.synonyms],
            "gloss": self.gloss,
            "not_understood": self.not_understood,
            "revision": self.revision,
            "history": [e.to_dict() for e in self.history],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "TranslationRecord":
        return cls(
            source=SynsetId.parse(data["source"]),
            state=WorkflowState(data["state"]),
            is_gap=data.get("is_gap", False),
            phrases=tuple(data.get("phrases", ())),
            synonyms=tuple(Synonym.from_dict(s) for s in data.get("synonyms", ())),
            gloss=data.get("gloss", ""),
            not_understood=data.get("not_understood", False),
            revision=data.get("revision", 0),
            history=tuple(WorkflowEvent.from_dict(e) for e in data.get("history", ())),
        )


def new_record(source: SourceSynset) -> TranslationRecord:
    """Create the pristine, untranslated record for a source synset."""
    return TranslationRecord(source=source.id)


@dataclass(frozen=True)
class Finding:
    """One validation result, pointing at a record or one of its synonyms."""

    rule_id: str
    severity: Severity
    message: str
    synset: SynsetId | None = None
    synonym_index: int | None = None

    @property
    def locus(self) -> str:
        base = str(self.synset) if self.synset is not None else "-"
        if self.synonym_index is not None:
            return f"{base}#{self.synonym_index}"
        return base

    def to_line(self) -> str:
        return "\t".join((self.severity.value, self.rule_id, self.locus, self.message))

    def to_dict(self) -> dict:
        return {
            "rule_id": self.rule_id,
            "severity": self.severity.value,
            "message": self.message,
            "locus": self.locus,
        }

    def sort_key(self) -> tuple:
        return (
            self.rule_id,
            str(self.synset) if self.synset is not None else "",
            self.synonym_index if self.synonym_index is not None else -1,
            self.message,
        )
