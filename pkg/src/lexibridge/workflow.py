"""The three-role review pipeline.

A record moves through the states below. The transition table is the whole
truth: a (state, action, role) triple outside it is rejected.

    untranslated            --submit (translator)-->            pending_correction
    untranslated            --mark_not_understood (translator)--> not_understood
    not_understood          --reassign (corrector)-->            untranslated
    pending_correction      --accept (corrector)-->              pending_expert
    pending_correction      --reject (corrector)-->              returned_to_translator
    returned_to_translator  --resubmit (translator)-->           pending_correction
    pending_expert          --accept (expert)-->                 accepted
    pending_expert          --reject (expert)-->                 returned_to_corrector
    returned_to_corrector   --resubmit (corrector)-->            pending_expert

``accepted`` is terminal. Rejections and mark_not_understood require a note.
Transitions into the gated states run the validation rules first; errors
abort the action and leave the record untouched. An expert never sees the
English side of a record unless the record is a lexical gap, where the
source is the only thing left to judge.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from datetime import datetime, timezone
from collections.abc import Mapping

from lexibridge.model import (
    Finding,
    LexibridgeError,
    Role,
    SourceSynset,
    Synonym,
    SynsetId,
    TranslationRecord,
    WorkflowEvent,
    WorkflowState,
    normalize_lemma,
)
from lexibridge.validation import (
    GATED_STATES,
    RULES_BY_ID,
    validate_for_transition,
)

S = WorkflowState
R = Role

TRANSITIONS: dict[tuple[WorkflowState, str, Role], WorkflowState] = {
    (S.UNTRANSLATED, "submit", R.TRANSLATOR): S.PENDING_CORRECTION,
    (S.UNTRANSLATED, "mark_not_understood", R.TRANSLATOR): S.NOT_UNDERSTOOD,
    (S.NOT_UNDERSTOOD, "reassign", R.CORRECTOR): S.UNTRANSLATED,
    (S.PENDING_CORRECTION, "accept", R.CORRECTOR): S.PENDING_EXPERT,
    (S.PENDING_CORRECTION, "reject", R.CORRECTOR): S.RETURNED_TO_TRANSLATOR,
    (S.RETURNED_TO_TRANSLATOR, "resubmit", R.TRANSLATOR): S.PENDING_CORRECTION,
    (S.PENDING_EXPERT, "accept", R.EXPERT): S.ACCEPTED,
    (S.PENDING_EXPERT, "reject", R.EXPERT): S.RETURNED_TO_CORRECTOR,
    (S.RETURNED_TO_CORRECTOR, "resubmit", R.CORRECTOR): S.PENDING_EXPERT,
}

ACTIONS = tuple(sorted({action for (_, action, _) in TRANSITIONS}))

NOTE_REQUIRED = frozenset({"reject", "mark_not_understood"})

# Actions that may carry content edits. A corrector may reject a claimed gap
# by supplying the counter-synonyms directly, so reject is included.
EDIT_ACTIONS = frozenset({"submit", "resubmit", "reject"})

ROLE_QUEUES: dict[Role, frozenset[WorkflowState]] = {
    R.TRANSLATOR: frozenset({S.UNTRANSLATED, S.RETURNED_TO_TRANSLATOR}),
    R.CORRECTOR: frozenset(
        {S.PENDING_CORRECTION, S.RETURNED_TO_CORRECTOR, S.NOT_UNDERSTOOD}
    ),
    R.EXPERT: frozenset({S.PENDING_EXPERT}),
}


class IllegalTransitionError(LexibridgeError):
    """The (state, action, role) triple is not in the transition table."""


class RoleNotAllowedError(IllegalTransitionError):
    """The action exists here, but belongs to a different role."""


class MissingNoteError(LexibridgeError):
    """The action requires an explanatory note and none was given."""


class DutySeparationError(LexibridgeError):
    """The same person may not review their own submission."""


class EmptyPhrasesError(LexibridgeError):
    """A gap needs at least one substitute phrase."""


class ValidationBlockedError(LexibridgeError):
    """Error findings prevent the record from moving forward."""

    def __init__(self, findings: tuple[Finding, ...]):
        self.findings = findings
        summary = "; ".join(f"{f.rule_id}: {f.message}" for f in findings)
        super().__init__(f"validation blocked the transition: {summary}")


def successors(state: WorkflowState) -> set[WorkflowState]:
    return {nxt for (src, _, _), nxt in TRANSITIONS.items() if src == state}


def legal_actions(state: WorkflowState) -> list[tuple[str, Role, WorkflowState]]:
    """The (action, role, next state) triples available from ``state``."""
    return sorted(
        (action, role, nxt)
        for (src, action, role), nxt in TRANSITIONS.items()
        if src == state
    )


@dataclass(frozen=True)
class RecordEdits:
    """Content changes bundled with an action. ``None`` leaves a field alone."""

    gloss: str | None = None
    is_gap: bool | None = None
    phrases: tuple[str, ...] | None = None
    synonyms: tuple[Synonym, ...] | None = None

    @classmethod
    def from_payload(cls, payload: Mapping) -> "RecordEdits":
        synonyms = None
        if payload.get("synonyms") is not None:
            synonyms = tuple(
                Synonym(
                    lemma=s["lemma"],
                    rank=s["rank"],
                    examples=tuple(s.get("examples", ())),
                )
                for s in payload["synonyms"]
            )
        phrases = None
        if payload.get("phrases") is not None:
            phrases = tuple(
                normalize_lemma(p) for p in payload["phrases"] if normalize_lemma(p)
            )
        return cls(
            gloss=payload.get("gloss"),
            is_gap=payload.get("is_gap"),
            phrases=phrases,
            synonyms=synonyms,
        )

    def to_delta(self) -> dict:
        delta: dict = {}
        if self.gloss is not None:
            delta["gloss"] = self.gloss
        if self.is_gap is not None:
            delta["is_gap"] = self.is_gap
        if self.phrases is not None:
            delta["phrases"] = list(self.phrases)
        if self.synonyms is not None:
            delta["synonyms"] = [s.to_dict() for s in self.synonyms]
        return delta

    @classmethod
    def from_delta(cls, delta: Mapping) -> "RecordEdits":
        return cls.from_payload(delta)


def apply_edits(record: TranslationRecord, edits: RecordEdits | None) -> TranslationRecord:
    """Return a copy of ``record`` with the edits folded in. No state change."""
    if edits is None:
        return record
    changes: dict = {}
    if edits.gloss is not None:
        changes["gloss"] = edits.gloss
    if edits.is_gap is not None:
        changes["is_gap"] = edits.is_gap
    if edits.phrases is not None:
        changes["phrases"] = edits.phrases
    if edits.synonyms is not None:
        changes["synonyms"] = edits.synonyms
    if not changes:
        return record
    draft = replace(record, **changes)
    _require_contiguous_ranks(draft)
    return draft


def _require_contiguous_ranks(record: TranslationRecord) -> None:
    """Ranks must stay a permutation of 1..k at rest, not just at the gates."""
    ranks = sorted(s.rank for s in record.synonyms)
    if ranks != list(range(1, len(ranks) + 1)):
        rule = RULES_BY_ID["E07"]
        listed = ", ".join(str(r) for r in ranks)
        finding = Finding(
            rule_id=rule.rule_id,
            severity=rule.severity,
            message=f"ranks must run 1..{len(ranks)}, got {listed}",
            synset=record.source,
        )
        raise ValidationBlockedError((finding,))


def _last_actor(record: TranslationRecord, role: Role, actions: frozenset[str]) -> str | None:
    for event in reversed(record.history):
        if event.role is role and event.action in actions:
            return event.actor
    return None


def _check_duty_separation(record: TranslationRecord, action: str, actor: str, role: Role) -> None:
    if action not in ("accept", "reject"):
        return
    submitter = _last_actor(record, R.TRANSLATOR, frozenset({"submit", "resubmit"}))
    if role is R.CORRECTOR:
        if submitter is not None and submitter == actor:
            raise DutySeparationError(
                f"{actor} translated this record and cannot correct it"
            )
    elif role is R.EXPERT:
        corrector = _last_actor(record, R.CORRECTOR, frozenset({"accept", "resubmit"}))
        if submitter is not None and submitter == actor:
            raise DutySeparationError(
                f"{actor} translated this record and cannot review it as expert"
            )
        if corrector is not None and corrector == actor:
            raise DutySeparationError(
                f"{actor} corrected this record and cannot review it as expert"
            )


def _now() -> datetime:
    return datetime.now(timezone.utc)


def apply(
    record: TranslationRecord,
    action: str,
    actor: str,
    role: Role,
    note: str = "",
    edits: RecordEdits | None = None,
    *,
    source: SourceSynset | None = None,
    records: Mapping[SynsetId, TranslationRecord] | None = None,
    sources: Mapping[SynsetId, SourceSynset] | None = None,
    now: datetime | None = None,
) -> TranslationRecord:
    """Apply one action and return the updated record.

    Everything is checked before anything is built, so a failure of any kind
    leaves the caller's record exactly as it was. ``records``/``sources``
    give the cross-record detectors their context when available.
    """
    key = (record.state, action, role)
    if key not in TRANSITIONS:
        if any(k[0] is record.state and k[1] == action for k in TRANSITIONS):
            raise RoleNotAllowedError(
                f"{action!r} from {record.state.value} is not a {role.value} action"
            )
        raise IllegalTransitionError(
            f"no action {action!r} for role {role.value} from state {record.state.value}"
        )
    next_state = TRANSITIONS[key]

    if action in NOTE_REQUIRED and not note.strip():
        raise MissingNoteError(f"{action!r} requires a note")

    if edits is not None and action not in EDIT_ACTIONS:
        raise IllegalTransitionError(f"{action!r} does not accept content edits")

    _check_duty_separation(record, action, actor, role)

    draft = apply_edits(record, edits)

    warnings: tuple[str, ...] = ()
    if next_state in GATED_STATES:
        check = validate_for_transition(draft, source, next_state, records, sources)
        if not check.ok:
            raise ValidationBlockedError(check.blocking)
        warnings = tuple(f.to_line() for f in check.warnings)

    not_understood = draft.not_understood
    if action == "mark_not_understood":
        not_understood = True
    elif action == "reassign":
        not_understood = False

    event = WorkflowEvent(
        actor=actor,
        role=role,
        action=action,
        note=note,
        timestamp=now or _now(),
        revision=record.revision + 1,
        warnings=warnings,
    )
    return replace(
        draft,
        state=next_state,
        not_understood=not_understood,
        revision=record.revision + 1,
        history=record.history + (event,),
    )


def mark_gap(
    record: TranslationRecord,
    phrases: list[str] | tuple[str, ...],
    actor: str,
    role: Role,
    *,
    now: datetime | None = None,
) -> TranslationRecord:
    """Flag a record as a lexical gap, replacing its synonyms with phrases.

    This is a content edit, not a state change: the record stays in the
    translator's hands and still has to go through submit. The edit is
    recorded in history like any other mutation.
    """
    if role is not Role.TRANSLATOR:
        raise RoleNotAllowedError("only a translator can mark a gap")
    if record.state not in ROLE_QUEUES[Role.TRANSLATOR]:
        raise IllegalTransitionError(
            f"cannot mark a gap while the record is {record.state.value}"
        )
    cleaned = tuple(normalize_lemma(p) for p in phrases if normalize_lemma(p))
    if not cleaned:
        raise EmptyPhrasesError("a gap needs at least one substitute phrase")

    event = WorkflowEvent(
        actor=actor,
        role=role,
        action="mark_gap",
        note="",
        timestamp=now or _now(),
        revision=record.revision + 1,
    )
    return replace(
        record,
        is_gap=True,
        phrases=cleaned,
        synonyms=(),
        revision=record.revision + 1,
        history=record.history + (event,),
    )


def replay_event(
    record: TranslationRecord, event: WorkflowEvent, delta: Mapping | None
) -> TranslationRecord:
    """Re-apply a logged event without gates; used when rebuilding from a log."""
    edits = RecordEdits.from_delta(delta) if delta else None
    draft = apply_edits(record, edits)
    if event.action == "mark_gap":
        next_state = record.state
        not_understood = draft.not_understood
    else:
        key = (record.state, event.action, event.role)
        if key not in TRANSITIONS:
            raise IllegalTransitionError(
                f"logged event {event.action!r} does not fit state {record.state.value}"
            )
        next_state = TRANSITIONS[key]
        not_understood = draft.not_understood
        if event.action == "mark_not_understood":
            not_understood = True
        elif event.action == "reassign":
            not_understood = False
    return replace(
        draft,
        state=next_state,
        not_understood=not_understood,
        revision=event.revision,
        history=record.history + (event,),
    )


@dataclass(frozen=True)
class RecordView:
    """What one role is allowed to see of a record."""

    record: dict
    source: dict | None
    role: Role
    redacted: bool

    def to_dict(self) -> dict:
        return {
            "record": self.record,
            "source": self.source,
            "role": self.role.value,
            "redacted": self.redacted,
        }


def view_for(
    record: TranslationRecord, source: SourceSynset | None, role: Role
) -> RecordView:
    """Build the role-scoped view of a record.

    Translators and correctors work bilingually. An expert judges the target
    content on its own merits, so the English side is stripped, except for
    gap records where the source concept is exactly what must be assessed.
    """
    record_dict = record.to_dict()
    if role is Role.EXPERT and not record.is_gap:
        return RecordView(record=record_dict, source=None, role=role, redacted=True)
    source_dict = source.to_dict() if source is not None else None
    return RecordView(record=record_dict, source=source_dict, role=role, redacted=False)


class AlreadyClaimedError(LexibridgeError):
    """Someone else holds this record."""


class WrongQueueError(LexibridgeError):
    """The record is not in the claiming role's queue."""


@dataclass(frozen=True)
class Claim:
    record_id: SynsetId
    actor: str
    role: Role
    claimed_at: datetime

    def to_dict(self) -> dict:
        return {
            "record_id": str(self.record_id),
            "actor": self.actor,
            "role": self.role.value,
            "claimed_at": self.claimed_at.isoformat(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Claim":
        return cls(
            record_id=SynsetId.parse(data["record_id"]),
            actor=data["actor"],
            role=Role(data["role"]),
            claimed_at=datetime.fromisoformat(data["claimed_at"]),
        )


class ClaimBoard:
    """Tracks which user is working on which record.

    Claims are cooperative: they keep two people of the same role from
    picking up the same record, they do not gate transitions. Claims have no
    expiry; an administrator releases stale ones explicitly.
    """

    def __init__(self) -> None:
        self._claims: dict[SynsetId, Claim] = {}

    def assign(
        self,
        record: TranslationRecord,
        actor: str,
        role: Role,
        *,
        now: datetime | None = None,
    ) -> Claim:
        if record.state not in ROLE_QUEUES[role]:
            raise WrongQueueError(
                f"{record.source} is {record.state.value}, outside the "
                f"{role.value} queue"
            )
        existing = self._claims.get(record.source)
        if existing is not None:
            if existing.actor == actor and existing.role is role:
                return existing
            raise AlreadyClaimedError(
                f"{record.source} is already claimed by {existing.actor}"
            )
        claim = Claim(
            record_id=record.source,
            actor=actor,
            role=role,
            claimed_at=now or _now(),
        )
        self._claims[record.source] = claim
        return claim

    def holder(self, record_id: SynsetId) -> Claim | None:
        return self._claims.get(record_id)

    def restore(self, claim: Claim) -> None:
        """Put back a previously persisted claim without queue checks."""
        self._claims[claim.record_id] = claim

    def release(self, record_id: SynsetId) -> bool:
        return self._claims.pop(record_id, None) is not None

    def release_all(self) -> int:
        count = len(self._claims)
        self._claims.clear()
        return count

    def all_claims(self) -> list[Claim]:
        return sorted(self._claims.values(), key=lambda c: str(c.record_id))

    def __len__(self) -> int:
        return len(self._claims)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClaimBoard):
            return NotImplemented
        return self._claims == other._claims
