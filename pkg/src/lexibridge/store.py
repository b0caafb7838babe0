"""Event-sourced project store and its on-disk format.

The store keeps the source synsets, one translation record per synset, an
append-only log of everything that changed them, and the claim board. The
log is the authority: replaying it from an empty store reproduces the
records exactly, and the file format is simply the log written out line by
line.

File layout (UTF-8 text, one entry per line)::

    lexibridge-project<TAB>1
    source<TAB>{json}            # a source synset became known
    create<TAB>{json}            # a record entered the store
    event<TAB>{json}             # an action was applied to a record
    claim<TAB>{json}             # current claims (not part of the log)
    snap<TAB>{json}              # optional snapshot, checked against replay
    end<TAB>{"entries": N}

A file that stops before the ``end`` line is treated as truncated. Snapshot
lines, when present, must agree with the replayed records; disagreement
means the file was edited or damaged.
"""

from __future__ import annotations

import json
import os
import threading
from pathlib import Path

from lexibridge import export as export_mod
from lexibridge import wndb
from lexibridge.model import (
    LexibridgeError,
    PartOfSpeech,
    Role,
    SourceSynset,
    SynsetId,
    TranslationRecord,
    WorkflowEvent,
    WorkflowState,
)
from lexibridge.validation import check_all
from lexibridge.workflow import (
    Claim,
    ClaimBoard,
    RecordEdits,
    apply,
    mark_gap,
    replay_event,
    view_for,
)

SCHEMA_VERSION = 1
HEADER_TAG = "lexibridge-project"
DATA_ENV_VAR = "LEXIBRIDGE_DATA"
DEFAULT_STORE = "lexibridge.project"

LOG_KINDS = ("source", "create", "event")


class CorruptFileError(LexibridgeError):
    """The project file cannot be read back; byte offset points at the damage."""

    def __init__(self, path: str, offset: int, reason: str):
        self.path = path
        self.offset = offset
        self.reason = reason
        super().__init__(f"{path}: corrupt at byte {offset}: {reason}")


class VersionMismatchError(LexibridgeError):
    """The file comes from an incompatible schema version."""


class StaleRevisionError(LexibridgeError):
    """The caller acted on an out-of-date copy of the record."""

    def __init__(self, record_id: SynsetId, expected: int, actual: int):
        self.record_id = record_id
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"{record_id} is at revision {actual}, caller expected {expected}"
        )


class UnknownRecordError(LexibridgeError):
    """No record with that id exists in the store."""


class RecordExistsError(LexibridgeError):
    """A record with content or history is already present for that id."""


def default_store_path() -> Path:
    return Path(os.environ.get(DATA_ENV_VAR, DEFAULT_STORE))


class ProjectStore:
    """All project state plus the log that produced it."""

    def __init__(self) -> None:
        self.sources: dict[SynsetId, SourceSynset] = {}
        self.records: dict[SynsetId, TranslationRecord] = {}
        self.log: list[dict] = []
        self.claims = ClaimBoard()
        self.schema_version = SCHEMA_VERSION
        self._lock = threading.RLock()

    # ------------------------------------------------------------------ log

    def _log_source(self, source: SourceSynset, origin: str) -> None:
        self.log.append({"kind": "source", "origin": origin, "source": source.to_dict()})

    def _log_create(self, record: TranslationRecord, origin: str) -> None:
        self.log.append({"kind": "create", "origin": origin, "record": record.to_dict()})

    def _log_event(
        self, record_id: SynsetId, event: WorkflowEvent, delta: dict | None, state: WorkflowState
    ) -> None:
        self.log.append(
            {
                "kind": "event",
                "id": str(record_id),
                "event": event.to_dict(),
                "delta": delta,
                "state": state.value,
            }
        )

    # -------------------------------------------------------------- imports

    def import_wndb(self, directory: str | Path) -> tuple[wndb.ParseReport, int]:
        """Load source synsets and create pristine records for new ones."""
        with self._lock:
            synsets, report = wndb.load_source(directory)
            created = 0
            for sid, synset in sorted(synsets.items(), key=lambda kv: str(kv[0])):
                if sid not in self.sources:
                    self.sources[sid] = synset
                    self._log_source(synset, "wndb")
                if sid not in self.records:
                    record = TranslationRecord(source=sid)
                    self.records[sid] = record
                    self._log_create(record, "wndb")
                    created += 1
            return report, created

    def import_prior(
        self, contents: str
    ) -> tuple[int, list[SynsetId], wndb.ParseReport]:
        """Overlay previously translated rows onto the store.

        Rows for unknown synsets are skipped and returned so the caller can
        report them. Rows may replace a record only while it is pristine
        (untranslated, never touched); anything else is a hard error, since
        silently clobbering review history would be worse than stopping.
        """
        with self._lock:
            records, report = wndb.import_prior_translations(contents)
            skipped: list[SynsetId] = []
            imported = 0
            for record in records:
                sid = record.source
                if sid not in self.sources:
                    skipped.append(sid)
                    continue
                existing = self.records.get(sid)
                if existing is not None and (
                    existing.revision > 0
                    or existing.state is not WorkflowState.UNTRANSLATED
                ):
                    raise RecordExistsError(
                        f"{sid} already has workflow history; refusing to overwrite"
                    )
                self.records[sid] = record
                self._log_create(record, "prior")
                imported += 1
            return imported, skipped, report

    # ------------------------------------------------------------ mutation

    def _get(self, record_id: SynsetId) -> TranslationRecord:
        try:
            return self.records[record_id]
        except KeyError:
            raise UnknownRecordError(str(record_id)) from None

    def transition(
        self,
        record_id: SynsetId,
        action: str,
        actor: str,
        role: Role,
        note: str = "",
        edits: RecordEdits | None = None,
        expected_revision: int | None = None,
    ) -> TranslationRecord:
        """Apply a workflow action under the optimistic concurrency check."""
        with self._lock:
            record = self._get(record_id)
            if expected_revision is not None and expected_revision != record.revision:
                raise StaleRevisionError(record_id, expected_revision, record.revision)
            updated = apply(
                record,
                action,
                actor,
                role,
                note=note,
                edits=edits,
                source=self.sources.get(record_id),
                records=self.records,
                sources=self.sources,
            )
            self.records[record_id] = updated
            self._log_event(
                record_id,
                updated.history[-1],
                edits.to_delta() if edits is not None else None,
                updated.state,
            )
            self.claims.release(record_id)
            return updated

    def edit_gap(
        self,
        record_id: SynsetId,
        phrases: list[str],
        actor: str,
        role: Role,
        expected_revision: int | None = None,
    ) -> TranslationRecord:
        """Persisted form of the gap-marking edit."""
        with self._lock:
            record = self._get(record_id)
            if expected_revision is not None and expected_revision != record.revision:
                raise StaleRevisionError(record_id, expected_revision, record.revision)
            updated = mark_gap(record, phrases, actor, role)
            self.records[record_id] = updated
            delta = {
                "is_gap": True,
                "phrases": list(updated.phrases),
                "synonyms": [],
            }
            self._log_event(record_id, updated.history[-1], delta, updated.state)
            return updated

    # --------------------------------------------------------------- reads

    def view(self, record_id: SynsetId, role: Role) -> dict:
        with self._lock:
            record = self._get(record_id)
            view = view_for(record, self.sources.get(record_id), role)
            data = view.to_dict()
            claim = self.claims.holder(record_id)
            data["claimed_by"] = claim.actor if claim else None
            return data

    def validate_record(self, record_id: SynsetId):
        with self._lock:
            record = self._get(record_id)
            return check_all(
                record, self.sources.get(record_id), self.records, self.sources
            )

    def queue(
        self,
        role: Role,
        state: WorkflowState | None = None,
        pos: PartOfSpeech | None = None,
    ) -> list[TranslationRecord]:
        """Records in the given role's queue, oldest revision first."""
        from lexibridge.workflow import ROLE_QUEUES

        with self._lock:
            states = ROLE_QUEUES[role]
            if state is not None:
                states = states & {state}
            selected = [
                r
                for r in self.records.values()
                if r.state in states and (pos is None or r.source.pos is pos)
            ]
            selected.sort(key=lambda r: (r.revision, str(r.source)))
            return selected

    # -------------------------------------------------------------- claims

    def claim(self, record_id: SynsetId, actor: str, role: Role) -> Claim:
        with self._lock:
            return self.claims.assign(self._get(record_id), actor, role)

    def release_claim(self, record_id: SynsetId) -> bool:
        with self._lock:
            return self.claims.release(record_id)

    def release_all_claims(self) -> int:
        with self._lock:
            return self.claims.release_all()

    # -------------------------------------------------------------- export

    def export_tsv(self) -> str:
        with self._lock:
            return export_mod.to_tsv(self.records.values())

    def export_lmf(self, language: str = "und") -> str:
        with self._lock:
            return export_mod.to_lmf(
                self.records.values(), self.sources, language=language
            )

    # --------------------------------------------------------- persistence

    def save(self, path: str | Path, include_snapshot: bool = False) -> None:
        """Write the store to ``path`` atomically."""
        path = Path(path)
        with self._lock:
            lines = [f"{HEADER_TAG}\t{self.schema_version}"]
            for entry in self.log:
                kind = entry["kind"]
                payload = {k: v for k, v in entry.items() if k != "kind"}
                lines.append(f"{kind}\t{json.dumps(payload, ensure_ascii=False)}")
            for claim in self.claims.all_claims():
                lines.append(f"claim\t{json.dumps(claim.to_dict(), ensure_ascii=False)}")
            if include_snapshot:
                for sid in sorted(self.records, key=str):
                    snap = self.records[sid].to_dict()
                    lines.append(f"snap\t{json.dumps(snap, ensure_ascii=False)}")
            lines.append(f"end\t{json.dumps({'entries': len(self.log)})}")
            text = "\n".join(lines) + "\n"
        tmp = path.with_suffix(path.suffix + ".tmp")
        tmp.write_text(text, encoding="utf-8")
        os.replace(tmp, path)

    @classmethod
    def load(cls, path: str | Path) -> "ProjectStore":
        """Rebuild a store by replaying the log in ``path``."""
        path = Path(path)
        raw = path.read_bytes()
        store = cls()
        snapshots: dict[SynsetId, dict] = {}
        offset = 0
        saw_header = False
        saw_end = False

        for raw_line in raw.split(b"\n"):
            line_offset = offset
            offset += len(raw_line) + 1
            if saw_end:
                if raw_line.strip():
                    raise CorruptFileError(
                        str(path), line_offset, "content after end marker"
                    )
                continue
            if not raw_line:
                continue
            try:
                line = raw_line.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise CorruptFileError(str(path), line_offset, str(exc)) from None

            if not saw_header:
                tag, _, version_text = line.partition("\t")
                if tag != HEADER_TAG:
                    raise CorruptFileError(
                        str(path), line_offset, "missing project header"
                    )
                try:
                    version = int(version_text)
                except ValueError:
                    raise CorruptFileError(
                        str(path), line_offset, f"bad schema version {version_text!r}"
                    ) from None
                if version != SCHEMA_VERSION:
                    raise VersionMismatchError(
                        f"{path}: schema version {version} is not supported "
                        f"(expected {SCHEMA_VERSION})"
                    )
                saw_header = True
                continue

            kind, sep, payload_text = line.partition("\t")
            if not sep:
                raise CorruptFileError(str(path), line_offset, f"bad line {line!r}")
            try:
                payload = json.loads(payload_text)
            except json.JSONDecodeError as exc:
                raise CorruptFileError(str(path), line_offset, str(exc)) from None

            try:
                if kind == "source":
                    source = SourceSynset.from_dict(payload["source"])
                    store.sources[source.id] = source
                    store.log.append({"kind": "source", **payload})
                elif kind == "create":
                    record = TranslationRecord.from_dict(payload["record"])
                    store.records[record.source] = record
                    store.log.append({"kind": "create", **payload})
                elif kind == "event":
                    record_id = SynsetId.parse(payload["id"])
                    if record_id not in store.records:
                        raise CorruptFileError(
                            str(path), line_offset, f"event for unknown record {record_id}"
                        )
                    event = WorkflowEvent.from_dict(payload["event"])
                    updated = replay_event(
                        store.records[record_id], event, payload.get("delta")
                    )
                    if updated.state.value != payload.get("state", updated.state.value):
                        raise CorruptFileError(
                            str(path),
                            line_offset,
                            f"logged state {payload.get('state')!r} disagrees with replay",
                        )
                    store.records[record_id] = updated
                    store.log.append({"kind": "event", **payload})
                elif kind == "claim":
                    store.claims.restore(Claim.from_dict(payload))
                elif kind == "snap":
                    snapshots[SynsetId.parse(payload["source"])] = payload
                elif kind == "end":
                    if payload.get("entries") != len(store.log):
                        raise CorruptFileError(
                            str(path),
                            line_offset,
                            f"entry count {payload.get('entries')} does not match "
                            f"{len(store.log)} log lines",
                        )
                    saw_end = True
                else:
                    raise CorruptFileError(
                        str(path), line_offset, f"unknown line kind {kind!r}"
                    )
            except CorruptFileError:
                raise
            except (KeyError, ValueError, LexibridgeError) as exc:
                raise CorruptFileError(str(path), line_offset, str(exc)) from None

        if not saw_header:
            raise CorruptFileError(str(path), 0, "empty file")
        if not saw_end:
            raise CorruptFileError(str(path), len(raw), "truncated: no end marker")

        for sid, snap in snapshots.items():
            live = store.records.get(sid)
            if live is None or live.to_dict() != snap:
                raise CorruptFileError(
                    str(path), 0, f"snapshot for {sid} disagrees with replayed log"
                )

        return store

    # ------------------------------------------------------------- replays

    def rebuild_from_log(self) -> "ProjectStore":
        """Replay this store's log into a fresh store (claims are not logged)."""
        with self._lock:
            fresh = ProjectStore()
            for entry in self.log:
                kind = entry["kind"]
                if kind == "source":
                    source = SourceSynset.from_dict(entry["source"])
                    fresh.sources[source.id] = source
                elif kind == "create":
                    record = TranslationRecord.from_dict(entry["record"])
                    fresh.records[record.source] = record
                elif kind == "event":
                    record_id = SynsetId.parse(entry["id"])
                    event = WorkflowEvent.from_dict(entry["event"])
                    fresh.records[record_id] = replay_event(
                        fresh.records[record_id], event, entry.get("delta")
                    )
                fresh.log.append(entry)
            return fresh

    def replay_matches(self) -> bool:
        rebuilt = self.rebuild_from_log()
        return rebuilt.records == self.records and rebuilt.sources == self.sources

    def content_equal(self, other: "ProjectStore") -> bool:
        return (
            self.sources == other.sources
            and self.records == other.records
            and self.log == other.log
            and self.claims == other.claims
        )
