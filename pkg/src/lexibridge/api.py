"""HTTP service over a project store.

Every request authenticates with a bearer token that maps to a user and one
of the three workflow roles; the server, not the client, decides what a role
may see, so expert redaction cannot be bypassed by a crafted request.

Error mapping: 401 unknown token, 403 role or duty violations, 404 unknown
record, 409 stale revision or an action the current state does not allow,
422 missing notes, malformed edits and validation blocks (the findings ride
along in the body).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from fastapi import Depends, FastAPI, Header, HTTPException, Query, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse, PlainTextResponse, Response
from pydantic import BaseModel, Field

from lexibridge.model import (
    LexibridgeError,
    PartOfSpeech,
    Role,
    SynsetId,
    WorkflowState,
)
from lexibridge.stats import (
    COUNTING_POLICIES,
    DEFAULT_POLICY,
    enrichment_diff,
    inventory,
)
from lexibridge.store import (
    ProjectStore,
    StaleRevisionError,
    UnknownRecordError,
)
from lexibridge.validation import format_report
from lexibridge.wndb import DuplicateRecordError, import_prior_translations
from lexibridge.workflow import (
    AlreadyClaimedError,
    DutySeparationError,
    EmptyPhrasesError,
    IllegalTransitionError,
    MissingNoteError,
    ROLE_QUEUES,
    RecordEdits,
    RoleNotAllowedError,
    ValidationBlockedError,
    WrongQueueError,
)

DEFAULT_ADDR = "127.0.0.1:8787"


@dataclass(frozen=True)
class UserEntry:
    token: str
    user: str
    role: Role


class UserConfig:
    """Token to (user, role) mapping, usually loaded from a JSON file."""

    def __init__(self, entries: list[UserEntry]):
        tokens = [e.token for e in entries]
        if len(set(tokens)) != len(tokens):
            raise ValueError("user config repeats a token")
        self._by_token = {e.token: e for e in entries}

    @classmethod
    def from_file(cls, path: str | Path) -> "UserConfig":
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        entries = [
            UserEntry(token=item["token"], user=item["user"], role=Role(item["role"]))
            for item in data
        ]
        return cls(entries)

    def lookup(self, token: str) -> UserEntry | None:
        return self._by_token.get(token)


@dataclass(frozen=True)
class Session:
    user: str
    role: Role


class SynonymPayload(BaseModel):
    lemma: str
    rank: int
    examples: list[str] = Field(default_factory=list)


class EditsPayload(BaseModel):
    gloss: str | None = None
    is_gap: bool | None = None
    phrases: list[str] | None = None
    synonyms: list[SynonymPayload] | None = None


class TransitionRequest(BaseModel):
    action: str
    expected_revision: int
    note: str = ""
    edits: EditsPayload | None = None


class ClaimRequest(BaseModel):
    pass


class ImportWndbRequest(BaseModel):
    directory: str


def _error_body(code: str, message: str, findings=None) -> dict:
    body = {"code": code, "message": message}
    if findings is not None:
        body["findings"] = [f.to_dict() for f in findings]
    return body


def create_app(
    store: ProjectStore,
    users: UserConfig,
    store_path: str | Path | None = None,
) -> FastAPI:
    """Build the service. When ``store_path`` is given, mutations autosave."""

    app = FastAPI(title="lexibridge", version="1")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def persist() -> None:
        if store_path is not None:
            store.save(store_path)

    def session(authorization: str = Header(default="")) -> Session:
        scheme, _, token = authorization.partition(" ")
        if scheme.lower() != "bearer" or not token:
            raise HTTPException(401, detail=_error_body("unauthorized", "missing bearer token"))
        entry = users.lookup(token.strip())
        if entry is None:
            raise HTTPException(401, detail=_error_body("unauthorized", "unknown token"))
        return Session(user=entry.user, role=entry.role)

    def record_id(pos: str, offset: str) -> SynsetId:
        try:
            return SynsetId(PartOfSpeech.parse(pos), offset)
        except ValueError as exc:
            raise HTTPException(422, detail=_error_body("bad_id", str(exc))) from None

    @app.exception_handler(LexibridgeError)
    async def lexibridge_error(request: Request, exc: LexibridgeError) -> JSONResponse:
        if isinstance(exc, StaleRevisionError):
            return JSONResponse(status_code=409, content=_error_body("stale_revision", str(exc)))
        if isinstance(exc, (DutySeparationError, RoleNotAllowedError)):
            return JSONResponse(status_code=403, content=_error_body("forbidden", str(exc)))
        if isinstance(exc, ValidationBlockedError):
            return JSONResponse(
                status_code=422,
                content=_error_body("validation_blocked", str(exc), exc.findings),
            )
        if isinstance(exc, (MissingNoteError, EmptyPhrasesError)):
            return JSONResponse(status_code=422, content=_error_body("invalid_request", str(exc)))
        if isinstance(exc, UnknownRecordError):
            return JSONResponse(status_code=404, content=_error_body("not_found", str(exc)))
        if isinstance(exc, (IllegalTransitionError, AlreadyClaimedError, WrongQueueError)):
            return JSONResponse(status_code=409, content=_error_body("conflict", str(exc)))
        if isinstance(exc, DuplicateRecordError):
            return JSONResponse(status_code=422, content=_error_body("duplicate_records", str(exc)))
        return JSONResponse(status_code=500, content=_error_body("internal", str(exc)))

    @app.get("/api/me")
    def me(sess: Session = Depends(session)) -> dict:
        return {"user": sess.user, "role": sess.role.value}

    @app.get("/api/synsets")
    def list_queue(
        sess: Session = Depends(session),
        state: str | None = Query(default=None),
        pos: str | None = Query(default=None),
        page: int = Query(default=1, ge=1),
        page_size: int = Query(default=50, ge=1, le=500),
    ) -> dict:
        state_filter = None
        if state is not None:
            try:
                state_filter = WorkflowState(state)
            except ValueError:
                raise HTTPException(422, detail=_error_body("bad_state", f"unknown state {state!r}"))
        pos_filter = None
        if pos is not None:
            try:
                pos_filter = PartOfSpeech.parse(pos)
            except ValueError as exc:
                raise HTTPException(422, detail=_error_body("bad_pos", str(exc)))

        selected = store.queue(sess.role, state=state_filter, pos=pos_filter)
        total = len(selected)
        start = (page - 1) * page_size
        items = []
        for record in selected[start : start + page_size]:
            claim = store.claims.holder(record.source)
            item = {
                "id": str(record.source),
                "pos": record.source.pos.value,
                "offset": record.source.offset,
                "state": record.state.value,
                "is_gap": record.is_gap,
                "not_understood": record.not_understood,
                "revision": record.revision,
                "synonyms": [s.lemma for s in sorted(record.synonyms, key=lambda s: s.rank)],
                "phrases": list(record.phrases),
                "claimed_by": claim.actor if claim else None,
            }
            if sess.role is not Role.EXPERT or record.is_gap:
                source = store.sources.get(record.source)
                item["source_lemmas"] = list(source.lemmas) if source else []
            items.append(item)
        return {
            "items": items,
            "page": page,
            "page_size": page_size,
            "total": total,
            "queue_states": sorted(s.value for s in ROLE_QUEUES[sess.role]),
        }

    @app.get("/api/synsets/{pos}/{offset}")
    def get_record(pos: str, offset: str, sess: Session = Depends(session)) -> dict:
        return store.view(record_id(pos, offset), sess.role)

    @app.post("/api/synsets/{pos}/{offset}/transition")
    def transition(
        pos: str,
        offset: str,
        body: TransitionRequest,
        sess: Session = Depends(session),
    ) -> dict:
        rid = record_id(pos, offset)
        edits = None
        if body.edits is not None:
            try:
                edits = RecordEdits.from_payload(body.edits.model_dump())
            except ValueError as exc:
                raise HTTPException(422, detail=_error_body("invalid_edits", str(exc)))
        store.transition(
            rid,
            body.action,
            sess.user,
            sess.role,
            note=body.note,
            edits=edits,
            expected_revision=body.expected_revision,
        )
        persist()
        return store.view(rid, sess.role)

    @app.post("/api/synsets/{pos}/{offset}/claim")
    def claim(pos: str, offset: str, sess: Session = Depends(session)) -> dict:
        rid = record_id(pos, offset)
        claim = store.claim(rid, sess.user, sess.role)
        persist()
        return claim.to_dict()

    @app.post("/api/synsets/{pos}/{offset}/release")
    def release(pos: str, offset: str, sess: Session = Depends(session)) -> dict:
        rid = record_id(pos, offset)
        released = store.release_claim(rid)
        persist()
        return {"released": released}

    @app.get("/api/validate/{pos}/{offset}")
    def validate_one(pos: str, offset: str, sess: Session = Depends(session)) -> dict:
        findings = store.validate_record(record_id(pos, offset))
        return {
            "findings": [f.to_dict() for f in findings],
            "report": format_report(findings),
            "blocking": any(f.severity.value == "error" for f in findings),
        }

    @app.get("/api/stats/inventory")
    def stats_inventory(
        sess: Session = Depends(session),
        policy: str = Query(default=DEFAULT_POLICY),
    ) -> dict:
        if policy not in COUNTING_POLICIES:
            raise HTTPException(422, detail=_error_body("bad_policy", f"unknown policy {policy!r}"))
        return inventory(store.records.values(), policy).to_dict()

    @app.get("/api/stats/diff")
    def stats_diff(
        sess: Session = Depends(session),
        baseline: str = Query(...),
    ) -> dict:
        path = Path(baseline)
        if not path.is_file():
            raise HTTPException(422, detail=_error_body("bad_baseline", f"no such file: {baseline}"))
        baseline_records, _ = import_prior_translations(path.read_text(encoding="utf-8"))
        return enrichment_diff(baseline_records, store.records.values()).to_dict()

    @app.post("/api/import/wndb")
    def import_wndb(body: ImportWndbRequest, sess: Session = Depends(session)) -> dict:
        directory = Path(body.directory)
        if not directory.is_dir():
            raise HTTPException(
                422, detail=_error_body("bad_directory", f"no such directory: {body.directory}")
            )
        report, created = store.import_wndb(directory)
        persist()
        return {"report": report.to_dict(), "records_created": created}

    @app.post("/api/import/prior")
    async def import_prior(request: Request, sess: Session = Depends(session)) -> dict:
        contents = (await request.body()).decode("utf-8")
        imported, skipped, report = store.import_prior(contents)
        persist()
        return {
            "imported": imported,
            "skipped_unknown": [str(s) for s in skipped],
            "report": report.to_dict(),
        }

    @app.get("/api/export")
    def export(
        sess: Session = Depends(session),
        format: str = Query(default="tsv"),
        language: str = Query(default="und"),
    ) -> Response:
        if format == "tsv":
            return PlainTextResponse(
                store.export_tsv(), media_type="text/tab-separated-values; charset=utf-8"
            )
        if format == "lmf":
            return Response(
                store.export_lmf(language=language),
                media_type="application/xml; charset=utf-8",
            )
        raise HTTPException(422, detail=_error_body("bad_format", f"unknown format {format!r}"))

    return app
