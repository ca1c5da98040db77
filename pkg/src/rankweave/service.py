"""HTTP session service around the strategy engine.

Sessions hold a decision document, a strategy document and the expert
answers collected so far.  Running a session either completes with a
result document or suspends with a typed request; posting the answer and
running again continues the same computation, so an interactive session
reproduces the batch result for the same answers.

State lives in memory behind one lock (desk scale, a handful of
sessions).  With a state directory configured every mutation also writes
a JSON snapshot, and sessions are restored from there on startup.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Mapping

from fastapi import Body, FastAPI, Header, HTTPException

from . import documents
from .model import Judgment, JudgmentSet, Verdict
from .strategy import (
    AssignmentRequest,
    ComparisonRequest,
    ExecutionTrace,
    InteractiveStore,
    Request,
    StrategyError,
    StrategyValidationError,
    SuspensionNeeded,
    execute,
    validate_strategy,
)


def dump_request(request: Request) -> dict:
    if isinstance(request, ComparisonRequest):
        return {"kind": "comparison", "branch": request.branch, "a": request.a, "b": request.b}
    return {
        "kind": "assignment",
        "branch": request.branch,
        "alternative": request.alternative,
        "layers": request.layer_count,
    }


def _parse_request(doc: Mapping[str, Any]) -> Request:
    if doc["kind"] == "comparison":
        return ComparisonRequest(int(doc["branch"]), int(doc["a"]), int(doc["b"]))
    return AssignmentRequest(int(doc["branch"]), int(doc["alternative"]), int(doc["layers"]))


@dataclass
class Session:
    """Mutable per-session state; guarded by the service lock."""

    id: str
    revision: int = 0
    data: dict | None = None
    strategy: dict | None = None
    judgments: dict[int, JudgmentSet] = field(default_factory=dict)
    assignments: dict[int, dict[int, int]] = field(default_factory=dict)
    pending: Request | None = None
    trace: ExecutionTrace | None = None

    @property
    def status(self) -> str:
        if self.pending is not None:
            return "suspended"
        if self.trace is not None:
            return "complete"
        return "idle"

    def view(self) -> dict:
        return {
            "id": self.id,
            "revision": self.revision,
            "has_data": self.data is not None,
            "has_strategy": self.strategy is not None,
            "status": self.status,
            "pending": dump_request(self.pending) if self.pending else None,
        }

    def snapshot(self) -> dict:
        return {
            "id": self.id,
            "revision": self.revision,
            "data": self.data,
            "strategy": self.strategy,
            "judgments": {
                str(i): documents.dump_judgments(js) for i, js in self.judgments.items()
            },
            "assignments": {
                str(i): {str(a): k for a, k in m.items()} for i, m in self.assignments.items()
            },
            "pending": dump_request(self.pending) if self.pending else None,
        }

    @classmethod
    def restore(cls, doc: Mapping[str, Any]) -> "Session":
        session = cls(id=str(doc["id"]), revision=int(doc["revision"]))
        session.data = doc.get("data")
        session.strategy = doc.get("strategy")
        if session.data is not None:
            n = len(session.data["alternatives"])
            session.judgments = {
                int(i): documents.parse_judgments(js, n)
                for i, js in doc.get("judgments", {}).items()
            }
        session.assignments = {
            int(i): {int(a): int(k) for a, k in m.items()}
            for i, m in doc.get("assignments", {}).items()
        }
        pending = doc.get("pending")
        session.pending = _parse_request(pending) if pending else None
        return session


def create_app(state_dir: str | Path | None = None) -> FastAPI:
    app = FastAPI(title="rankweave", version="0.1.0")
    lock = threading.Lock()
    sessions: dict[str, Session] = {}
    state_path = Path(state_dir) if state_dir is not None else None

    if state_path is not None:
        state_path.mkdir(parents=True, exist_ok=True)
        for file in sorted(state_path.glob("session-*.json")):
            with open(file) as fh:
                session = Session.restore(json.load(fh))
            sessions[session.id] = session

    def save(session: Session) -> None:
        if state_path is None:
            return
        file = state_path / f"session-{session.id}.json"
        file.write_text(json.dumps(session.snapshot(), indent=2))

    def get_session(session_id: str) -> Session:
        session = sessions.get(session_id)
        if session is None:
            raise HTTPException(404, f"no session {session_id}")
        return session

    def check_revision(session: Session, if_match: str | None) -> None:
        if if_match is not None and if_match != str(session.revision):
            raise HTTPException(
                409, f"revision {if_match} is stale, session is at {session.revision}"
            )

    @app.post("/sessions", status_code=201)
    def create_session() -> dict:
        with lock:
            session = Session(id=uuid.uuid4().hex[:12])
            sessions[session.id] = session
            save(session)
            return session.view()

    @app.get("/sessions/{session_id}")
    def session_view(session_id: str) -> dict:
        with lock:
            return get_session(session_id).view()

    @app.put("/sessions/{session_id}/data")
    def put_data(
        session_id: str,
        document: dict = Body(...),
        if_match: str | None = Header(None, alias="If-Match"),
    ) -> dict:
        try:
            documents.parse_decision(document)
        except documents.DocumentError as exc:
            raise HTTPException(422, str(exc)) from exc
        with lock:
            session = get_session(session_id)
            check_revision(session, if_match)
            session.data = document
            # A new data set invalidates collected answers and results.
            session.judgments = {}
            session.assignments = {}
            session.pending = None
            session.trace = None
            session.revision += 1
            save(session)
            return session.view()

    @app.put("/sessions/{session_id}/strategy")
    def put_strategy(
        session_id: str,
        document: dict = Body(...),
        if_match: str | None = Header(None, alias="If-Match"),
    ) -> dict:
        try:
            documents.parse_strategy(document)
        except documents.DocumentError as exc:
            raise HTTPException(422, str(exc)) from exc
        with lock:
            session = get_session(session_id)
            check_revision(session, if_match)
            session.strategy = document
            session.pending = None
            session.trace = None
            session.revision += 1
            save(session)
            return session.view()

    @app.get("/sessions/{session_id}/request")
    def pending_request(session_id: str) -> dict:
        with lock:
            session = get_session(session_id)
            return {
                "revision": session.revision,
                "request": dump_request(session.pending) if session.pending else None,
            }

    @app.post("/sessions/{session_id}/answer")
    def answer(session_id: str, body: dict = Body(...)) -> dict:
        with lock:
            session = get_session(session_id)
            pending = session.pending
            if pending is None:
                raise HTTPException(409, "no pending request to answer")
            if isinstance(pending, ComparisonRequest):
                if "verdict" not in body:
                    raise HTTPException(422, "comparison answer needs a verdict")
                try:
                    verdict = Verdict(str(body["verdict"]))
                except ValueError as exc:
                    raise HTTPException(422, str(exc)) from exc
                matrix = documents.parse_decision(session.data)
                collected = session.judgments.get(pending.branch, JudgmentSet(matrix.n))
                session.judgments[pending.branch] = collected.record(
                    Judgment(pending.a, pending.b, verdict)
                )
            else:
                if "layer" not in body:
                    raise HTTPException(422, "assignment answer needs a layer")
                layer = int(body["layer"])
                if not 1 <= layer <= pending.layer_count:
                    raise HTTPException(422, f"layer must lie in 1..{pending.layer_count}")
                branch = session.assignments.setdefault(pending.branch, {})
                branch[pending.alternative] = layer
            session.pending = None
            session.revision += 1
            save(session)
            return session.view()

    @app.post("/sessions/{session_id}/run")
    def run(session_id: str) -> dict:
        with lock:
            session = get_session(session_id)
            if session.data is None:
                raise HTTPException(422, "session has no data document")
            if session.strategy is None:
                raise HTTPException(422, "session has no strategy document")
            try:
                matrix = documents.parse_decision(session.data)
                spec = documents.parse_strategy(session.strategy, matrix.n)
            except documents.DocumentError as exc:
                raise HTTPException(422, str(exc)) from exc
            report = validate_strategy(spec)
            if not report.ok:
                raise HTTPException(422, "; ".join(str(i) for i in report.issues))
            store = InteractiveStore(dict(session.judgments), dict(session.assignments))
            try:
                trace = execute(spec, matrix, store)
            except SuspensionNeeded as suspension:
                session.pending = suspension.request
                session.trace = None
                save(session)
                return {
                    "status": "suspended",
                    "revision": session.revision,
                    "request": dump_request(suspension.request),
                }
            except (StrategyError, ValueError) as exc:
                raise HTTPException(400, str(exc)) from exc
            session.pending = None
            session.trace = trace
            save(session)
            return {
                "status": "complete",
                "revision": session.revision,
                "result": documents.dump_trace(trace),
            }

    @app.get("/sessions/{session_id}/artifacts")
    def artifacts(session_id: str) -> dict:
        with lock:
            session = get_session(session_id)
            return {
                "revision": session.revision,
                "trace": documents.dump_trace(session.trace) if session.trace else None,
            }

    @app.post("/synthesize")
    def synthesize_endpoint(body: dict = Body(...)) -> dict:
        from .synthesis import synthesize

        raw = body.get("morphology")
        if raw is None:
            raise HTTPException(422, "body needs a morphology document")
        variant = int(body.get("variant", 2))
        try:
            morphology, compat = documents.parse_morphology(raw)
            result = synthesize(morphology, compat, variant)
        except documents.DocumentError as exc:
            raise HTTPException(422, str(exc)) from exc
        except ValueError as exc:
            raise HTTPException(400, str(exc)) from exc
        return documents.dump_synthesis(result)

    return app
