"""HTTP/JSON session service driving the annotation UI.

Sessions are per-id single-writer: a lock serializes commands, reads see
immutable snapshots. Accepted commands append to an on-disk log when a
session directory is configured; logs replay on restart.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import asdict
from pathlib import Path
from typing import Optional

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel

from . import corpus
from .ontology import export_tables
from .simulate import FinalizeError, Session, replay
from .validation import lint as lint_graph


class CommandBody(BaseModel):
    line: str
    revision: Optional[int] = None


class SessionBody(BaseModel):
    document_id: str


class LiveSession:
    def __init__(self, session_id: str, session: Session,
                 log_path: Optional[Path]):
        self.id = session_id
        self.session = session
        self.revision = len(session.command_log)
        self.lock = threading.Lock()
        self.log_path = log_path
        self.results: dict[int, dict] = {}  # revision -> accepted command echo


def _peg_file(session: Session) -> dict:
    return json.loads(corpus.save(session.draft()))


def create_app(corpus_dir: Path, session_dir: Optional[Path] = None) -> FastAPI:
    documents = {}
    for path in sorted(corpus_dir.rglob("*.json")):
        try:
            doc = corpus.load_document(path.read_bytes())
        except (corpus.CorpusError, ValueError, KeyError):
            continue
        documents[doc.id] = doc

    sessions: dict[str, LiveSession] = {}
    if session_dir is not None:
        session_dir.mkdir(parents=True, exist_ok=True)
        for log_path in sorted(session_dir.glob("*.log")):
            header, *lines = log_path.read_text().splitlines()
            doc_id = header.removeprefix("# document: ")
            if doc_id in documents:
                session = replay(documents[doc_id], lines)
                sessions[log_path.stem] = LiveSession(log_path.stem, session, log_path)

    app = FastAPI(title="pegkit annotation service")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    def get_session(session_id: str) -> LiveSession:
        live = sessions.get(session_id)
        if live is None:
            raise HTTPException(404, f"unknown session {session_id}")
        return live

    @app.get("/documents")
    def list_documents():
        return {"documents": sorted(documents)}

    @app.get("/documents/{doc_id}")
    def get_document(doc_id: str):
        doc = documents.get(doc_id)
        if doc is None:
            raise HTTPException(404, f"unknown document {doc_id}")
        return corpus.document_to_dict(doc)

    @app.get("/ontology")
    def ontology():
        return export_tables()

    @app.post("/sessions", status_code=201)
    def create_session(body: SessionBody):
        doc = documents.get(body.document_id)
        if doc is None:
            raise HTTPException(404, f"unknown document {body.document_id}")
        session_id = uuid.uuid4().hex[:12]
        log_path = None
        if session_dir is not None:
            log_path = session_dir / f"{session_id}.log"
            log_path.write_text(f"# document: {doc.id}\n")
        sessions[session_id] = LiveSession(session_id, Session(doc), log_path)
        return {"session_id": session_id, "document_id": doc.id, "revision": 0}

    @app.post("/sessions/{session_id}/command")
    def command(session_id: str, body: CommandBody):
        live = get_session(session_id)
        with live.lock:
            if body.revision is not None and body.revision != live.revision:
                # idempotent retry of an already-accepted command
                echo = live.results.get(body.revision)
                if echo is not None and echo["line"] == body.line:
                    return echo["response"]
                raise HTTPException(409, detail={
                    "diagnostics": [{
                        "severity": "error", "code": "revision-conflict",
                        "locus": session_id,
                        "message": f"expected revision {live.revision}",
                    }]})
            result = live.session.issue(body.line)
            diagnostics = [asdict(d) for d in result.diagnostics]
            if not result.accepted:
                raise HTTPException(409, detail={"diagnostics": diagnostics})
            state_changing = len(live.session.command_log) != live.revision
            if state_changing:
                requested = live.revision
                live.revision = len(live.session.command_log)
                if live.log_path is not None:
                    # undo rewrites history, so re-emit the whole log
                    header = f"# document: {live.session.document.id}\n"
                    live.log_path.write_text(
                        header + "".join(f"{l}\n" for l in live.session.command_log))
                response = {"revision": live.revision,
                            "diagnostics": diagnostics, "output": result.output}
                live.results[requested] = {"line": body.line, "response": response}
                return response
            return {"revision": live.revision, "diagnostics": diagnostics,
                    "output": result.output}

    @app.get("/sessions/{session_id}/state")
    def state(session_id: str):
        live = get_session(session_id)
        return {"revision": live.revision, "entities": live.session.state.view(),
                "exec_order": list(live.session.exec_order)}

    @app.get("/sessions/{session_id}/peg")
    def peg(session_id: str):
        return _peg_file(get_session(session_id).session)

    @app.get("/sessions/{session_id}/autocomplete")
    def autocomplete(session_id: str, prefix: str = ""):
        live = get_session(session_id)
        return {"completions": live.session.autocomplete(prefix)}

    @app.get("/sessions/{session_id}/lint")
    def lint(session_id: str):
        report = lint_graph(get_session(session_id).session.draft())
        return {"component_count": report.component_count,
                "isolated_mentions": list(report.isolated_mentions),
                "score": report.score}

    @app.post("/sessions/{session_id}/finalize")
    def finalize(session_id: str):
        live = get_session(session_id)
        with live.lock:
            try:
                finalized = live.session.finalize()
            except FinalizeError as exc:
                raise HTTPException(409, detail={
                    "message": str(exc),
                    "diagnostics": [asdict(d) for d in exc.diagnostics],
                }) from exc
            return {
                "peg": json.loads(corpus.save(finalized.graph)),
                "warnings": [asdict(d) for d in finalized.warnings],
                "lint": {"component_count": finalized.lint.component_count,
                         "isolated_mentions": list(finalized.lint.isolated_mentions),
                         "score": finalized.lint.score},
            }

    return app
