"""HTTP chat service: sessions, turns, corpus info, health.

REST surface (JSON bodies, UTF-8):
  POST /api/sessions                -> 201 {"session_id": ...}
  POST /api/sessions/{id}/messages  -> 200 {"intent", "confidence",
                                            "response", "followup", "ended"}
  GET  /api/info                    -> 200 corpus + backend summary
  GET  /api/health                  -> 200 {"status": "ok"}

Sessions live in memory with idle expiry. Turns within one session are
serialized with a per-session lock; distinct sessions run concurrently
against the shared read-only classifier.
"""

from __future__ import annotations

import secrets
import threading
import time
from contextlib import asynccontextmanager
from dataclasses import dataclass, field

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from fastapi.staticfiles import StaticFiles
from pydantic import BaseModel

from . import matcher
from .corpus import load_corpus
from .dialog import DialogConfig, DialogSession, handle_turn


@dataclass
class ServiceConfig:
    corpus_path: str
    backend: str = "emb-cosine"
    port: int = 8000
    nn_threshold: float = matcher.DEFAULT_NN_THRESHOLD
    cosine_threshold: float = matcher.DEFAULT_COSINE_THRESHOLD
    followup_prob: float = 0.3
    seed: int = 0
    static_dir: str | None = None
    cors_origins: tuple[str, ...] = ("*",)
    session_ttl: float = 1800.0

    def validate(self) -> None:
        if self.backend not in matcher.BACKENDS:
            raise ValueError(f"backend must be one of {matcher.BACKENDS}")
        if not 0.0 <= self.followup_prob <= 1.0:
            raise ValueError("followup_prob must be in [0, 1]")


class MessageIn(BaseModel):
    text: str


@dataclass
class _SessionEntry:
    session: DialogSession
    lock: threading.Lock = field(default_factory=threading.Lock)
    last_access: float = field(default_factory=time.monotonic)


class Engine:
    """Everything the endpoints need, built once at startup."""

    def __init__(self, config: ServiceConfig):
        config.validate()
        self.config = config
        self.corpus = load_corpus(config.corpus_path)
        self.backend = matcher.build_backend(
            config.backend, self.corpus, seed=config.seed,
            nn_threshold=config.nn_threshold,
            cosine_threshold=config.cosine_threshold,
        )
        self.dialog_config = DialogConfig(followup_prob=config.followup_prob)
        self.sessions: dict[str, _SessionEntry] = {}
        self.registry_lock = threading.Lock()

    def sweep_expired(self) -> None:
        cutoff = time.monotonic() - self.config.session_ttl
        with self.registry_lock:
            stale = [sid for sid, e in self.sessions.items() if e.last_access < cutoff]
            for sid in stale:
                del self.sessions[sid]

    def create_session(self) -> str:
        self.sweep_expired()
        sid = _new_session_id()
        session = DialogSession(self.corpus, session_id=sid, seed=self.config.seed)
        with self.registry_lock:
            self.sessions[sid] = _SessionEntry(session=session)
        return sid

    def get_entry(self, sid: str) -> _SessionEntry:
        self.sweep_expired()
        with self.registry_lock:
            entry = self.sessions.get(sid)
        if entry is None:
            raise HTTPException(status_code=404, detail="unknown session")
        entry.last_access = time.monotonic()
        return entry


def _new_session_id() -> str:
    return secrets.token_urlsafe(16)  # 128 bits, URL-safe


def create_app(config: ServiceConfig) -> FastAPI:
    @asynccontextmanager
    async def lifespan(app: FastAPI):
        app.state.engine = Engine(config)
        yield
        app.state.engine = None

    app = FastAPI(title="intentbot", lifespan=lifespan)
    app.state.engine = None

    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(config.cors_origins),
        allow_methods=["*"],
        allow_headers=["*"],
    )

    def engine() -> Engine:
        eng = app.state.engine
        if eng is None:
            raise HTTPException(status_code=503, detail="service is starting up")
        return eng

    @app.post("/api/sessions", status_code=201)
    def create_session():
        return {"session_id": engine().create_session()}

    @app.post("/api/sessions/{sid}/messages")
    def post_message(sid: str, message: MessageIn):
        eng = engine()
        if not message.text.strip():
            raise HTTPException(status_code=400, detail="text must not be empty")
        entry = eng.get_entry(sid)
        with entry.lock:
            if entry.session.ended:
                raise HTTPException(status_code=410, detail="session has ended")
            turn = handle_turn(entry.session, message.text, eng.backend.classify,
                               eng.dialog_config)
        return {
            "intent": turn.intent,
            "confidence": turn.confidence,
            "response": turn.response,
            "followup": turn.followup,
            "ended": turn.ended,
        }

    @app.get("/api/info")
    def get_info():
        eng = engine()
        return {
            "backend": eng.config.backend,
            "intents": list(eng.corpus.tags),
            "pattern_count": eng.corpus.pattern_count(),
            "response_count": eng.corpus.response_count(),
            "fingerprint": eng.backend.fingerprint,
        }

    @app.get("/api/health")
    def get_health():
        return {"status": "ok"}

    if config.static_dir:
        app.mount("/", StaticFiles(directory=config.static_dir, html=True),
                  name="static")

    return app
