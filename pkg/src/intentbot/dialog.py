"""Turn-level conversation management.

Responses rotate through a seeded shuffled permutation per tag, so a tag
with two or more responses never serves the same one twice in a row and a
full cycle serves each response exactly once. Follow-ups fire with a
configurable probability. A turn classified as the goodbye intent ends the
session for good; further turns raise SessionEnded.

One session's state is mutated by at most one turn at a time (callers must
serialize per session); distinct sessions are fully independent.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field

from .corpus import Corpus
from .prediction import FALLBACK, Prediction


class DialogError(Exception):
    pass


class UnknownTag(DialogError):
    pass


class SessionEnded(DialogError):
    """The goodbye intent already closed this session."""


@dataclass
class DialogConfig:
    followup_prob: float = 0.3


@dataclass(frozen=True)
class BotTurn:
    response: str
    followup: str | None
    intent: str  # corpus tag or the fallback marker
    confidence: float
    ended: bool


@dataclass(frozen=True)
class TranscriptEntry:
    user_text: str
    prediction: Prediction
    turn: BotTurn


@dataclass
class _Rotation:
    order: list[int]
    cursor: int = 0
    last_served: int | None = None


class DialogSession:
    """Per-conversation state: response rotation, RNG, transcript, ended flag.

    The PRNG is seeded from (seed, session_id), so a service hosting many
    sessions stays deterministic per session regardless of interleaving.
    """

    def __init__(self, corpus: Corpus, session_id: str = "default", seed: int = 0):
        self.corpus = corpus
        self.session_id = session_id
        self.rng = random.Random(f"{seed}:{session_id}")
        self.ended = False
        self.transcript: list[TranscriptEntry] = []
        self._rotation: dict[str, _Rotation] = {}

    def _rotation_for(self, tag: str, size: int) -> _Rotation:
        rot = self._rotation.get(tag)
        if rot is None:
            order = list(range(size))
            self.rng.shuffle(order)
            rot = _Rotation(order=order)
            self._rotation[tag] = rot
        return rot


def next_response(session: DialogSession, tag: str) -> str:
    """Serve the next response of the tag's current shuffled cycle.

    On exhaustion the cycle reshuffles under the constraint that its first
    element differs from the last served one (lists of >= 2 responses), so
    consecutive turns never repeat a response.
    """
    if session.ended:
        raise SessionEnded(f"session {session.session_id!r} has ended")
    intent = session.corpus.intent(tag)
    if intent is None:
        raise UnknownTag(f"no intent tagged {tag!r}")
    responses = intent.responses
    rot = session._rotation_for(tag, len(responses))
    if rot.cursor >= len(rot.order):
        session.rng.shuffle(rot.order)
        while len(responses) >= 2 and rot.order[0] == rot.last_served:
            session.rng.shuffle(rot.order)
        rot.cursor = 0
    idx = rot.order[rot.cursor]
    rot.cursor += 1
    rot.last_served = idx
    return responses[idx]


def maybe_followup(session: DialogSession, tag: str, p: float) -> str | None:
    """With probability p, a uniformly chosen follow-up of the tag."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"followup probability must be in [0, 1], got {p}")
    intent = session.corpus.intent(tag)
    if intent is None:
        raise UnknownTag(f"no intent tagged {tag!r}")
    if not intent.followups:
        return None
    if session.rng.random() < p:
        return session.rng.choice(intent.followups)
    return None


def handle_turn(session: DialogSession, user_text: str, classifier,
                config: DialogConfig | None = None) -> BotTurn:
    """Classify, respond, maybe follow up; goodbye ends the session.

    classifier is any callable str -> Prediction (see matcher.classify).
    Fallback and goodbye turns never carry follow-ups.
    """
    if session.ended:
        raise SessionEnded(f"session {session.session_id!r} has ended")
    config = config or DialogConfig()
    prediction = classifier(user_text)

    if prediction.is_fallback:
        turn = BotTurn(response=session.corpus.fallback_response, followup=None,
                       intent=FALLBACK, confidence=prediction.confidence,
                       ended=False)
    elif prediction.tag == session.corpus.goodbye_tag:
        response = next_response(session, prediction.tag)
        session.ended = True
        turn = BotTurn(response=response, followup=None, intent=prediction.tag,
                       confidence=prediction.confidence, ended=True)
    else:
        response = next_response(session, prediction.tag)
        followup = maybe_followup(session, prediction.tag, config.followup_prob)
        turn = BotTurn(response=response, followup=followup, intent=prediction.tag,
                       confidence=prediction.confidence, ended=False)

    session.transcript.append(TranscriptEntry(user_text, prediction, turn))
    return turn


def export_transcript(session: DialogSession) -> str:
    """JSON lines, one object per turn."""
    lines = []
    for entry in session.transcript:
        lines.append(json.dumps({
            "user": entry.user_text,
            "intent": entry.turn.intent,
            "confidence": entry.turn.confidence,
            "response": entry.turn.response,
            "followup": entry.turn.followup,
            "ended": entry.turn.ended,
        }, ensure_ascii=False))
    return "\n".join(lines) + ("\n" if lines else "")
