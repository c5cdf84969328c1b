"""Intent corpus: the chatbot's knowledge base.

A corpus is a list of intents, each carrying template patterns (labeled
example utterances), the responses the bot may serve for that intent, and
optional follow-up remarks. The corpus is immutable after load and safe to
share across threads.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

DEFAULT_GOODBYE_TAG = "goodbye"


class CorpusError(Exception):
    """Base class for corpus problems."""


class ParseError(CorpusError):
    """The corpus file is not valid JSON or not shaped like a corpus."""


class ValidationError(CorpusError):
    """The corpus data violates a structural invariant."""

    def __init__(self, violations: list["Violation"]):
        self.violations = list(violations)
        super().__init__("; ".join(str(v) for v in self.violations))


@dataclass(frozen=True)
class Violation:
    """One machine-readable invariant violation."""

    code: str
    subject: str
    message: str

    def __str__(self) -> str:
        return f"{self.code}({self.subject!r}): {self.message}"


@dataclass(frozen=True)
class IntentDef:
    """One intent: a tag plus its patterns, responses and follow-ups."""

    tag: str
    patterns: tuple[str, ...]
    responses: tuple[str, ...]
    followups: tuple[str, ...] = ()


@dataclass(frozen=True)
class Corpus:
    intents: tuple[IntentDef, ...]
    fallback_response: str
    goodbye_tag: str = DEFAULT_GOODBYE_TAG
    _by_tag: dict = field(default_factory=dict, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "_by_tag", {it.tag: it for it in self.intents})

    @property
    def tags(self) -> tuple[str, ...]:
        return tuple(it.tag for it in self.intents)

    def intent(self, tag: str) -> IntentDef | None:
        return self._by_tag.get(tag)

    def pattern_count(self) -> int:
        return sum(len(it.patterns) for it in self.intents)

    def response_count(self) -> int:
        return sum(len(it.responses) for it in self.intents)


def validate_corpus(corpus: Corpus) -> list[Violation]:
    """Check every corpus invariant; returns an empty list iff all hold."""
    violations: list[Violation] = []
    if len(corpus.intents) < 2:
        violations.append(
            Violation("too-few-intents", corpus.goodbye_tag,
                      f"corpus has {len(corpus.intents)} intents, need at least 2")
        )

    seen_tags: set[str] = set()
    pattern_owner: dict[str, str] = {}
    for it in corpus.intents:
        if not it.tag:
            violations.append(Violation("empty-tag", it.tag, "intent tag is empty"))
        if it.tag in seen_tags:
            violations.append(
                Violation("duplicate-tag", it.tag, f"tag {it.tag!r} appears more than once"))
        seen_tags.add(it.tag)

        if len(it.patterns) == 0:
            violations.append(
                Violation("empty-patterns", it.tag, f"intent {it.tag!r} has no patterns"))
        if len(it.responses) == 0:
            violations.append(
                Violation("empty-responses", it.tag, f"intent {it.tag!r} has no responses"))
        for p in it.patterns:
            if not p:
                violations.append(
                    Violation("blank-pattern", it.tag, f"intent {it.tag!r} has an empty pattern"))
            elif p in pattern_owner and pattern_owner[p] != it.tag:
                violations.append(
                    Violation("duplicate-pattern", p,
                              f"pattern {p!r} appears under both "
                              f"{pattern_owner[p]!r} and {it.tag!r}"))
            else:
                pattern_owner[p] = it.tag
        for r in it.responses:
            if not r:
                violations.append(
                    Violation("blank-response", it.tag, f"intent {it.tag!r} has an empty response"))

    if corpus.goodbye_tag not in seen_tags:
        violations.append(
            Violation("missing-goodbye", corpus.goodbye_tag,
                      f"goodbye tag {corpus.goodbye_tag!r} names no intent"))
    return violations


def _intent_from_obj(obj, position: int) -> IntentDef:
    if not isinstance(obj, dict):
        raise ParseError(f"intent #{position} is not an object")
    try:
        tag = obj["tag"]
        patterns = obj["patterns"]
        responses = obj["responses"]
    except KeyError as exc:
        raise ParseError(f"intent #{position} is missing required field {exc.args[0]!r}") from None
    followups = obj.get("followups", [])
    for name, value in (("tag", tag),):
        if not isinstance(value, str):
            raise ParseError(f"intent #{position}: {name} must be a string")
    for name, value in (("patterns", patterns), ("responses", responses),
                        ("followups", followups)):
        if not isinstance(value, list) or not all(isinstance(s, str) for s in value):
            raise ParseError(f"intent {tag!r}: {name} must be a list of strings")
    return IntentDef(tag=tag, patterns=tuple(patterns), responses=tuple(responses),
                     followups=tuple(followups))


def corpus_from_obj(obj) -> Corpus:
    """Build and validate a Corpus from an already-parsed JSON object."""
    if not isinstance(obj, dict):
        raise ParseError("corpus root must be a JSON object")
    if "intents" not in obj or not isinstance(obj["intents"], list):
        raise ParseError("corpus must have an 'intents' list")
    if "fallback_response" not in obj or not isinstance(obj["fallback_response"], str):
        raise ParseError("corpus must have a 'fallback_response' string")
    goodbye_tag = obj.get("goodbye_tag", DEFAULT_GOODBYE_TAG)
    if not isinstance(goodbye_tag, str):
        raise ParseError("'goodbye_tag' must be a string")
    intents = tuple(_intent_from_obj(o, i) for i, o in enumerate(obj["intents"]))
    corpus = Corpus(intents=intents, fallback_response=obj["fallback_response"],
                    goodbye_tag=goodbye_tag)
    violations = validate_corpus(corpus)
    if violations:
        raise ValidationError(violations)
    return corpus


def load_corpus(path) -> Corpus:
    """Load, parse and validate a corpus JSON file.

    Ordering of intents, patterns and responses is preserved exactly as in
    the file. Raises ParseError for malformed input and ValidationError
    (carrying the full violation list) for invariant breaks.
    """
    with open(path, "r", encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{path}: {exc}") from exc
    return corpus_from_obj(obj)


def save_corpus(corpus: Corpus, path) -> None:
    """Write the corpus back out in the same JSON schema load_corpus reads."""
    obj = {
        "fallback_response": corpus.fallback_response,
        "goodbye_tag": corpus.goodbye_tag,
        "intents": [
            {
                "tag": it.tag,
                "patterns": list(it.patterns),
                "responses": list(it.responses),
                "followups": list(it.followups),
            }
            for it in corpus.intents
        ],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh, ensure_ascii=False, indent=2)
        fh.write("\n")
