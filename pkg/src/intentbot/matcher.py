"""Cosine-similarity retrieval backend and the unified classifier interface.

Backend names: "ohe-nn" (one-hot + network), "emb-nn" (dense embedding +
network), "emb-cosine" (dense embedding + nearest-pattern retrieval). All
of them classify through the same Prediction shape, so dialog and
evaluation never care which backend is wired in.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace

import numpy as np

from . import mlp
from .corpus import Corpus
from .prediction import FALLBACK, Prediction
from .vectorizer import (
    BagOfWordsProvider,
    FallbackProvider,
    HashedTfidfProvider,
    ProviderError,
    load_embedding_file,
)

__all__ = [
    "BACKENDS", "FALLBACK", "Prediction", "PatternIndex", "NotReadyError",
    "cosine", "build_index", "predict_cosine", "classify", "build_backend",
    "NnBackend", "CosineBackend",
    "DEFAULT_NN_THRESHOLD", "DEFAULT_COSINE_THRESHOLD",
]

BACKENDS = ("ohe-nn", "emb-nn", "emb-cosine")
DEFAULT_NN_THRESHOLD = 0.50
DEFAULT_COSINE_THRESHOLD = 0.35


class MatcherError(Exception):
    pass


class DimensionMismatch(MatcherError):
    pass


class NotReadyError(MatcherError):
    """Backend asked to classify before it was trained or indexed."""


def cosine(a: np.ndarray, b: np.ndarray) -> float:
    """dot(a,b) / (|a||b|); zero when either norm is zero."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise DimensionMismatch(f"cosine of shapes {a.shape} and {b.shape}")
    na = float(np.linalg.norm(a))
    nb = float(np.linalg.norm(b))
    if na == 0.0 or nb == 0.0:
        return 0.0
    return float(np.dot(a, b) / (na * nb))


@dataclass(frozen=True)
class IndexEntry:
    pattern: str
    tag: str
    vector: np.ndarray


@dataclass
class PatternIndex:
    """Every corpus pattern embedded once, in corpus order."""

    entries: list[IndexEntry]
    fingerprint: str
    skipped: list[tuple[str, str]] = field(default_factory=list)  # (pattern, tag)

    def __len__(self) -> int:
        return len(self.entries)


def build_index(corpus: Corpus, provider) -> PatternIndex:
    """Embed all patterns; zero-vector patterns are dropped and recorded."""
    entries: list[IndexEntry] = []
    skipped: list[tuple[str, str]] = []
    for it in corpus.intents:
        for pattern in it.patterns:
            try:
                vec = np.asarray(provider.embed(pattern), dtype=np.float64)
            except Exception as exc:
                raise ProviderError(
                    f"embedding pattern {pattern!r} of intent {it.tag!r} failed: {exc}"
                ) from exc
            if not np.any(vec):
                skipped.append((pattern, it.tag))
                continue
            entries.append(IndexEntry(pattern=pattern, tag=it.tag, vector=vec))
    return PatternIndex(entries=entries, fingerprint=provider.fingerprint,
                        skipped=skipped)


def predict_cosine(index: PatternIndex, query: str, provider,
                   threshold: float = DEFAULT_COSINE_THRESHOLD) -> Prediction:
    """Nearest corpus pattern by cosine; ties keep the earliest entry."""
    if len(index) == 0:
        raise NotReadyError("pattern index is empty")
    qvec = np.asarray(provider.embed(query), dtype=np.float64)
    best_entry = None
    best_sim = -np.inf
    for entry in index.entries:
        sim = cosine(qvec, entry.vector)
        if sim > best_sim:
            best_sim = sim
            best_entry = entry
    if best_sim < threshold:
        return Prediction(tag=FALLBACK, confidence=float(best_sim))
    return Prediction(tag=best_entry.tag, confidence=float(best_sim),
                      matched_pattern=best_entry.pattern)


class NnBackend:
    """Backends 1 and 2: encode the query, classify with the network."""

    def __init__(self, corpus: Corpus, provider, name: str,
                 threshold: float = DEFAULT_NN_THRESHOLD,
                 train_config: mlp.TrainConfig | None = None):
        self.corpus = corpus
        self.provider = provider
        self.name = name
        self.threshold = threshold
        self.train_config = train_config or mlp.TrainConfig()
        self.model: mlp.MlpModel | None = None
        self.report: mlp.TrainReport | None = None

    def train(self) -> mlp.TrainReport:
        self.model, self.report = mlp.train(self.corpus, self.provider,
                                            self.train_config)
        return self.report

    @property
    def ready(self) -> bool:
        return self.model is not None

    @property
    def fingerprint(self) -> str:
        return self.provider.fingerprint

    def classify(self, query: str) -> Prediction:
        if self.model is None:
            raise NotReadyError(f"backend {self.name!r} has not been trained")
        vec = np.asarray(self.provider.embed(query), dtype=np.float64)
        if not np.any(vec):
            # nothing to classify: empty/OOV queries cannot clear the threshold
            return Prediction(tag=FALLBACK, confidence=0.0)
        return mlp.predict_nn(self.model, vec, self.threshold)


class CosineBackend:
    """Backend 3: retrieval over the embedded pattern index."""

    name = "emb-cosine"

    def __init__(self, corpus: Corpus, provider,
                 threshold: float = DEFAULT_COSINE_THRESHOLD):
        self.corpus = corpus
        self.provider = provider
        self.threshold = threshold
        self.index: PatternIndex | None = None

    def build(self) -> PatternIndex:
        self.index = build_index(self.corpus, self.provider)
        return self.index

    @property
    def ready(self) -> bool:
        return self.index is not None and len(self.index) > 0

    @property
    def fingerprint(self) -> str:
        return self.provider.fingerprint

    def classify(self, query: str) -> Prediction:
        if self.index is None:
            raise NotReadyError("cosine backend has not been indexed")
        return predict_cosine(self.index, query, self.provider, self.threshold)


_INDEX_FORMAT = "intentbot-index"
_INDEX_VERSION = 1


def save_index(index: PatternIndex, path) -> None:
    """Persist the pattern index as JSON (bit-exact float round-trip)."""
    obj = {
        "format": _INDEX_FORMAT,
        "version": _INDEX_VERSION,
        "fingerprint": index.fingerprint,
        "entries": [
            {"pattern": e.pattern, "tag": e.tag, "vector": e.vector.tolist()}
            for e in index.entries
        ],
        "skipped": [list(pair) for pair in index.skipped],
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh)
        fh.write("\n")


def load_index(path, expected_fingerprint: str | None = None) -> PatternIndex:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    if obj.get("format") != _INDEX_FORMAT or obj.get("version") != _INDEX_VERSION:
        raise MatcherError(f"{path} is not a version-{_INDEX_VERSION} index file")
    if expected_fingerprint is not None and obj["fingerprint"] != expected_fingerprint:
        raise MatcherError(
            f"index was built with {obj['fingerprint']!r}, "
            f"current provider is {expected_fingerprint!r}")
    entries = [
        IndexEntry(pattern=e["pattern"], tag=e["tag"],
                   vector=np.array(e["vector"], dtype=np.float64))
        for e in obj["entries"]
    ]
    return PatternIndex(entries=entries, fingerprint=obj["fingerprint"],
                        skipped=[tuple(pair) for pair in obj.get("skipped", [])])


def classify(backend, query: str) -> Prediction:
    """Uniform dispatch: raises NotReadyError until trained/indexed."""
    if not getattr(backend, "ready", False):
        raise NotReadyError(f"backend {getattr(backend, 'name', backend)!r} is not ready")
    return backend.classify(query)


def make_provider(corpus: Corpus, *, dim: int = 384, embeddings_path=None):
    """Dense provider for emb-* backends.

    With embeddings_path, stored vectors are used and hashed-tfidf covers
    texts missing from the file.
    """
    if embeddings_path is None:
        return HashedTfidfProvider.fit(corpus, dim=dim)
    file_provider = load_embedding_file(embeddings_path)
    hashed = HashedTfidfProvider.fit(corpus, dim=file_provider.dim)
    return FallbackProvider(file_provider, hashed)


def build_backend(name: str, corpus: Corpus, *, seed: int = 0,
                  nn_threshold: float = DEFAULT_NN_THRESHOLD,
                  cosine_threshold: float = DEFAULT_COSINE_THRESHOLD,
                  dim: int = 384, embeddings_path=None,
                  train_config: mlp.TrainConfig | None = None,
                  prepare: bool = True):
    """Construct (and by default train/index) one of the three backends."""
    if name not in BACKENDS:
        raise ValueError(f"unknown backend {name!r}, expected one of {BACKENDS}")
    if name == "ohe-nn":
        provider = BagOfWordsProvider.fit(corpus)
    else:
        provider = make_provider(corpus, dim=dim, embeddings_path=embeddings_path)

    if name == "emb-cosine":
        backend = CosineBackend(corpus, provider, threshold=cosine_threshold)
        if prepare:
            backend.build()
        return backend

    config = replace(train_config or mlp.TrainConfig(), seed=seed)
    backend = NnBackend(corpus, provider, name=name, threshold=nn_threshold,
                        train_config=config)
    if prepare:
        backend.train()
    return backend
