"""Utterance vectorizers.

Two families: the one-hot bag-of-words encoding over a corpus vocabulary
(network backend 1) and dense sentence embeddings behind a provider
interface (backends 2 and 3). Every provider is deterministic — the same
string always embeds to the same vector — and the built-in dense provider
uses a fixed 64-bit FNV-1a feature hash so vectors are bit-reproducible
across machines.

Provider kinds: bag-of-words, hashed-tfidf, file-backed, remote. A provider
exposes .kind, .dim, .fingerprint and .embed(text) -> numpy array.
"""

from __future__ import annotations

import hashlib
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np
import requests

from .corpus import Corpus
from .textproc import preprocess


class VectorizerError(Exception):
    """Base class for vectorizer problems."""


class EmptyVocabulary(VectorizerError):
    """No corpus pattern produced a single token."""


class FormatError(VectorizerError):
    """Embedding file is not in the expected TSV format."""


class DimensionMismatch(VectorizerError):
    """Vector dimensions disagree."""


class MissingKey(VectorizerError):
    """The file-backed provider has no entry for the queried text."""


class ProviderError(VectorizerError):
    """A provider failed to produce an embedding."""


@dataclass(frozen=True)
class Vocabulary:
    """Deduplicated, lexicographically sorted stems with their positions."""

    stems: tuple[str, ...]

    @property
    def index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.stems)}

    def __len__(self) -> int:
        return len(self.stems)

    @property
    def fingerprint(self) -> str:
        digest = hashlib.sha256("\n".join(self.stems).encode("utf-8")).hexdigest()
        return f"bag-of-words/{len(self.stems)}/{digest[:16]}"


def build_vocabulary(corpus: Corpus) -> Vocabulary:
    """Vocabulary over the union of stems of all preprocessed patterns."""
    stems: set[str] = set()
    for it in corpus.intents:
        for pattern in it.patterns:
            stems.update(preprocess(pattern))
    if not stems:
        raise EmptyVocabulary("no corpus pattern yields any token")
    return Vocabulary(stems=tuple(sorted(stems)))


def encode_bow(tokens: list[str], vocab: Vocabulary) -> np.ndarray:
    """Binary presence vector over the vocabulary; OOV tokens are ignored."""
    if len(vocab) == 0:
        raise EmptyVocabulary("cannot encode against an empty vocabulary")
    vec = np.zeros(len(vocab), dtype=np.float64)
    index = vocab.index
    for tok in tokens:
        pos = index.get(tok)
        if pos is not None:
            vec[pos] = 1.0
    return vec


_FNV_OFFSET = 0xCBF29CE484222325
_FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF


def fnv1a_64(data: bytes) -> int:
    """64-bit FNV-1a hash (standard offset basis and prime)."""
    h = _FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * _FNV_PRIME) & _MASK64
    return h


def _hash_features(text: str) -> list[str]:
    """Word unigrams plus character trigrams of the preprocessed text.

    Unigrams are prefixed "w:" and trigrams "c:" so the two feature spaces
    never alias; trigrams run over the stemmed tokens joined with single
    spaces, so they capture word boundaries too.
    """
    tokens = preprocess(text)
    features = ["w:" + tok for tok in tokens]
    joined = " ".join(tokens)
    features.extend("c:" + joined[i:i + 3] for i in range(len(joined) - 2))
    return features


class BagOfWordsProvider:
    """Provider adapter around a Vocabulary (one-hot backend plumbing)."""

    kind = "bag-of-words"

    def __init__(self, vocab: Vocabulary):
        self.vocab = vocab
        self.dim = len(vocab)

    @classmethod
    def fit(cls, corpus: Corpus) -> "BagOfWordsProvider":
        return cls(build_vocabulary(corpus))

    def embed(self, text: str) -> np.ndarray:
        return encode_bow(preprocess(text), self.vocab)

    @property
    def fingerprint(self) -> str:
        return self.vocab.fingerprint


class HashedTfidfProvider:
    """Deterministic dense sentence embedding via signed feature hashing.

    For each feature f: bucket = FNV-1a-64(f) mod dim, sign = +1 when bit 63
    of the hash is 0 else -1, weight = tf(f) * idf(f) with
    idf(f) = ln((1 + N) / (1 + df(f))) + 1 over the N corpus patterns
    (features never seen in the corpus get df = 0). The result is
    L2-normalized; input with no features embeds to the zero vector.
    """

    kind = "hashed-tfidf"

    def __init__(self, dim: int, doc_count: int, doc_freq: dict[str, int]):
        if dim < 16:
            raise ValueError(f"hashed-tfidf dim must be >= 16, got {dim}")
        self.dim = dim
        self.doc_count = doc_count
        self.doc_freq = dict(doc_freq)

    @classmethod
    def fit(cls, corpus: Corpus, dim: int = 384) -> "HashedTfidfProvider":
        doc_freq: Counter[str] = Counter()
        n = 0
        for it in corpus.intents:
            for pattern in it.patterns:
                n += 1
                doc_freq.update(set(_hash_features(pattern)))
        return cls(dim=dim, doc_count=n, doc_freq=dict(doc_freq))

    def _idf(self, feature: str) -> float:
        df = self.doc_freq.get(feature, 0)
        return math.log((1 + self.doc_count) / (1 + df)) + 1.0

    def embed(self, text: str) -> np.ndarray:
        vec = np.zeros(self.dim, dtype=np.float64)
        for feature, tf in Counter(_hash_features(text)).items():
            h = fnv1a_64(feature.encode("utf-8"))
            bucket = h % self.dim
            sign = -1.0 if (h >> 63) & 1 else 1.0
            vec[bucket] += sign * tf * self._idf(feature)
        norm = float(np.linalg.norm(vec))
        if norm > 0.0:
            vec /= norm
        return vec

    @property
    def fingerprint(self) -> str:
        hasher = hashlib.sha256()
        hasher.update(f"{self.dim}/{self.doc_count}".encode())
        for feature in sorted(self.doc_freq):
            hasher.update(f"{feature}={self.doc_freq[feature]}".encode())
        return f"hashed-tfidf/{self.dim}/{hasher.hexdigest()[:16]}"


class FileBackedProvider:
    """Exact-match lookup of precomputed embeddings keyed by raw text."""

    kind = "file-backed"

    def __init__(self, vectors: dict[str, np.ndarray], dim: int):
        self.vectors = vectors
        self.dim = dim

    def embed(self, text: str) -> np.ndarray:
        try:
            return self.vectors[text]
        except KeyError:
            raise MissingKey(f"no embedding stored for {text!r}") from None

    @property
    def fingerprint(self) -> str:
        return f"file-backed/{self.dim}"


def load_embedding_file(path) -> FileBackedProvider:
    """Parse the embedding TSV: `<raw text>\\t<v1> <v2> ... <vdim>` per row."""
    vectors: dict[str, np.ndarray] = {}
    dim: int | None = None
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.rstrip("\n")
            if not line:
                continue
            if "\t" not in line:
                raise FormatError(f"{path}:{lineno}: missing tab separator")
            key, _, payload = line.partition("\t")
            try:
                values = np.array([float(v) for v in payload.split()], dtype=np.float64)
            except ValueError as exc:
                raise FormatError(f"{path}:{lineno}: {exc}") from None
            if values.size == 0:
                raise FormatError(f"{path}:{lineno}: row has no vector values")
            if not np.all(np.isfinite(values)):
                raise FormatError(f"{path}:{lineno}: non-finite vector entry")
            if dim is None:
                dim = int(values.size)
            elif values.size != dim:
                raise DimensionMismatch(
                    f"{path}:{lineno}: expected dim {dim}, got {values.size}")
            vectors[key] = values
    if dim is None:
        raise FormatError(f"{path}: file contains no embeddings")
    return FileBackedProvider(vectors=vectors, dim=dim)


class RemoteProvider:
    """Blocking HTTP embedding client.

    POSTs {"texts": [...]} and expects {"vectors": [[...], ...]}. Determinism
    is the remote service's contract, not enforced here.
    """

    kind = "remote"

    def __init__(self, url: str, dim: int, timeout: float = 10.0):
        self.url = url
        self.dim = dim
        self.timeout = timeout

    def embed(self, text: str) -> np.ndarray:
        try:
            resp = requests.post(self.url, json={"texts": [text]}, timeout=self.timeout)
        except requests.RequestException as exc:
            raise ProviderError(f"remote embedding request failed: {exc}") from exc
        if resp.status_code != 200:
            raise ProviderError(f"remote embedding service returned {resp.status_code}")
        try:
            vectors = resp.json()["vectors"]
            vec = np.array(vectors[0], dtype=np.float64)
        except (KeyError, IndexError, TypeError, ValueError) as exc:
            raise ProviderError(f"malformed remote embedding response: {exc}") from exc
        if vec.ndim != 1 or vec.size != self.dim:
            raise DimensionMismatch(
                f"remote service returned dim {vec.size}, expected {self.dim}")
        if not np.all(np.isfinite(vec)):
            raise ProviderError("remote embedding contains non-finite values")
        return vec

    @property
    def fingerprint(self) -> str:
        return f"remote/{self.dim}"


class FallbackProvider:
    """Try a primary provider, fall back on MissingKey (file-backed gaps)."""

    def __init__(self, primary, fallback):
        if primary.dim != fallback.dim:
            raise DimensionMismatch(
                f"primary dim {primary.dim} != fallback dim {fallback.dim}")
        self.primary = primary
        self.fallback = fallback
        self.dim = primary.dim
        self.kind = primary.kind

    def embed(self, text: str) -> np.ndarray:
        try:
            return self.primary.embed(text)
        except MissingKey:
            return self.fallback.embed(text)

    @property
    def fingerprint(self) -> str:
        return f"{self.primary.fingerprint}+{self.fallback.fingerprint}"
