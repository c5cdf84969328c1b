"""Utterance normalization: lowercase, strip punctuation, tokenize, stem.

The pipeline is a pure function of its input and is applied identically to
corpus patterns and live queries.
"""

from __future__ import annotations

from .porter import porter_stem

__all__ = ["tokenize", "lemmatize", "preprocess", "porter_stem"]


def tokenize(text: str) -> list[str]:
    # punctuation becomes a space (not deleted) so "8am-11pm" splits in two
    cleaned = "".join(ch if ch.isalnum() else " " for ch in text.lower())
    return cleaned.split()


def lemmatize(token: str) -> str:
    """Hook for a dictionary lemmatizer; identity until one is wired in."""
    return token


def preprocess(text: str) -> list[str]:
    """Lowercase, replace punctuation with spaces, split, stem each token."""
    return [porter_stem(lemmatize(tok)) for tok in tokenize(text)]
