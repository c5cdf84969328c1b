"""Classification result shared by all backends."""

from __future__ import annotations

from dataclasses import dataclass

# Distinguished marker used as the tag of low-confidence predictions.
FALLBACK = "<fallback>"


@dataclass(frozen=True)
class Prediction:
    """Outcome of classifying one utterance.

    tag is either a corpus intent tag or the FALLBACK marker. confidence is
    a softmax probability for the network backends and a cosine similarity
    for the retrieval backend. matched_pattern is set only by the retrieval
    backend on non-fallback predictions.
    """

    tag: str
    confidence: float
    matched_pattern: str | None = None

    @property
    def is_fallback(self) -> bool:
        return self.tag == FALLBACK
