"""Confusion matrix, precision/recall/F1, and the backend comparison harness.

The confusion matrix is K true-tag rows by K+1 predicted columns: the extra
column collects fallback (rejected) predictions, which count as recall
misses for their true class but never as a class of their own. Averaging is
macro (unweighted over corpus classes).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace

import numpy as np

from . import matcher
from .corpus import Corpus
from .mlp import TrainConfig
from .textproc import preprocess


class EvaluationError(Exception):
    pass


class UnknownTrueTag(EvaluationError):
    pass


class EmptyMatrix(EvaluationError):
    pass


class TestSetOverlap(EvaluationError):
    """A test utterance equals a training pattern after preprocessing."""

    __test__ = False  # keep pytest from collecting the Test- prefixed name


@dataclass
class ConfusionMatrix:
    tags: tuple[str, ...]
    counts: np.ndarray  # shape (K, K+1); column K is the rejected column

    @classmethod
    def empty(cls, tags) -> "ConfusionMatrix":
        tags = tuple(tags)
        return cls(tags=tags, counts=np.zeros((len(tags), len(tags) + 1), dtype=np.int64))

    @property
    def rejected_column(self) -> int:
        return len(self.tags)

    @property
    def total(self) -> int:
        return int(self.counts.sum())

    def add(self, true_tag: str, predicted_tag: str) -> None:
        try:
            row = self.tags.index(true_tag)
        except ValueError:
            raise UnknownTrueTag(f"true tag {true_tag!r} is not a corpus tag") from None
        if predicted_tag in self.tags:
            col = self.tags.index(predicted_tag)
        else:
            col = self.rejected_column
        self.counts[row, col] += 1


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float


@dataclass
class MetricsReport:
    label: str
    per_class: dict[str, ClassMetrics]
    macro_precision: float
    macro_recall: float
    macro_f1: float
    accuracy: float

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "per_class": {
                tag: {"precision": m.precision, "recall": m.recall, "f1": m.f1}
                for tag, m in self.per_class.items()
            },
            "macro_precision": self.macro_precision,
            "macro_recall": self.macro_recall,
            "macro_f1": self.macro_f1,
            "accuracy": self.accuracy,
        }


def confusion(test_pairs, classifier, tags) -> ConfusionMatrix:
    """Classify every (utterance, true tag) pair and count the outcomes."""
    cm = ConfusionMatrix.empty(tags)
    for text, true_tag in test_pairs:
        prediction = classifier(text)
        cm.add(true_tag, prediction.tag)
    return cm


def metrics(cm: ConfusionMatrix, label: str = "") -> MetricsReport:
    """Per-class and macro precision/recall/F1 plus accuracy.

    Convention: a zero denominator yields 0 for that metric, and F1 is 0
    whenever precision + recall is 0.
    """
    if cm.total == 0:
        raise EmptyMatrix("confusion matrix has no observations")
    k = len(cm.tags)
    per_class: dict[str, ClassMetrics] = {}
    precisions, recalls, f1s = [], [], []
    for i, tag in enumerate(cm.tags):
        tp = float(cm.counts[i, i])
        fp = float(cm.counts[:, i].sum() - tp)
        fn = float(cm.counts[i, :].sum() - tp)  # row includes the rejected column
        precision = tp / (tp + fp) if tp + fp > 0 else 0.0
        recall = tp / (tp + fn) if tp + fn > 0 else 0.0
        f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
        per_class[tag] = ClassMetrics(precision, recall, f1)
        precisions.append(precision)
        recalls.append(recall)
        f1s.append(f1)
    accuracy = float(np.trace(cm.counts[:, :k])) / cm.total
    return MetricsReport(
        label=label,
        per_class=per_class,
        macro_precision=float(np.mean(precisions)),
        macro_recall=float(np.mean(recalls)),
        macro_f1=float(np.mean(f1s)),
        accuracy=accuracy,
    )


def load_test_set(path) -> list[tuple[str, str]]:
    """JSON list of {"text": ..., "tag": ...} objects."""
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    if not isinstance(obj, list):
        raise EvaluationError(f"{path}: test set must be a JSON list")
    pairs = []
    for i, item in enumerate(obj):
        if not isinstance(item, dict) or "text" not in item or "tag" not in item:
            raise EvaluationError(f"{path}: entry #{i} needs 'text' and 'tag'")
        pairs.append((str(item["text"]), str(item["tag"])))
    return pairs


def check_disjoint(corpus: Corpus, test_pairs) -> None:
    """Reject test utterances that match a training pattern after preprocessing."""
    pattern_keys = {
        " ".join(preprocess(p)) for it in corpus.intents for p in it.patterns
    }
    for text, _ in test_pairs:
        if " ".join(preprocess(text)) in pattern_keys:
            raise TestSetOverlap(
                f"test utterance {text!r} collapses to a training pattern")


@dataclass
class BackendResult:
    label: str
    report: MetricsReport
    confusion: ConfusionMatrix


def compare_backends(corpus: Corpus, test_pairs, *, seed: int = 0, dim: int = 384,
                     train_config: TrainConfig | None = None,
                     nn_threshold: float = matcher.DEFAULT_NN_THRESHOLD,
                     cosine_threshold: float = matcher.DEFAULT_COSINE_THRESHOLD,
                     ) -> list[BackendResult]:
    """Train/index all three backends with the same seed, evaluate on the
    identical test set, and report in fixed order."""
    check_disjoint(corpus, test_pairs)
    if not test_pairs:
        raise EvaluationError("test set is empty")
    results = []
    for name in matcher.BACKENDS:
        backend = matcher.build_backend(
            name, corpus, seed=seed, dim=dim,
            nn_threshold=nn_threshold, cosine_threshold=cosine_threshold,
            train_config=replace(train_config, seed=seed) if train_config else None,
        )
        cm = confusion(test_pairs, backend.classify, corpus.tags)
        results.append(BackendResult(label=name, report=metrics(cm, label=name),
                                     confusion=cm))
    return results


def format_comparison(results) -> str:
    """Three-row table: backend, macro precision/recall/F1, accuracy."""
    header = f"{'backend':<14} {'macro-P':>8} {'macro-R':>8} {'macro-F1':>9} {'accuracy':>9}"
    lines = [header, "-" * len(header)]
    for res in results:
        r = res.report
        lines.append(f"{res.label:<14} {r.macro_precision:>8.3f} {r.macro_recall:>8.3f} "
                     f"{r.macro_f1:>9.3f} {r.accuracy:>9.3f}")
    return "\n".join(lines)


def format_report(report: MetricsReport, cm: ConfusionMatrix | None = None) -> str:
    """Human-readable per-class table, optionally with the raw matrix."""
    lines = []
    if cm is not None:
        width = max([len(t) for t in cm.tags] + [8])
        head = " " * (width + 1) + " ".join(f"{t[:width]:>{width}}" for t in cm.tags)
        lines.append(head + f" {'rejected':>{width}}")
        for i, tag in enumerate(cm.tags):
            row = " ".join(f"{int(c):>{width}}" for c in cm.counts[i])
            lines.append(f"{tag:<{width}} {row}")
        lines.append("")
    lines.append(f"{'class':<16} {'precision':>9} {'recall':>8} {'f1':>8}")
    for tag, m in report.per_class.items():
        lines.append(f"{tag:<16} {m.precision:>9.3f} {m.recall:>8.3f} {m.f1:>8.3f}")
    lines.append(f"{'macro':<16} {report.macro_precision:>9.3f} "
                 f"{report.macro_recall:>8.3f} {report.macro_f1:>8.3f}")
    lines.append(f"accuracy {report.accuracy:.3f}")
    return "\n".join(lines)
