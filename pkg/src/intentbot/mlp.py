"""From-scratch feed-forward network classifier trained with plain SGD.

Hidden layers are affine + ReLU, the output layer is affine + softmax, and
the loss is mean cross-entropy. Gradients are exact analytic backprop with
the softmax/cross-entropy pair fused to (p - y) at the output. Training is
deterministic: the same corpus, encoder and config always produce a
bit-identical model.

Conventions: ReLU derivative at exactly 0 is 0; softmax subtracts the max
logit before exponentiation; probabilities are clamped to >= 1e-12 before
the log in the loss.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .corpus import Corpus
from .prediction import FALLBACK, Prediction


class MlpError(Exception):
    """Base class for network errors."""


class DimensionMismatch(MlpError):
    """Input or batch shape disagrees with the model."""


class EmptyTrainingSet(MlpError):
    """No intent contributed an encodable pattern."""


class NonFiniteLoss(MlpError):
    """Training diverged; message carries the epoch index."""


class FingerprintMismatch(MlpError):
    """Persisted model was trained against a different vectorizer."""


@dataclass
class TrainConfig:
    # lr 0.01 is the one training constant the backends treat as standard;
    # 1000 epochs is what it takes for softmax confidences to sharpen past
    # the prediction threshold on unit-norm embedding inputs.
    learning_rate: float = 0.01
    epochs: int = 1000
    batch_size: int = 8
    seed: int = 0
    hidden_dims: tuple[int, ...] = (128, 64)

    def validate(self) -> None:
        if self.learning_rate <= 0:
            raise ValueError(f"learning_rate must be > 0, got {self.learning_rate}")
        if self.epochs < 1:
            raise ValueError(f"epochs must be >= 1, got {self.epochs}")
        if self.batch_size < 1:
            raise ValueError(f"batch_size must be >= 1, got {self.batch_size}")
        if any(d < 1 for d in self.hidden_dims):
            raise ValueError(f"hidden dims must be >= 1, got {self.hidden_dims}")


@dataclass
class TrainReport:
    epoch_losses: list[float]
    final_accuracy: float


@dataclass
class MlpModel:
    """Layer weights/biases plus the frozen class-tag ordering."""

    layer_dims: list[int]
    weights: list[np.ndarray]  # per layer, shape (fan_out, fan_in)
    biases: list[np.ndarray]   # per layer, shape (fan_out,)
    class_tags: list[str] = field(default_factory=list)
    vectorizer_fingerprint: str = ""

    @property
    def input_dim(self) -> int:
        return self.layer_dims[0]

    @property
    def output_dim(self) -> int:
        return self.layer_dims[-1]


def init_model(layer_dims, seed: int, class_tags=()) -> MlpModel:
    """Uniform(-sqrt(6/fan_in), +sqrt(6/fan_in)) weights, zero biases.

    Uses numpy's PCG64 generator seeded with `seed`, so the same seed always
    yields a bit-identical model.
    """
    layer_dims = [int(d) for d in layer_dims]
    if len(layer_dims) < 2 or any(d < 1 for d in layer_dims):
        raise ValueError(f"need at least [d_in, d_out] with dims >= 1, got {layer_dims}")
    rng = np.random.Generator(np.random.PCG64(seed))
    weights, biases = [], []
    for fan_in, fan_out in zip(layer_dims[:-1], layer_dims[1:]):
        limit = np.sqrt(6.0 / fan_in)
        weights.append(rng.uniform(-limit, limit, size=(fan_out, fan_in)))
        biases.append(np.zeros(fan_out, dtype=np.float64))
    return MlpModel(layer_dims=layer_dims, weights=weights, biases=biases,
                    class_tags=list(class_tags))


def _softmax(logits: np.ndarray) -> np.ndarray:
    shifted = logits - logits.max(axis=-1, keepdims=True)
    exp = np.exp(shifted)
    return exp / exp.sum(axis=-1, keepdims=True)


def _forward_cache(model: MlpModel, X: np.ndarray):
    """Batch forward pass keeping pre-activations for backprop."""
    if X.ndim != 2 or X.shape[1] != model.input_dim:
        raise DimensionMismatch(
            f"batch shape {X.shape} does not match input dim {model.input_dim}")
    activations = [X]
    zs = []
    a = X
    last = len(model.weights) - 1
    for i, (W, b) in enumerate(zip(model.weights, model.biases)):
        z = a @ W.T + b
        zs.append(z)
        a = _softmax(z) if i == last else np.maximum(z, 0.0)
        activations.append(a)
    return zs, activations


def forward(model: MlpModel, x: np.ndarray) -> np.ndarray:
    """Class probabilities for one input vector."""
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.shape[0] != model.input_dim:
        raise DimensionMismatch(
            f"input of dim {x.shape} does not match model input dim {model.input_dim}")
    _, activations = _forward_cache(model, x[None, :])
    return activations[-1][0]


def _mean_cross_entropy(probs: np.ndarray, Y: np.ndarray) -> float:
    clamped = np.maximum(probs, 1e-12)
    return float(-np.mean(np.sum(Y * np.log(clamped), axis=1)))


def backprop_gradients(model: MlpModel, X: np.ndarray, Y: np.ndarray):
    """Exact gradients of the mean cross-entropy over the batch.

    Returns a list of (dW, db) pairs, one per layer.
    """
    X = np.asarray(X, dtype=np.float64)
    Y = np.asarray(Y, dtype=np.float64)
    if X.shape[0] == 0:
        raise DimensionMismatch("batch is empty")
    if Y.shape != (X.shape[0], model.output_dim):
        raise DimensionMismatch(
            f"target shape {Y.shape} does not match ({X.shape[0]}, {model.output_dim})")
    zs, activations = _forward_cache(model, X)
    n = X.shape[0]
    delta = (activations[-1] - Y) / n  # fused softmax + cross-entropy
    grads = [None] * len(model.weights)
    for layer in range(len(model.weights) - 1, -1, -1):
        grads[layer] = (delta.T @ activations[layer], delta.sum(axis=0))
        if layer > 0:
            delta = (delta @ model.weights[layer]) * (zs[layer - 1] > 0.0)
    return grads


def _training_set(corpus: Corpus, encoder):
    """All (encoded pattern, one-hot intent) pairs, in corpus order."""
    tags = [it.tag for it in corpus.intents]
    rows, targets = [], []
    for k, it in enumerate(corpus.intents):
        encodable = 0
        for pattern in it.patterns:
            vec = np.asarray(encoder.embed(pattern), dtype=np.float64)
            if not np.any(vec):
                continue
            onehot = np.zeros(len(tags), dtype=np.float64)
            onehot[k] = 1.0
            rows.append(vec)
            targets.append(onehot)
            encodable += 1
        if encodable == 0:
            raise EmptyTrainingSet(
                f"intent {it.tag!r} contributed no encodable pattern")
    if not rows:
        raise EmptyTrainingSet("corpus produced no training pairs")
    return np.stack(rows), np.stack(targets), tags


def train(corpus: Corpus, encoder, config: TrainConfig | None = None):
    """Mini-batch SGD over all (pattern, intent) pairs.

    encoder is an embedding provider (.embed/.dim/.fingerprint). Returns
    (model, TrainReport) with the per-epoch mean loss curve.
    """
    config = config or TrainConfig()
    config.validate()
    X, Y, tags = _training_set(corpus, encoder)
    n = X.shape[0]
    batch_size = min(config.batch_size, n)

    dims = [encoder.dim, *config.hidden_dims, len(tags)]
    model = init_model(dims, seed=config.seed, class_tags=tags)
    model.vectorizer_fingerprint = getattr(encoder, "fingerprint", "")
    shuffle_rng = np.random.Generator(np.random.PCG64([config.seed, 1]))

    losses: list[float] = []
    for epoch in range(config.epochs):
        perm = shuffle_rng.permutation(n)
        epoch_loss = 0.0
        for start in range(0, n, batch_size):
            idx = perm[start:start + batch_size]
            bx, by = X[idx], Y[idx]
            _, activations = _forward_cache(model, bx)
            epoch_loss += _mean_cross_entropy(activations[-1], by) * len(idx)
            grads = backprop_gradients(model, bx, by)
            for (dW, db), W, b in zip(grads, model.weights, model.biases):
                W -= config.learning_rate * dW
                b -= config.learning_rate * db
        epoch_loss /= n
        if not np.isfinite(epoch_loss):
            raise NonFiniteLoss(f"loss became non-finite at epoch {epoch}")
        losses.append(epoch_loss)

    _, activations = _forward_cache(model, X)
    accuracy = float(np.mean(
        np.argmax(activations[-1], axis=1) == np.argmax(Y, axis=1)))
    return model, TrainReport(epoch_losses=losses, final_accuracy=accuracy)


def predict_nn(model: MlpModel, x: np.ndarray, threshold: float = 0.5) -> Prediction:
    """Argmax prediction; confidence below threshold falls back.

    Ties break toward the lowest class index.
    """
    probs = forward(model, x)
    best = int(np.argmax(probs))
    confidence = float(probs[best])
    if confidence < threshold:
        return Prediction(tag=FALLBACK, confidence=confidence)
    return Prediction(tag=model.class_tags[best], confidence=confidence)


_FORMAT = "intentbot-mlp"
_FORMAT_VERSION = 1


def save_model(model: MlpModel, path) -> None:
    """Persist as JSON; floats round-trip bit-exactly via repr."""
    obj = {
        "format": _FORMAT,
        "version": _FORMAT_VERSION,
        "layer_dims": model.layer_dims,
        "class_tags": model.class_tags,
        "weights": [W.tolist() for W in model.weights],
        "biases": [b.tolist() for b in model.biases],
        "vectorizer_fingerprint": model.vectorizer_fingerprint,
    }
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(obj, fh)
        fh.write("\n")


def load_model(path, expected_fingerprint: str | None = None) -> MlpModel:
    with open(path, "r", encoding="utf-8") as fh:
        obj = json.load(fh)
    if obj.get("format") != _FORMAT or obj.get("version") != _FORMAT_VERSION:
        raise MlpError(f"{path} is not a version-{_FORMAT_VERSION} {_FORMAT} file")
    model = MlpModel(
        layer_dims=[int(d) for d in obj["layer_dims"]],
        weights=[np.array(W, dtype=np.float64) for W in obj["weights"]],
        biases=[np.array(b, dtype=np.float64) for b in obj["biases"]],
        class_tags=list(obj["class_tags"]),
        vectorizer_fingerprint=obj.get("vectorizer_fingerprint", ""),
    )
    for W, b, (fan_in, fan_out) in zip(model.weights, model.biases,
                                       zip(model.layer_dims[:-1], model.layer_dims[1:])):
        if W.shape != (fan_out, fan_in) or b.shape != (fan_out,):
            raise MlpError(f"{path}: stored parameter shapes are inconsistent")
    if expected_fingerprint is not None and \
            model.vectorizer_fingerprint != expected_fingerprint:
        raise FingerprintMismatch(
            f"model was trained with {model.vectorizer_fingerprint!r}, "
            f"current vectorizer is {expected_fingerprint!r}")
    return model
