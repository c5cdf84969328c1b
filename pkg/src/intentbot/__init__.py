"""Corpus-based intent-classification chatbot engine.

Three interchangeable classifier backends (one-hot + network, dense
embedding + network, dense embedding + cosine retrieval), a non-repeating
response dialog manager, and a confusion-matrix evaluation harness.
"""

__version__ = "0.1.0"

from .corpus import Corpus, IntentDef, load_corpus, save_corpus, validate_corpus
from .dialog import DialogConfig, DialogSession, handle_turn
from .matcher import BACKENDS, FALLBACK, Prediction, build_backend, classify
from .textproc import preprocess

__all__ = [
    "Corpus", "IntentDef", "load_corpus", "save_corpus", "validate_corpus",
    "DialogConfig", "DialogSession", "handle_turn",
    "BACKENDS", "FALLBACK", "Prediction", "build_backend", "classify",
    "preprocess", "__version__",
]
