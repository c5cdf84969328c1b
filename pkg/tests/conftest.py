import json

import pytest

from intentbot.corpus import Corpus, IntentDef, load_corpus
from intentbot.data import demo_corpus_path, demo_test_set_path
from intentbot.evaluation import load_test_set


@pytest.fixture(scope="session")
def demo_corpus():
    return load_corpus(demo_corpus_path())


@pytest.fixture(scope="session")
def demo_pairs():
    return load_test_set(demo_test_set_path())


@pytest.fixture(scope="session")
def toy_corpus():
    """Two classes, four pairwise-orthogonal bag-of-words patterns."""
    return Corpus(
        intents=(
            IntentDef("gems", ("ruby glow", "amber spark"), ("gems it is",)),
            IntentDef("goodbye", ("farewell note", "parting wave"),
                      ("so long",)),
        ),
        fallback_response="hmm?",
    )


@pytest.fixture
def write_corpus(tmp_path):
    """Dump a corpus-schema dict to a temp file, return the path."""

    def _write(obj, name="corpus.json"):
        path = tmp_path / name
        path.write_text(json.dumps(obj), encoding="utf-8")
        return path

    return _write


def minimal_corpus_obj():
    return {
        "fallback_response": "sorry?",
        "goodbye_tag": "goodbye",
        "intents": [
            {"tag": "timing", "patterns": ["when do you open"],
             "responses": ["at dawn"], "followups": []},
            {"tag": "goodbye", "patterns": ["bye"], "responses": ["bye!"],
             "followups": []},
        ],
    }
