"""Acceptance suite: one test per release criterion, at its stated tolerance.

Each test prints a PASS line on success (run with -s to see them inline);
any assertion failure is a release blocker.
"""

import json
import math
import subprocess
import sys
import time
from collections import Counter
from pathlib import Path

import numpy as np
import pytest

from intentbot import evaluation, matcher, mlp
from intentbot.corpus import load_corpus
from intentbot.data import demo_corpus_path, demo_test_set_path
from intentbot.dialog import DialogConfig, DialogSession, maybe_followup, next_response
from intentbot.porter import porter_stem
from intentbot.prediction import FALLBACK
from intentbot.vectorizer import BagOfWordsProvider, HashedTfidfProvider
from test_mlp import finite_difference_grads, max_relative_error, random_check_instance


def report(name):
    print(f"PASS  {name}")


def test_gradient_correctness():
    start = time.perf_counter()
    rng = np.random.default_rng(2024)
    checked = 0
    worst = 0.0
    while checked < 50:
        model, X, Y = random_check_instance(rng)
        if model is None:
            continue
        analytic = mlp.backprop_gradients(model, X, Y)
        numeric = finite_difference_grads(model, X, Y, eps=1e-5)
        worst = max(worst, max_relative_error(analytic, numeric))
        checked += 1
    elapsed = time.perf_counter() - start
    assert worst < 1e-4, f"max relative error {worst:.3e}"
    assert elapsed < 10.0, f"gradient check took {elapsed:.1f}s"
    report(f"gradient correctness: 50 draws, max rel err {worst:.2e}, "
           f"{elapsed:.1f}s")


def test_softmax_probability_suite():
    rng = np.random.default_rng(31337)
    for _ in range(1000):
        depth = int(rng.integers(1, 4))
        dims = [int(rng.integers(2, 9)) for _ in range(depth + 1)]
        model = mlp.init_model(dims, seed=int(rng.integers(1 << 30)))
        for b in model.biases:
            b += rng.normal(scale=0.5, size=b.shape)
        probs = mlp.forward(model, rng.normal(size=dims[0]) * 3.0)
        assert np.all(probs >= 0.0)
        assert abs(probs.sum() - 1.0) <= 1e-6
    report("softmax suite: 1000 random forward passes on the simplex")


def test_porter_reference_vocabulary():
    assert porter_stem("visiting") == "visit"
    assert porter_stem("timings") == "time"
    fixture = Path(__file__).parent / "data" / "porter_vocab.tsv"
    total = wrong = 0
    with open(fixture, encoding="utf-8") as fh:
        for line in fh:
            word, stem = line.rstrip("\n").split("\t")
            total += 1
            if porter_stem(word) != stem:
                wrong += 1
    assert wrong == 0, f"{wrong}/{total} vocabulary mismatches"
    report(f"porter stemmer: {total}/{total} reference vocabulary entries")


def test_toy_separability(toy_corpus):
    start = time.perf_counter()
    provider = BagOfWordsProvider.fit(toy_corpus)
    config = mlp.TrainConfig(learning_rate=0.01, epochs=200, seed=7)
    _model, train_report = mlp.train(toy_corpus, provider, config)
    elapsed = time.perf_counter() - start
    assert train_report.final_accuracy == 1.0
    assert elapsed < 5.0, f"training took {elapsed:.1f}s"
    report(f"toy separability: accuracy 1.0 in 200 epochs at lr 0.01, "
           f"{elapsed:.2f}s")


def test_cosine_oracle():
    value = matcher.cosine(np.array([1.0, 2.0, 3.0]), np.array([4.0, 5.0, 6.0]))
    assert value == pytest.approx(0.974632, abs=1e-6)

    corpus = load_corpus(demo_corpus_path())
    provider = HashedTfidfProvider.fit(corpus, dim=384)
    index = matcher.build_index(corpus, provider)
    rng = np.random.default_rng(424242)
    words = ["shop", "gold", "ring", "open", "time", "visit", "where", "how",
             "price", "repair", "ship", "card", "book", "bye", "hello",
             "certificate", "necklace", "earring", "custom", "return", "pay"]
    for _ in range(100):
        query = " ".join(rng.choice(words)
                         for _ in range(int(rng.integers(1, 6))))
        qvec = provider.embed(query)
        sims = [matcher.cosine(qvec, e.vector) for e in index.entries]
        best = int(np.argmax(sims))
        pred = matcher.predict_cosine(index, query, provider, threshold=-1.0)
        assert pred.matched_pattern == index.entries[best].pattern
    report("cosine oracle: hand value 0.974632 and 100-query brute-force "
           "argmax equality")


def test_worked_example_end_to_end():
    corpus = load_corpus(demo_corpus_path())
    backend = matcher.build_backend("emb-cosine", corpus, seed=0)
    pred = backend.classify("What time can I visit your shop?")
    assert pred.tag == "Timing"
    assert pred.matched_pattern == "What are your shop timings?"
    report('worked example: "What time can I visit your shop?" -> Timing / '
           '"What are your shop timings?"')


def test_response_variation_and_followup_rate():
    corpus = load_corpus(demo_corpus_path())
    session = DialogSession(corpus, session_id="acceptance", seed=0)
    previous = None
    for _ in range(10_000):
        response = next_response(session, "Timing")  # 3 responses rotate
        assert response != previous, "adjacent repeat"
        previous = response

    followups = sum(
        maybe_followup(session, "Timing", 0.3) is not None
        for _ in range(10_000))
    rate = followups / 10_000
    assert 0.27 <= rate <= 0.33, f"follow-up rate {rate}"
    report(f"response variation: 10k turns, zero adjacent repeats; "
           f"follow-up rate {rate:.3f} in [0.27, 0.33]")


def test_metrics_oracle():
    cm = evaluation.ConfusionMatrix.empty(("A", "B"))
    for true_tag, predicted in zip("AAABBB", "AABABB"):
        cm.add(true_tag, predicted)
    assert cm.counts[:, :2].tolist() == [[2, 1], [1, 2]]
    metrics_report = evaluation.metrics(cm)
    assert metrics_report.macro_f1 == pytest.approx(2 / 3, abs=1e-12)

    diag = evaluation.ConfusionMatrix.empty(("A", "B", "C"))
    for tag in ("A", "A", "B", "C"):
        diag.add(tag, tag)
    assert evaluation.metrics(diag).macro_f1 == 1.0
    report("metrics oracle: [[2,1],[1,2]] -> macro F1 = 2/3; diagonal -> 1.0")


def test_desk_scale_backend_comparison():
    start = time.perf_counter()
    corpus = load_corpus(demo_corpus_path())
    pairs = evaluation.load_test_set(demo_test_set_path())
    per_intent = Counter(tag for _, tag in pairs)
    assert all(per_intent[tag] >= 3 for tag in corpus.tags), \
        "need >= 3 paraphrases per intent"
    evaluation.check_disjoint(corpus, pairs)

    results = evaluation.compare_backends(corpus, pairs, seed=0)
    elapsed = time.perf_counter() - start
    f1 = {r.label: r.report.macro_f1 for r in results}
    assert f1["emb-cosine"] >= f1["ohe-nn"], f1
    assert f1["emb-cosine"] >= f1["emb-nn"], f1
    assert elapsed < 60.0, f"comparison took {elapsed:.1f}s"
    report(f"desk-scale comparison: cosine {f1['emb-cosine']:.3f} >= "
           f"ohe-nn {f1['ohe-nn']:.3f}, emb-nn {f1['emb-nn']:.3f}; "
           f"{elapsed:.1f}s")


def run_cli(*args, stdin=""):
    return subprocess.run([sys.executable, "-m", "intentbot", *args],
                          input=stdin, capture_output=True, text=True,
                          timeout=300)


def test_seeded_invocations_byte_identical(tmp_path):
    corpus = str(demo_corpus_path())
    test_set = str(demo_test_set_path())

    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    for out in (out1, out2):
        result = run_cli("train", "--corpus", corpus, "--backend", "ohe-nn",
                         "--seed", "11", "--model-out", str(out))
        assert result.returncode == 0, result.stderr
    assert out1.read_bytes() == out2.read_bytes()

    eval_args = ("eval", "--corpus", corpus, "--backend", "emb-cosine",
                 "--seed", "11", "--test-set", test_set, "--json")
    assert run_cli(*eval_args).stdout == run_cli(*eval_args).stdout

    chat_args = ("chat", "--corpus", corpus, "--backend", "emb-cosine",
                 "--seed", "11", "--followup-prob", "0.5")
    stdin = "What time can I visit your shop?\nDo you repair jewelry?\nbye\n"
    assert run_cli(*chat_args, stdin=stdin).stdout == \
        run_cli(*chat_args, stdin=stdin).stdout
    report("determinism: train artifact, eval --json and chat transcript "
           "byte-identical across reruns")
