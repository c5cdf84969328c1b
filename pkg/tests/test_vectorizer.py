import http.server
import json
import threading

import numpy as np
import pytest

from intentbot.corpus import Corpus, IntentDef
from intentbot.matcher import cosine
from intentbot.textproc import preprocess
from intentbot.vectorizer import (
    BagOfWordsProvider,
    DimensionMismatch,
    EmptyVocabulary,
    FallbackProvider,
    FileBackedProvider,
    FormatError,
    HashedTfidfProvider,
    MissingKey,
    ProviderError,
    RemoteProvider,
    Vocabulary,
    build_vocabulary,
    encode_bow,
    fnv1a_64,
    load_embedding_file,
)


def corpus_of(*pattern_lists):
    intents = [IntentDef(f"tag{i}", tuple(pats), ("r",))
               for i, pats in enumerate(pattern_lists)]
    return Corpus(intents=tuple(intents), fallback_response="?",
                  goodbye_tag="tag0")


class TestVocabulary:
    def test_sorted_union_of_stems(self):
        corpus = corpus_of(["visit shop"], ["shop timings"])
        vocab = build_vocabulary(corpus)
        assert vocab.stems == ("shop", "time", "visit")

    def test_single_pattern(self):
        vocab = build_vocabulary(corpus_of(["hello"], ["hello again"]))
        assert "hello" in vocab.stems

    def test_all_punctuation_is_empty(self):
        with pytest.raises(EmptyVocabulary):
            build_vocabulary(corpus_of(["???"], ["!!!"]))

    def test_permutation_invariant(self, demo_corpus):
        shuffled = Corpus(intents=tuple(reversed(demo_corpus.intents)),
                          fallback_response=demo_corpus.fallback_response,
                          goodbye_tag=demo_corpus.goodbye_tag)
        assert build_vocabulary(demo_corpus) == build_vocabulary(shuffled)


class TestEncodeBow:
    VOCAB = Vocabulary(stems=("shop", "time", "visit"))

    def test_presence_vector(self):
        assert encode_bow(["visit", "shop"], self.VOCAB).tolist() == [1.0, 0.0, 1.0]

    def test_empty_tokens(self):
        assert encode_bow([], self.VOCAB).tolist() == [0.0, 0.0, 0.0]

    def test_oov_dropped(self):
        assert encode_bow(["diamond"], self.VOCAB).tolist() == [0.0, 0.0, 0.0]

    def test_binary_entries_and_dim(self, demo_corpus):
        vocab = build_vocabulary(demo_corpus)
        for it in demo_corpus.intents:
            for pattern in it.patterns:
                vec = encode_bow(preprocess(pattern), vocab)
                assert vec.shape == (len(vocab),)
                assert set(np.unique(vec)) <= {0.0, 1.0}


class TestFnv1a:
    def test_published_vectors(self):
        assert fnv1a_64(b"") == 0xCBF29CE484222325
        assert fnv1a_64(b"a") == 0xAF63DC4C8601EC8C
        assert fnv1a_64(b"foobar") == 0x85944171F73967E8


@pytest.fixture(scope="module")
def provider(demo_corpus):
    return HashedTfidfProvider.fit(demo_corpus, dim=384)


class TestHashedTfidf:

    def test_deterministic(self, provider):
        a = provider.embed("What are your shop timings?")
        b = provider.embed("What are your shop timings?")
        assert np.array_equal(a, b)

    def test_unit_norm(self, provider, demo_corpus):
        for it in demo_corpus.intents:
            for pattern in it.patterns:
                norm = np.linalg.norm(provider.embed(pattern))
                assert norm == pytest.approx(1.0, abs=1e-9)

    def test_zero_for_empty(self, provider):
        assert not np.any(provider.embed(""))
        assert not np.any(provider.embed("???"))

    def test_self_cosine_is_one(self, provider):
        v = provider.embed("do you sell gold rings")
        assert cosine(v, v) == pytest.approx(1.0, abs=1e-12)

    def test_similarity_ordering_frozen(self, provider):
        # regression values computed from this implementation at bring-up
        a = provider.embed("What are your shop timings?")
        b = provider.embed("What time can I visit your shop?")
        c = provider.embed("Do you sell gold rings?")
        near, far = cosine(a, b), cosine(a, c)
        assert near > far
        assert near == pytest.approx(0.554705055948023, abs=1e-9)
        assert far == pytest.approx(0.019979940291159837, abs=1e-9)

    def test_min_dim_enforced(self):
        with pytest.raises(ValueError):
            HashedTfidfProvider(dim=8, doc_count=0, doc_freq={})

    def test_entries_finite(self, provider):
        vec = provider.embed("random words never seen before zzz")
        assert np.all(np.isfinite(vec))


class TestFileBacked:
    def make_file(self, tmp_path, rows):
        path = tmp_path / "emb.tsv"
        path.write_text("\n".join(rows) + "\n", encoding="utf-8")
        return path

    def test_load_and_lookup(self, tmp_path):
        vec = " ".join(str(0.25 * i) for i in range(384))
        path = self.make_file(tmp_path, [f"hello\t{vec}", f"bye\t{vec}",
                                         f"shop\t{vec}"])
        provider = load_embedding_file(path)
        assert provider.dim == 384
        assert provider.embed("hello").tolist() == [0.25 * i for i in range(384)]

    def test_missing_key(self, tmp_path):
        path = self.make_file(tmp_path, ["hello\t1.0 2.0"])
        provider = load_embedding_file(path)
        with pytest.raises(MissingKey):
            provider.embed("unknown text")

    def test_format_error_no_tab(self, tmp_path):
        path = self.make_file(tmp_path, ["hello 1.0 2.0"])
        with pytest.raises(FormatError):
            load_embedding_file(path)

    def test_format_error_bad_float(self, tmp_path):
        path = self.make_file(tmp_path, ["hello\t1.0 two"])
        with pytest.raises(FormatError):
            load_embedding_file(path)

    def test_dimension_mismatch(self, tmp_path):
        path = self.make_file(tmp_path, ["a\t1.0 2.0", "b\t1.0 2.0 3.0"])
        with pytest.raises(DimensionMismatch):
            load_embedding_file(path)

    def test_empty_file(self, tmp_path):
        path = tmp_path / "empty.tsv"
        path.write_text("", encoding="utf-8")
        with pytest.raises(FormatError):
            load_embedding_file(path)


class TestFallbackProvider:
    def test_falls_back_on_missing_key(self, demo_corpus):
        primary = FileBackedProvider({"hello": np.ones(384)}, dim=384)
        hashed = HashedTfidfProvider.fit(demo_corpus, dim=384)
        provider = FallbackProvider(primary, hashed)
        assert np.array_equal(provider.embed("hello"), np.ones(384))
        assert np.array_equal(provider.embed("other text"),
                              hashed.embed("other text"))

    def test_dim_mismatch_rejected(self, demo_corpus):
        primary = FileBackedProvider({"hello": np.ones(64)}, dim=64)
        hashed = HashedTfidfProvider.fit(demo_corpus, dim=384)
        with pytest.raises(DimensionMismatch):
            FallbackProvider(primary, hashed)


class _EmbedHandler(http.server.BaseHTTPRequestHandler):
    fail_with = None

    def do_POST(self):
        if self.fail_with:
            self.send_response(self.fail_with)
            self.end_headers()
            return
        length = int(self.headers["Content-Length"])
        texts = json.loads(self.rfile.read(length))["texts"]
        body = json.dumps({"vectors": [[float(len(t)), 1.0] for t in texts]})
        self.send_response(200)
        self.send_header("Content-Type", "application/json")
        self.end_headers()
        self.wfile.write(body.encode())

    def log_message(self, *args):
        pass


@pytest.fixture
def embed_server():
    server = http.server.HTTPServer(("127.0.0.1", 0), _EmbedHandler)
    thread = threading.Thread(target=server.serve_forever, daemon=True)
    thread.start()
    yield server
    server.shutdown()


class TestRemoteProvider:
    def test_round_trip(self, embed_server):
        _EmbedHandler.fail_with = None
        url = f"http://127.0.0.1:{embed_server.server_port}/embed"
        provider = RemoteProvider(url, dim=2, timeout=5.0)
        assert provider.embed("hello").tolist() == [5.0, 1.0]

    def test_non_200_is_provider_error(self, embed_server):
        _EmbedHandler.fail_with = 500
        url = f"http://127.0.0.1:{embed_server.server_port}/embed"
        provider = RemoteProvider(url, dim=2, timeout=5.0)
        with pytest.raises(ProviderError):
            provider.embed("hello")
        _EmbedHandler.fail_with = None

    def test_connection_failure_is_provider_error(self):
        provider = RemoteProvider("http://127.0.0.1:1/embed", dim=2, timeout=0.2)
        with pytest.raises(ProviderError):
            provider.embed("hello")

    def test_wrong_dim_rejected(self, embed_server):
        _EmbedHandler.fail_with = None
        url = f"http://127.0.0.1:{embed_server.server_port}/embed"
        provider = RemoteProvider(url, dim=7, timeout=5.0)
        with pytest.raises(DimensionMismatch):
            provider.embed("hello")
