"""Bundled demo corpus (jewelry shop) and its paraphrase test set."""

from importlib.resources import files


def demo_corpus_path():
    return files(__package__).joinpath("demo_corpus.json")


def demo_test_set_path():
    return files(__package__).joinpath("demo_test_set.json")
