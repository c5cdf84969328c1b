"""Command-line entry point: train, chat, eval, serve.

Exit codes: 0 success, 1 runtime failure, 2 usage error. All subcommands
honor --seed, so repeated invocations produce byte-identical
machine-readable output.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import evaluation, matcher, mlp, service
from .corpus import CorpusError, load_corpus
from .dialog import DialogConfig, DialogSession, handle_turn


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="intentbot",
                                     description="corpus-based intent chatbot")
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--corpus", required=True, help="corpus JSON path")
    shared.add_argument("--backend", default="emb-cosine",
                        choices=list(matcher.BACKENDS) + ["all"],
                        help="classifier backend")
    shared.add_argument("--seed", type=int, default=0, help="global RNG seed")
    shared.add_argument("--threshold", type=float, default=None,
                        help="confidence threshold (defaults per backend)")
    shared.add_argument("--followup-prob", type=float, default=0.3,
                        help="probability of a follow-up remark")
    shared.add_argument("--embeddings", default=None,
                        help="TSV file of precomputed embeddings")

    sub = parser.add_subparsers(dest="command", required=True)

    p_train = sub.add_parser("train", parents=[shared],
                             help="train a backend and write its artifact")
    p_train.add_argument("--model-out", required=True, help="artifact output path")

    p_chat = sub.add_parser("chat", parents=[shared], help="interactive chat REPL")
    p_chat.add_argument("--model-in", default=None, help="load a trained artifact")

    p_eval = sub.add_parser("eval", parents=[shared],
                            help="evaluate backend(s) on a labeled test set")
    p_eval.add_argument("--test-set", required=True, help="JSON test set path")
    p_eval.add_argument("--json", action="store_true", dest="as_json",
                        help="machine-readable JSON output")

    p_serve = sub.add_parser("serve", parents=[shared], help="run the HTTP service")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--static-dir", default=None,
                         help="serve a built web UI from this directory")

    return parser


def _thresholds(args) -> dict:
    kwargs = {}
    if args.threshold is not None:
        kwargs["nn_threshold"] = args.threshold
        kwargs["cosine_threshold"] = args.threshold
    return kwargs


def _backend_for(args, corpus):
    return matcher.build_backend(
        args.backend, corpus, seed=args.seed,
        embeddings_path=args.embeddings, **_thresholds(args))


def run_train(args) -> int:
    corpus = load_corpus(args.corpus)
    if args.backend == "all":
        print("train requires a single backend, not 'all'", file=sys.stderr)
        return 2
    backend = _backend_for(args, corpus)
    if args.backend == "emb-cosine":
        matcher.save_index(backend.index, args.model_out)
        print(f"indexed {len(backend.index)} patterns "
              f"({len(backend.index.skipped)} skipped) -> {args.model_out}")
    else:
        mlp.save_model(backend.model, args.model_out)
        report = backend.report
        print(f"trained {args.backend}: final loss {report.epoch_losses[-1]:.6f}, "
              f"training accuracy {report.final_accuracy:.3f} -> {args.model_out}")
    return 0


def run_chat(args) -> int:
    corpus = load_corpus(args.corpus)
    if args.backend == "all":
        print("chat requires a single backend, not 'all'", file=sys.stderr)
        return 2
    backend = matcher.build_backend(
        args.backend, corpus, seed=args.seed, embeddings_path=args.embeddings,
        prepare=args.model_in is None, **_thresholds(args))
    if args.model_in is not None:
        if args.backend == "emb-cosine":
            backend.index = matcher.load_index(args.model_in,
                                               backend.provider.fingerprint)
        else:
            backend.model = mlp.load_model(args.model_in,
                                           backend.provider.fingerprint)

    session = DialogSession(corpus, session_id="cli", seed=args.seed)
    config = DialogConfig(followup_prob=args.followup_prob)
    interactive = sys.stdin.isatty()
    print(f"intentbot ({args.backend}) ready; say '{corpus.goodbye_tag}' to leave")
    while True:
        if interactive:
            print("you> ", end="", flush=True)
        line = sys.stdin.readline()
        if not line:
            break
        text = line.strip()
        if not text:
            continue
        turn = handle_turn(session, text, backend.classify, config)
        print(f"bot> {turn.response}")
        if turn.followup:
            print(f"bot+ {turn.followup}")
        if turn.ended:
            break
    return 0


def run_eval(args) -> int:
    corpus = load_corpus(args.corpus)
    test_pairs = evaluation.load_test_set(args.test_set)
    if not test_pairs:
        print("test set is empty", file=sys.stderr)
        return 1

    if args.backend == "all":
        results = evaluation.compare_backends(corpus, test_pairs, seed=args.seed,
                                              **_thresholds(args))
        if args.as_json:
            doc = [res.report.to_dict() for res in results]
            print(json.dumps(doc, indent=2, sort_keys=True))
        else:
            print(evaluation.format_comparison(results))
        return 0

    evaluation.check_disjoint(corpus, test_pairs)
    backend = _backend_for(args, corpus)
    cm = evaluation.confusion(test_pairs, backend.classify, corpus.tags)
    report = evaluation.metrics(cm, label=args.backend)
    if args.as_json:
        doc = report.to_dict()
        doc["confusion"] = cm.counts.tolist()
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        print(evaluation.format_report(report, cm))
    return 0


def run_serve(args) -> int:
    import uvicorn

    if args.backend == "all":
        print("serve requires a single backend, not 'all'", file=sys.stderr)
        return 2
    config = service.ServiceConfig(
        corpus_path=args.corpus,
        backend=args.backend,
        port=args.port,
        followup_prob=args.followup_prob,
        seed=args.seed,
        static_dir=args.static_dir,
    )
    if args.threshold is not None:
        config.nn_threshold = args.threshold
        config.cosine_threshold = args.threshold
    app = service.create_app(config)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "train": run_train,
    "chat": run_chat,
    "eval": run_eval,
    "serve": run_serve,
}


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (CorpusError, evaluation.EvaluationError, matcher.MatcherError,
            mlp.MlpError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
