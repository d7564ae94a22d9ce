"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 data error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import harness
from .attribution import BasicScheme, PipelineConfig, open_attribute
from .classify import FEATURE_SETS, ClassifierConfig, ClassifierModel, build_report
from .delta import build_profile, delta_attribute, delta_open_attribute, top_k_hit
from .errors import DataError
from .features import ODV_MODES
from .nf_dict import build_dictionary, load_dictionary, save_dictionary
from .partition import DEFAULT_SCHEMES, PartitionScheme
from .text_ingest import Document, load_corpus, load_corpus_report, longest_documents, segment, tokenize

logger = logging.getLogger("nfzwda")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_dict(p):
    p.add_argument("--dict", dest="dict_path", required=False, help="NF dictionary TSV")
    p.add_argument("--permissive-dict", action="store_true",
                   help="accept dictionary lines in any order")


def _add_pipeline(p):
    _add_dict(p)
    p.add_argument("--partition", choices=sorted(DEFAULT_SCHEMES), default="linear")
    p.add_argument("--L", type=int, default=None)
    p.add_argument("--R", type=int, default=None)
    p.add_argument("--r", type=float, default=None)
    p.add_argument("--odv-mode", choices=ODV_MODES, default="variance")
    p.add_argument("--word-length", type=int, default=1000)
    p.add_argument("--segment-mode", choices=("front", "chunks"), default="front")
    p.add_argument("--longest-chapters", type=int, default=None,
                   help="keep only the N longest documents per author")


def _add_classifier(p):
    p.add_argument("--C", type=float, default=1.0)
    p.add_argument("--tol", type=float, default=1e-3)
    p.add_argument("--max-iter", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--feature-set", choices=FEATURE_SETS, default="full")


def _add_inputs(p):
    p.add_argument("--corpus", help="corpus root (<root>/<author>/<doc>.txt)")
    p.add_argument("texts", nargs="*", help="individual text files")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="nfzwda", description="NFZ word-distribution authorship attribution")
    parser.add_argument("-v", "--verbose", action="store_true")
    parser.add_argument("--config", help="TOML file with default option values")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("build-dict", help="count a corpus into an NF dictionary")
    p.add_argument("--corpus")
    p.add_argument("--out")

    p = sub.add_parser("featurize", help="export style vectors as JSON lines")
    _add_inputs(p)
    _add_pipeline(p)
    p.add_argument("--out", help="output .jsonl (stdout if omitted)")

    p = sub.add_parser("train", help="train a closed-set model")
    p.add_argument("--corpus")
    _add_pipeline(p)
    _add_classifier(p)
    p.add_argument("--out", help="model JSON")

    p = sub.add_parser("attribute", help="closed-set attribution with a saved model")
    _add_inputs(p)
    _add_dict(p)
    p.add_argument("--model")
    p.add_argument("--word-length", type=int, default=None, help="defaults to the model's")
    p.add_argument("--out")

    p = sub.add_parser("open-attribute", help="open-set attribution of long texts")
    _add_inputs(p)
    _add_dict(p)
    p.add_argument("--model")
    p.add_argument("--word-length", type=int, default=None, help="defaults to the model's")
    p.add_argument("--theta", type=float, default=0.5)
    p.add_argument("--out")

    p = sub.add_parser("delta", help="Burrows's Delta baseline")
    p.add_argument("--train", help="training corpus root")
    p.add_argument("--test", help="test corpus root")
    _add_dict(p)
    p.add_argument("--n-words", type=int, default=150)
    p.add_argument("--top-k", type=int, default=1)
    p.add_argument("--threshold", type=float, default=None)
    p.add_argument("--word-length", type=int, default=1000)
    p.add_argument("--profile-out")
    p.add_argument("--out")

    p = sub.add_parser("experiment", help="run a configured experiment protocol")
    p.add_argument("--out", dest="output", help="output directory (overrides config)")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--kind", choices=("closed", "open"), default=None)
    p.add_argument("--format", choices=("csv", "json", "both"), default="both")
    return parser


def _scheme(args) -> PartitionScheme:
    base = DEFAULT_SCHEMES[args.partition]
    return PartitionScheme(
        base.kind,
        L=args.L if args.L is not None else base.L,
        R=args.R if args.R is not None else base.R,
        r=args.r if args.r is not None else base.r,
    )


def _need(args, *names):
    missing = [n for n in names if not getattr(args, n, None)]
    if missing:
        raise UsageError("missing required option(s): " + ", ".join("--" + m.replace("_", "-") for m in missing))


def _nf(args):
    if not args.dict_path:
        raise UsageError("--dict is required")
    return load_dictionary(args.dict_path, permissive=args.permissive_dict)


def _docs(args) -> list[Document]:
    docs: list[Document] = []
    if args.corpus:
        loaded = load_corpus_report(args.corpus)
        docs += loaded.documents
        for err in loaded.errors:
            print(f"warning: unreadable file {err}", file=sys.stderr)
    for t in args.texts:
        docs.append(Document(t, Path(t).read_text(encoding="utf-8")))
    if getattr(args, "longest_chapters", None):
        docs = longest_documents(docs, args.longest_chapters)
    if not docs:
        raise UsageError("no input texts (use --corpus or list files)")
    return docs


def _emit(obj, out):
    text = json.dumps(obj, indent=1, sort_keys=True) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_build_dict(args):
    _need(args, "corpus", "out")
    d = build_dictionary(load_corpus(args.corpus), source=args.corpus)
    save_dictionary(d, args.out)
    print(f"{len(d)} words, f_max={d.f_max} -> {args.out}", file=sys.stderr)


def cmd_featurize(args):
    nf = _nf(args)
    pipe = BasicScheme(nf, PipelineConfig(_scheme(args), args.odv_mode, args.word_length))
    lines = []
    for doc in _docs(args):
        segs = segment(tokenize(doc.text), args.word_length, args.segment_mode)
        for i, seq in enumerate(segs):
            sid = doc.source_id if args.segment_mode == "front" else f"{doc.source_id}#{i}"
            lines.append(json.dumps(pipe.vectorize(seq, sid, doc.author_label).to_record()))
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def cmd_train(args):
    _need(args, "corpus", "out")
    nf = _nf(args)
    clf = ClassifierConfig(args.C, args.tol, args.max_iter, args.seed, args.feature_set)
    cfg = PipelineConfig(_scheme(args), args.odv_mode, args.word_length, clf)
    docs = load_corpus(args.corpus)
    if args.longest_chapters:
        docs = longest_documents(docs, args.longest_chapters)
    pipe = BasicScheme(nf, cfg).fit(docs)
    pipe.model.extra["pipeline"] = {"word_length": args.word_length, "dictionary": nf.source}
    pipe.model.save(args.out)
    print(f"trained on {len(docs)} texts, {len(pipe.labels)} authors -> {args.out}", file=sys.stderr)


def _loaded_pipeline(args) -> BasicScheme:
    _need(args, "model")
    model = ClassifierModel.load(args.model)
    wl = args.word_length or model.extra.get("pipeline", {}).get("word_length")
    pipe = BasicScheme(_nf(args), PipelineConfig(model.scheme, model.odv_mode, wl, model.config))
    pipe.model = model
    return pipe


def cmd_attribute(args):
    pipe = _loaded_pipeline(args)
    docs = _docs(args)
    vecs = [pipe.sample_vector(d) for d in docs]
    preds = pipe.model.predict_many(vecs)
    if all(d.author_label is not None for d in docs):
        out = build_report([d.author_label for d in docs], preds, [d.source_id for d in docs],
                           pipe.labels).to_dict()
    else:
        out = {"predictions": [{"source_id": d.source_id, "true": d.author_label, "predicted": p}
                               for d, p in zip(docs, preds)]}
    _emit(out, args.out)


def cmd_open_attribute(args):
    pipe = _loaded_pipeline(args)
    reports = []
    for doc in _docs(args):
        rep = open_attribute(doc, pipe, pipe.config.word_length, args.theta)
        reports.append(rep.to_dict() | {"true_author": doc.author_label})
    _emit(reports, args.out)


def cmd_delta(args):
    _need(args, "train", "test")
    nf = _nf(args)
    wl = args.word_length
    train = [(segment(tokenize(d.text), wl)[0], d.author_label) for d in load_corpus(args.train)]
    profile = build_profile(train, nf, args.n_words)
    if args.profile_out:
        profile.save(args.profile_out)
    items = []
    for d in load_corpus(args.test):
        seq = segment(tokenize(d.text), wl)[0]
        best, score = delta_attribute(profile, seq)
        item = {"source_id": d.source_id, "true": d.author_label, "predicted": best, "score": score,
                "top_k_hit": top_k_hit(profile, seq, d.author_label, args.top_k)}
        if args.threshold is not None:
            dec = delta_open_attribute(profile, seq, args.threshold)
            item["decision"] = dec if dec is not None else "Reject"
        items.append(item)
    if not items:
        raise DataError("empty test corpus")
    rep = build_report([i["true"] for i in items], [i["predicted"] for i in items],
                       [i["source_id"] for i in items], sorted(profile.authors))
    out = rep.to_dict()
    out["predictions"] = items
    out["n_words"] = len(profile.words)
    out["top_k"] = args.top_k
    out["top_k_accuracy"] = sum(i["top_k_hit"] for i in items) / len(items)
    _emit(out, args.out)


def cmd_experiment(args):
    if not args.config:
        raise UsageError("experiment needs --config")
    cfg = harness.ExperimentConfig.from_toml(args.config, output=args.output, seed=args.seed,
                                             kind=args.kind)
    results = harness.run_experiment(cfg)
    formats = ("csv", "json") if args.format == "both" else (args.format,)
    for path in harness.report_emit(results, cfg.output, formats, stem=cfg.kind):
        print(path, file=sys.stderr)


COMMANDS = {
    "build-dict": cmd_build_dict,
    "featurize": cmd_featurize,
    "train": cmd_train,
    "attribute": cmd_attribute,
    "open-attribute": cmd_open_attribute,
    "delta": cmd_delta,
    "experiment": cmd_experiment,
}


def _config_defaults(path: str, command: str) -> dict:
    """Top-level keys plus an optional ``[<command>]`` table; dashes become underscores."""
    from .harness import tomllib

    with open(path, "rb") as fh:
        data = tomllib.load(fh)
    table = {k: v for k, v in data.items() if not isinstance(v, dict)}
    table.update(data.get(command, {}))
    return {k.replace("-", "_"): v for k, v in table.items()}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.config and args.command != "experiment":
            # Config values become defaults, so explicit flags still win.
            sub = parser._subparsers._group_actions[0].choices[args.command]
            defaults = _config_defaults(args.config, args.command)
            known = {a.dest for a in sub._actions}
            sub.set_defaults(**{k: v for k, v in defaults.items() if k in known})
            args = parser.parse_args(argv)
        COMMANDS[args.command](args)
    except (UsageError, ValueError) as exc:
        print(f"nfzwda: error: {exc}", file=sys.stderr)
        return 1
    except (DataError, OSError) as exc:
        print(f"nfzwda: data error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
