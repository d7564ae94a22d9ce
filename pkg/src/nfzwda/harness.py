"""Experiment protocols: word-length, author-count, train/test-count and
feature-subset sweeps for the closed set, and long-text runs for the open set."""

from __future__ import annotations

import csv
import io
import json
import logging
import sys
from dataclasses import asdict, dataclass, field, fields
from pathlib import Path
from typing import Any

import numpy as np

from .attribution import BasicScheme, PipelineConfig, confidence_report, open_segments
from .classify import ClassifierConfig, train
from .delta import build_profile, delta_attribute, delta_scores, ranked_authors
from .errors import DataError, EmptyTraining
from .features import StyleVector
from .nf_dict import NFDictionary, build_dictionary, load_dictionary
from .partition import DEFAULT_SCHEMES, PartitionScheme
from .text_ingest import Document, TokenSequence, load_corpus, longest_documents, segment, tokenize

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = logging.getLogger(__name__)

NFZ_METHODS = {"full": "nfz-full", "ode_only": "nfz-ode", "odv_only": "nfz-odv"}

CLOSED_COLUMNS = [
    "word_length", "sweep", "point", "method", "reps", "n_authors", "n_train", "n_test", "accuracy",
]
OPEN_COLUMNS = [
    "word_length", "method", "subset_id", "true_author", "in_set", "segments",
    "decision", "max_confidence", "delta_score", "correct",
]


@dataclass
class ExperimentConfig:
    kind: str = "closed"
    train_root: str | None = None
    test_root: str | None = None
    in_set_root: str | None = None
    out_of_set_root: str | None = None
    dict_path: str | None = None
    permissive_dict: bool = False
    partition: str = "linear"
    L: int | None = None
    R: int | None = None
    r: float | None = None
    odv_mode: str = "variance"
    word_lengths: list[int] = field(default_factory=lambda: [1000])
    feature_sets: list[str] = field(default_factory=lambda: ["full", "ode_only", "odv_only"])
    author_sweep: list[list[int]] = field(default_factory=list)
    train_test_sweep: list[list[int]] | str = field(default_factory=list)
    delta_n_words: list[int] = field(default_factory=lambda: [150])
    delta_top_k: list[int] = field(default_factory=lambda: [1])
    delta_threshold: float | None = None
    theta: float = 0.5
    longest_chapters: int | None = None
    C: float = 1.0
    tol: float = 1e-3
    max_iter: int = 100_000
    seed: int = 42
    output: str = "results"

    def __post_init__(self):
        if self.kind not in ("closed", "open"):
            raise ValueError(f"kind must be 'closed' or 'open', got {self.kind!r}")
        for count, reps in self.author_sweep:
            if count < 2 or reps < 1:
                raise ValueError("author_sweep entries need count >= 2 and reps >= 1")
        if not self.word_lengths:
            raise ValueError("word_lengths must not be empty")

    @property
    def scheme(self) -> PartitionScheme:
        base = DEFAULT_SCHEMES[self.partition]
        return PartitionScheme(
            base.kind,
            L=self.L if self.L is not None else base.L,
            R=self.R if self.R is not None else base.R,
            r=self.r if self.r is not None else base.r,
        )

    def classifier(self, feature_set: str = "full") -> ClassifierConfig:
        return ClassifierConfig(C=self.C, tol=self.tol, max_iter=self.max_iter, seed=self.seed,
                                feature_set=feature_set)

    def to_dict(self) -> dict:
        # Where results go is not part of the experiment; leaving it out keeps
        # reports from different output directories byte-identical.
        d = asdict(self)
        d.pop("output")
        return d

    @classmethod
    def from_dict(cls, d: dict) -> ExperimentConfig:
        known = {f.name for f in fields(cls)}
        unknown = set(d) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**d)

    @classmethod
    def from_toml(cls, path: str | Path, **overrides: Any) -> ExperimentConfig:
        with open(path, "rb") as fh:
            d = tomllib.load(fh)
        d.update({k: v for k, v in overrides.items() if v is not None})
        return cls.from_dict(d)


def train_test_grid(max_train: int = 30, max_test: int = 30, step: int = 5) -> list[list[int]]:
    """(5,5), (5,10), ..., (30,30)."""
    return [[a, b] for a in range(step, max_train + 1, step) for b in range(step, max_test + 1, step)]


def _load_docs(root: str | None, what: str, longest: int | None) -> list[Document]:
    if not root:
        raise DataError(f"config is missing {what}")
    docs = load_corpus(root)
    if longest:
        docs = longest_documents(docs, longest)
    if not docs:
        raise DataError(f"{what} {root} contains no documents")
    return docs


def _dictionary(cfg: ExperimentConfig, train_docs: list[Document]) -> NFDictionary:
    if cfg.dict_path:
        return load_dictionary(cfg.dict_path, permissive=cfg.permissive_dict)
    logger.info("no dictionary given; counting the training corpus")
    return build_dictionary(train_docs, source="training corpus")


@dataclass
class _Sample:
    author: str
    seq: TokenSequence
    vector: StyleVector


class ClosedRunner:
    """Featurizes each document once per word length and evaluates methods on
    arbitrary subsets of the train/test samples."""

    def __init__(self, cfg: ExperimentConfig, nf: NFDictionary, train_docs, test_docs):
        self.cfg = cfg
        self.nf = nf
        self.train_docs = train_docs
        self.test_docs = test_docs
        self.authors = sorted({d.author_label for d in train_docs})
        missing = {d.author_label for d in test_docs} - set(self.authors)
        if missing:
            raise DataError(f"test authors without training data: {sorted(missing)}")
        self._tokens = {d.source_id: tokenize(d.text) for d in train_docs + test_docs}

    def samples(self, docs: list[Document], word_length: int) -> list[_Sample]:
        pipe = BasicScheme(self.nf, PipelineConfig(self.cfg.scheme, self.cfg.odv_mode, word_length))
        out = []
        for d in docs:
            seq = segment(self._tokens[d.source_id], word_length, "front")[0]
            out.append(_Sample(d.author_label, seq, pipe.vectorize(seq, d.source_id, d.author_label)))
        return out

    def evaluate(self, train_s: list[_Sample], test_s: list[_Sample]) -> dict[str, float]:
        cfg = self.cfg
        acc: dict[str, float] = {}
        truth = [s.author for s in test_s]
        for fs in cfg.feature_sets:
            model = train([(s.vector, s.author) for s in train_s], cfg.classifier(fs))
            preds = model.predict_many([s.vector for s in test_s])
            acc[NFZ_METHODS[fs]] = float(np.mean([p == t for p, t in zip(preds, truth)]))
        for n_words in cfg.delta_n_words:
            profile = build_profile([(s.seq, s.author) for s in train_s], self.nf, n_words)
            ranks = [ranked_authors(delta_scores(profile, s.seq)) for s in test_s]
            for k in cfg.delta_top_k:
                name = f"delta-{n_words}" if k == 1 else f"delta-{n_words}-top{k}"
                acc[name] = float(np.mean([t in r[:k] for r, t in zip(ranks, truth)]))
        return acc

    def run(self) -> tuple[list[dict], list[dict]]:
        cfg = self.cfg
        rows: list[dict] = []
        subsets_log: list[dict] = []
        grid = train_test_grid() if cfg.train_test_sweep == "grid" else cfg.train_test_sweep
        for wl in cfg.word_lengths:
            tr = self.samples(self.train_docs, wl)
            te = self.samples(self.test_docs, wl)
            rows += self._rows(wl, "all", "", 1, len(self.authors), len(tr), len(te), self.evaluate(tr, te))

            for count, reps in cfg.author_sweep:
                if count > len(self.authors):
                    logger.warning("skipping author count %d: only %d authors", count, len(self.authors))
                    continue
                rng = np.random.default_rng([cfg.seed, wl, count])
                totals: dict[str, float] = {}
                n_tr = n_te = 0
                for rep in range(reps):
                    chosen = sorted(rng.choice(self.authors, size=count, replace=False).tolist())
                    logger.info("word_length=%d authors=%d rep=%d subset=%s", wl, count, rep, chosen)
                    subsets_log.append({"word_length": wl, "count": count, "rep": rep, "authors": chosen})
                    sub_tr = [s for s in tr if s.author in chosen]
                    sub_te = [s for s in te if s.author in chosen]
                    n_tr, n_te = n_tr + len(sub_tr), n_te + len(sub_te)
                    for m, a in self.evaluate(sub_tr, sub_te).items():
                        totals[m] = totals.get(m, 0.0) + a
                means = {m: v / reps for m, v in totals.items()}
                rows += self._rows(wl, "authors", str(count), reps, count, n_tr / reps, n_te / reps, means)

            for n_train, n_test in grid:
                sub_tr = self._first_per_author(tr, n_train)
                sub_te = self._first_per_author(te, n_test)
                if sub_tr is None or sub_te is None:
                    logger.warning("skipping train/test point (%d, %d): corpus too small", n_train, n_test)
                    continue
                rows += self._rows(wl, "train_test", f"{n_train}/{n_test}", 1, len(self.authors),
                                   len(sub_tr), len(sub_te), self.evaluate(sub_tr, sub_te))
        return rows, subsets_log

    def _first_per_author(self, samples: list[_Sample], n: int) -> list[_Sample] | None:
        out = []
        for a in self.authors:
            mine = [s for s in samples if s.author == a]
            if len(mine) < n:
                return None
            out += mine[:n]
        return out

    @staticmethod
    def _rows(wl, sweep, point, reps, n_authors, n_train, n_test, accs) -> list[dict]:
        return [
            {"word_length": wl, "sweep": sweep, "point": point, "method": m, "reps": reps,
             "n_authors": n_authors, "n_train": n_train, "n_test": n_test, "accuracy": a}
            for m, a in accs.items()
        ]


def run_closed_experiment(cfg: ExperimentConfig) -> dict:
    train_docs = _load_docs(cfg.train_root, "train_root", cfg.longest_chapters)
    test_docs = _load_docs(cfg.test_root, "test_root", cfg.longest_chapters)
    nf = _dictionary(cfg, train_docs)
    rows, subsets = ClosedRunner(cfg, nf, train_docs, test_docs).run()
    return {"kind": "closed", "config": cfg.to_dict(), "columns": CLOSED_COLUMNS,
            "rows": rows, "subsets": subsets}


def rate(label: str, hits: int, total: int) -> str:
    """Rate string, e.g. ``Accepted: 93.33%(14/15)``."""
    pct = 100.0 * hits / total if total else 0.0
    text = f"{pct:.2f}".rstrip("0").rstrip(".")
    return f"{label}: {text}%({hits}/{total})"


def _open_summary(rows: list[dict]) -> list[dict]:
    out = []
    keys = sorted({(r["word_length"], r["method"]) for r in rows}, key=lambda t: (t[0], t[1]))
    for wl, method in keys:
        mine = [r for r in rows if r["word_length"] == wl and r["method"] == method]
        ins = [r for r in mine if r["in_set"]]
        outs = [r for r in mine if not r["in_set"]]
        acc_in = [r for r in ins if r["decision"] != "Reject"]
        rej_out = [r for r in outs if r["decision"] == "Reject"]
        correct = sum(1 for r in mine if r["correct"])
        out.append({
            "word_length": wl,
            "method": method,
            "accepted_in_set": rate("Accepted", len(acc_in), len(ins)),
            "rejected_out_of_set": rate("Rejected", len(rej_out), len(outs)),
            "attribution_accuracy": rate("Attribution Accuracy",
                                         sum(1 for r in acc_in if r["decision"] == r["true_author"]),
                                         len(acc_in)),
            "overall": rate("Accuracy", correct, len(mine)),
            "accepted_in_set_rate": len(acc_in) / len(ins) if ins else None,
            "rejected_out_of_set_rate": len(rej_out) / len(outs) if outs else None,
            "overall_accuracy": correct / len(mine),
        })
    return out


def run_open_experiment(cfg: ExperimentConfig) -> dict:
    train_docs = _load_docs(cfg.train_root, "train_root", cfg.longest_chapters)
    nf = _dictionary(cfg, train_docs)
    candidates = sorted({d.author_label for d in train_docs})
    long_texts: list[tuple[Document, bool]] = []
    if cfg.in_set_root:
        long_texts += [(d, True) for d in load_corpus(cfg.in_set_root)]
    if cfg.out_of_set_root:
        long_texts += [(d, False) for d in load_corpus(cfg.out_of_set_root)]
    if not long_texts:
        raise DataError("open experiment needs in_set_root and/or out_of_set_root documents")
    for d, in_set in long_texts:
        if in_set and d.author_label not in candidates:
            raise DataError(f"in-set text {d.source_id} has author outside the candidate set")
        if not in_set and d.author_label in candidates:
            raise DataError(f"out-of-set text {d.source_id} is labelled with a candidate author")

    rows: list[dict] = []
    reports: list[dict] = []
    tokens = {d.source_id: tokenize(d.text) for d, _ in long_texts}
    for wl in cfg.word_lengths:
        pipe = BasicScheme(nf, PipelineConfig(cfg.scheme, cfg.odv_mode, wl, cfg.classifier()))
        pipe.fit(train_docs)
        profiles = {}
        if cfg.delta_threshold is not None:
            train_seqs = [(segment(tokenize(d.text), wl, "front")[0], d.author_label) for d in train_docs]
            profiles = {n: build_profile(train_seqs, nf, n) for n in cfg.delta_n_words}
        for d, in_set in long_texts:
            segs = open_segments(tokens[d.source_id], wl)
            rep = confidence_report(pipe.predict_sequences(segs), pipe.labels, cfg.theta, d.source_id)
            decision = rep.decision if rep.decision is not None else "Reject"
            reports.append({"word_length": wl, "true_author": d.author_label, "in_set": in_set} | rep.to_dict())
            rows.append(_open_row(wl, "nfz", d, in_set, rep.segments, decision, rep.max_confidence, None))
            for n, prof in profiles.items():
                # Delta judges the long text as a whole: the same words the segments cover.
                joined = TokenSequence(tuple(t for s in segs for t in s.tokens))
                best, score = delta_attribute(prof, joined)
                dec = best if score <= cfg.delta_threshold else "Reject"
                rows.append(_open_row(wl, f"delta-{n}", d, in_set, len(segs), dec, None, score))
    return {"kind": "open", "config": cfg.to_dict(), "columns": OPEN_COLUMNS, "rows": rows,
            "summary": _open_summary(rows), "reports": reports}


def _open_row(wl, method, doc, in_set, segments, decision, max_conf, delta_score) -> dict:
    correct = decision == doc.author_label if in_set else decision == "Reject"
    return {"word_length": wl, "method": method, "subset_id": doc.source_id,
            "true_author": doc.author_label, "in_set": in_set, "segments": segments,
            "decision": decision, "max_confidence": max_conf, "delta_score": delta_score,
            "correct": correct}


def run_experiment(cfg: ExperimentConfig) -> dict:
    if cfg.kind == "closed":
        return run_closed_experiment(cfg)
    return run_open_experiment(cfg)


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def csv_text(results: dict) -> str:
    rows = results.get("rows") or []
    if not rows:
        raise EmptyTraining("no result rows to emit")
    buf = io.StringIO()
    buf.write(f"# nfzwda {results['kind']} experiment\n")
    buf.write("# config: " + json.dumps(results["config"], sort_keys=True) + "\n")
    w = csv.writer(buf, lineterminator="\n")
    cols = results["columns"]
    w.writerow(cols)
    for r in rows:
        w.writerow([_cell(r[c]) for c in cols])
    return buf.getvalue()


def json_text(results: dict) -> str:
    if not results.get("rows"):
        raise EmptyTraining("no result rows to emit")
    return json.dumps(results, sort_keys=True, indent=1) + "\n"


def report_emit(results: dict, out_dir: str | Path, formats: tuple[str, ...] = ("csv", "json"),
                stem: str = "results") -> list[Path]:
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for fmt in formats:
        text = {"csv": csv_text, "json": json_text}[fmt](results)
        path = out_dir / f"{stem}.{fmt}"
        path.write_text(text, encoding="utf-8")
        written.append(path)
    return written
