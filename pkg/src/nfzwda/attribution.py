"""Closed-set pipeline and the open-set scheme built on top of it."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Sequence

from .classify import AttributionReport, ClassifierConfig, ClassifierModel, build_report, train
from .errors import EmptyTraining, NoSegments
from .features import StyleVector, style_vector
from .nf_dict import NFDictionary
from .partition import DEFAULT_SCHEMES, PartitionScheme
from .text_ingest import Document, TokenSequence, segment, tokenize

DEFAULT_THETA = 0.5
REJECT = "Reject"


@dataclass(frozen=True)
class PipelineConfig:
    scheme: PartitionScheme = DEFAULT_SCHEMES["linear"]
    odv_mode: str = "variance"
    word_length: int | None = 1000
    classifier: ClassifierConfig = field(default_factory=ClassifierConfig)


def front_sample(doc: Document | TokenSequence, word_length: int | None) -> TokenSequence:
    seq = doc if isinstance(doc, TokenSequence) else tokenize(doc.text)
    if word_length is None:
        return seq
    return segment(seq, word_length, "front")[0]


class BasicScheme:
    """Featurize -> scale -> one-vs-one linear SVM, trained once and reused."""

    def __init__(self, nf: NFDictionary, config: PipelineConfig | None = None):
        self.nf = nf
        self.config = config or PipelineConfig()
        self.model: ClassifierModel | None = None

    def vectorize(self, seq: TokenSequence, source_id: str = "", author: str | None = None) -> StyleVector:
        c = self.config
        return style_vector(seq, self.nf, c.scheme, c.odv_mode, source_id, author)

    def sample_vector(self, doc: Document) -> StyleVector:
        return self.vectorize(front_sample(doc, self.config.word_length), doc.source_id, doc.author_label)

    def fit(self, docs: Sequence[Document]) -> BasicScheme:
        if not docs:
            raise EmptyTraining("no training documents")
        vecs = [self.sample_vector(d) for d in docs]
        self.fit_vectors(vecs)
        return self

    def fit_vectors(self, vecs: Sequence[StyleVector]) -> BasicScheme:
        self.model = train([(v, v.author_label) for v in vecs], self.config.classifier)
        return self

    @property
    def labels(self) -> list[str]:
        return self.model.labels

    def predict_sequences(self, seqs: Sequence[TokenSequence]) -> list[str]:
        return self.model.predict_many([self.vectorize(s) for s in seqs])

    def attribute(self, docs: Sequence[Document]) -> AttributionReport:
        if not docs:
            raise EmptyTraining("empty test set")
        vecs = [self.sample_vector(d) for d in docs]
        preds = self.model.predict_many(vecs)
        truth = [d.author_label if d.author_label is not None else "" for d in docs]
        return build_report(truth, preds, [d.source_id for d in docs], self.labels)


def basic_attribute(
    train_docs: Sequence[Document],
    test_docs: Sequence[Document],
    nf: NFDictionary,
    config: PipelineConfig | None = None,
) -> AttributionReport:
    scheme = BasicScheme(nf, config).fit(train_docs)
    return scheme.attribute(test_docs)


def confidence(p: float, set_size: int) -> float:
    """Excess of proportion ``p`` over the random baseline, scaled so p=1 gives 1."""
    if set_size < 2:
        raise ValueError("candidate set needs at least two authors")
    if not 0.0 <= p <= 1.0:
        raise ValueError("proportion must lie in [0, 1]")
    base = 1.0 / set_size
    return (p - base) / (1.0 - base)


def decide(confidences: Mapping[str, float], theta: float = DEFAULT_THETA) -> str | None:
    """The single label reaching ``theta``; None when no label or several do."""
    qualified = [a for a, f in confidences.items() if f >= theta]
    return qualified[0] if len(qualified) == 1 else None


@dataclass
class CandidateScore:
    label: str
    attributed_count: int
    proportion: float
    confidence: float


@dataclass
class ConfidenceReport:
    subset_id: str
    segments: int
    theta: float
    candidates: list[CandidateScore]
    decision: str | None

    @property
    def max_confidence(self) -> float:
        return max(c.confidence for c in self.candidates)

    @property
    def accepted(self) -> bool:
        return self.decision is not None

    def to_dict(self) -> dict:
        return {
            "subset_id": self.subset_id,
            "segments": self.segments,
            "theta": self.theta,
            "candidates": [
                {
                    "label": c.label,
                    "attributed_count": c.attributed_count,
                    "proportion": c.proportion,
                    "confidence": c.confidence,
                }
                for c in self.candidates
            ],
            "decision": REJECT if self.decision is None else self.decision,
            "max_confidence": self.max_confidence,
        }


def confidence_report(
    attributions: Sequence[str] | Mapping[str, int],
    labels: Sequence[str],
    theta: float = DEFAULT_THETA,
    subset_id: str = "",
) -> ConfidenceReport:
    """Build a report from per-segment attributions (or ready-made counts)."""
    if not 0 < theta <= 1:
        raise ValueError("theta must lie in (0, 1]")
    if isinstance(attributions, Mapping):
        counts = {lab: int(attributions.get(lab, 0)) for lab in labels}
    else:
        counts = {lab: 0 for lab in labels}
        for a in attributions:
            counts[a] += 1
    total = sum(counts.values())
    if total == 0:
        raise NoSegments(f"{subset_id or 'text'} has no attributed segments")
    cands = []
    for lab in labels:
        p = counts[lab] / total
        cands.append(CandidateScore(lab, counts[lab], p, confidence(p, len(labels))))
    decision = decide({c.label: c.confidence for c in cands}, theta)
    return ConfidenceReport(subset_id, total, theta, cands, decision)


def open_segments(long_text: Document | TokenSequence, word_length: int) -> list[TokenSequence]:
    seq = long_text if isinstance(long_text, TokenSequence) else tokenize(long_text.text)
    segs = segment(seq, word_length, "chunks")
    if not segs:
        raise NoSegments("text yields no segments")
    return segs


def open_attribute(
    long_text: Document | TokenSequence,
    scheme: BasicScheme,
    word_length: int,
    theta: float = DEFAULT_THETA,
    subset_id: str | None = None,
) -> ConfidenceReport:
    """Split a long text into samples, attribute each, and accept or reject."""
    segs = open_segments(long_text, word_length)
    if subset_id is None:
        subset_id = getattr(long_text, "source_id", "")
    preds = scheme.predict_sequences(segs)
    return confidence_report(preds, scheme.labels, theta, subset_id)
