"""Linear soft-margin SVM (one-vs-one) over sparse style vectors.

The binary solver is a plain SMO on the dual with second-order working-set
selection; with a linear kernel the Gram matrix of each label pair is small
enough to precompute.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from itertools import combinations
from pathlib import Path
from typing import Protocol, Sequence

import numpy as np

from .errors import ConfigMismatch, EmptyTraining, MixedConfig, SingleClass
from .features import StyleVector
from .partition import PartitionScheme

FEATURE_SETS = ("full", "ode_only", "odv_only")
_TAU = 1e-12


@dataclass(frozen=True)
class ClassifierConfig:
    C: float = 1.0
    tol: float = 1e-3
    max_iter: int = 100_000
    # The solver has no random choices; the seed is carried so that a saved
    # model records the full run configuration.
    seed: int = 42
    feature_set: str = "full"

    def __post_init__(self):
        if self.feature_set not in FEATURE_SETS:
            raise ValueError(f"unknown feature set {self.feature_set!r}")
        if self.C <= 0 or self.tol <= 0 or self.max_iter < 1:
            raise ValueError("C, tol must be > 0 and max_iter >= 1")


def _kinds(feature_set: str) -> tuple[int, ...]:
    return {"full": (0, 1), "ode_only": (0,), "odv_only": (1,)}[feature_set]


def check_uniform(vectors: Sequence[StyleVector]) -> tuple[PartitionScheme, str]:
    cfg = vectors[0].config
    for v in vectors[1:]:
        if v.config != cfg:
            raise MixedConfig(f"{v.source_id or 'vector'} uses {v.config}, expected {cfg}")
    return cfg


@dataclass
class ScalingParams:
    """Per-column min/max; a column is a (zone, kind) with kind 0=alpha, 1=gamma."""

    columns: list[tuple[int, int]]
    lo: np.ndarray
    hi: np.ndarray
    odv_mode: str

    @property
    def dimension(self) -> int:
        return len(self.columns)

    def raw(self, v: StyleVector) -> np.ndarray:
        out = np.empty(len(self.columns))
        for c, (k, kind) in enumerate(self.columns):
            out[c] = v.value(k)[kind]
        return out

    def apply(self, x: np.ndarray) -> np.ndarray:
        span = self.hi - self.lo
        flat = span == 0
        scaled = (x - self.lo) / np.where(flat, 1.0, span)
        scaled = np.where(flat, 0.5, scaled)
        return np.clip(scaled, 0.0, 1.0)

    def transform(self, vectors: Sequence[StyleVector]) -> np.ndarray:
        if not vectors:
            return np.empty((0, self.dimension))
        return self.apply(np.vstack([self.raw(v) for v in vectors]))

    def to_dict(self) -> dict:
        return {
            "columns": [list(c) for c in self.columns],
            "lo": self.lo.tolist(),
            "hi": self.hi.tolist(),
            "odv_mode": self.odv_mode,
        }

    @classmethod
    def from_dict(cls, d: dict) -> ScalingParams:
        return cls(
            [tuple(c) for c in d["columns"]],
            np.asarray(d["lo"], dtype=float),
            np.asarray(d["hi"], dtype=float),
            d["odv_mode"],
        )


def fit_scaling(train: Sequence[StyleVector], feature_set: str = "full") -> ScalingParams:
    if not train:
        raise EmptyTraining("no training vectors")
    _, mode = check_uniform(train)
    zones = sorted(set().union(*(v.features.keys() for v in train)))
    columns = [(k, kind) for k in zones for kind in _kinds(feature_set)]
    raw = ScalingParams(columns, np.zeros(0), np.zeros(0), mode)
    x = np.vstack([raw.raw(v) for v in train]) if columns else np.zeros((len(train), 0))
    return ScalingParams(columns, x.min(axis=0), x.max(axis=0), mode)


def smo(
    K: np.ndarray, y: np.ndarray, C: float, tol: float, max_iter: int
) -> tuple[np.ndarray, float, int]:
    """Solve the soft-margin dual for labels ``y`` in {+1, -1}.

    Returns (dual coefficients, rho, iterations); the decision function is
    ``sum_i a_i y_i K(x_i, x) - rho``.
    """
    n = len(y)
    alpha = np.zeros(n)
    grad = -np.ones(n)
    diag = np.diag(K).copy()
    it = 0
    while it < max_iter:
        yg = -y * grad
        up = ((y > 0) & (alpha < C)) | ((y < 0) & (alpha > 0))
        low = ((y < 0) & (alpha < C)) | ((y > 0) & (alpha > 0))
        if not up.any() or not low.any():
            break
        i = int(np.flatnonzero(up)[np.argmax(yg[up])])
        g_max = yg[i]
        g_min = yg[low].min()
        if g_max - g_min < tol:
            break
        cand = low & (yg < g_max)
        b = g_max - yg[cand]
        a = diag[i] + diag[cand] - 2.0 * K[i, cand]
        a = np.where(a > 0, a, _TAU)
        j = int(np.flatnonzero(cand)[np.argmin(-(b * b) / a)])

        old_i, old_j = alpha[i], alpha[j]
        quad = diag[i] + diag[j] - 2.0 * K[i, j]
        if quad <= 0:
            quad = _TAU
        if y[i] != y[j]:
            delta = (-grad[i] - grad[j]) / quad
            diff = alpha[i] - alpha[j]
            alpha[i] += delta
            alpha[j] += delta
            if diff > 0:
                if alpha[j] < 0:
                    alpha[j], alpha[i] = 0.0, diff
            elif alpha[i] < 0:
                alpha[i], alpha[j] = 0.0, -diff
            if diff > 0:
                if alpha[i] > C:
                    alpha[i], alpha[j] = C, C - diff
            elif alpha[j] > C:
                alpha[j], alpha[i] = C, C + diff
        else:
            delta = (grad[i] - grad[j]) / quad
            total = alpha[i] + alpha[j]
            alpha[i] -= delta
            alpha[j] += delta
            if total > C:
                if alpha[i] > C:
                    alpha[i], alpha[j] = C, total - C
            elif alpha[j] < 0:
                alpha[j], alpha[i] = 0.0, total
            if total > C:
                if alpha[j] > C:
                    alpha[j], alpha[i] = C, total - C
            elif alpha[i] < 0:
                alpha[i], alpha[j] = 0.0, total

        di, dj = alpha[i] - old_i, alpha[j] - old_j
        grad += y * (y[i] * di * K[i] + y[j] * dj * K[j])
        it += 1

    yg = y * grad
    at_upper = alpha >= C
    at_lower = alpha <= 0
    free = ~at_upper & ~at_lower
    if free.any():
        rho = float(yg[free].mean())
    else:
        ub_mask = (at_upper & (y < 0)) | (at_lower & (y > 0))
        lb_mask = (at_upper & (y > 0)) | (at_lower & (y < 0))
        ub = yg[ub_mask].min() if ub_mask.any() else np.inf
        lb = yg[lb_mask].max() if lb_mask.any() else -np.inf
        rho = float((ub + lb) / 2)
    return alpha, rho, it


@dataclass
class PairModel:
    first: int
    second: int
    w: np.ndarray
    rho: float
    iterations: int = 0

    def decision(self, x: np.ndarray) -> float:
        return float(x @ self.w) - self.rho


class AttributionModel(Protocol):
    labels: list[str]

    def predict(self, v: StyleVector) -> str: ...


@dataclass
class ClassifierModel:
    labels: list[str]
    scaling: ScalingParams
    pairs: list[PairModel]
    config: ClassifierConfig
    scheme: PartitionScheme
    odv_mode: str
    extra: dict = field(default_factory=dict)

    def _check(self, v: StyleVector):
        if v.config != (self.scheme, self.odv_mode):
            raise ConfigMismatch(
                f"vector built with {v.scheme}/{v.odv_mode}, model expects {self.scheme}/{self.odv_mode}"
            )

    def votes(self, v: StyleVector) -> list[int]:
        self._check(v)
        x = self.scaling.transform([v])[0]
        return self._votes(x)

    def _votes(self, x: np.ndarray) -> list[int]:
        votes = [0] * len(self.labels)
        for p in self.pairs:
            # A zero decision value goes to the earlier label.
            votes[p.first if p.decision(x) >= 0 else p.second] += 1
        return votes

    def predict(self, v: StyleVector) -> str:
        votes = self.votes(v)
        # max() returns the first maximum, i.e. the smallest label on ties.
        return self.labels[max(range(len(votes)), key=votes.__getitem__)]

    def predict_many(self, vectors: Sequence[StyleVector]) -> list[str]:
        return [self.predict(v) for v in vectors]

    def to_dict(self) -> dict:
        return {
            "labels": self.labels,
            "scheme": self.scheme.params(),
            "odv_mode": self.odv_mode,
            "scaling": self.scaling.to_dict(),
            "dimension_map": {str(k): [c for c, col in enumerate(self.scaling.columns) if col[0] == k]
                              for k in sorted({col[0] for col in self.scaling.columns})},
            "pairs": [
                {"first": p.first, "second": p.second, "w": p.w.tolist(), "rho": p.rho, "iterations": p.iterations}
                for p in self.pairs
            ],
            "config": asdict(self.config),
            "extra": self.extra,
        }

    @classmethod
    def from_dict(cls, d: dict) -> ClassifierModel:
        return cls(
            labels=list(d["labels"]),
            scaling=ScalingParams.from_dict(d["scaling"]),
            pairs=[
                PairModel(p["first"], p["second"], np.asarray(p["w"], dtype=float), float(p["rho"]), p.get("iterations", 0))
                for p in d["pairs"]
            ],
            config=ClassifierConfig(**d["config"]),
            scheme=PartitionScheme.from_params(d["scheme"]),
            odv_mode=d["odv_mode"],
            extra=d.get("extra", {}),
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> ClassifierModel:
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def train(
    samples: Sequence[tuple[StyleVector, str]], config: ClassifierConfig | None = None
) -> ClassifierModel:
    config = config or ClassifierConfig()
    if not samples:
        raise EmptyTraining("no training samples")
    vectors = [v for v, _ in samples]
    scheme, mode = check_uniform(vectors)
    labels = sorted(set(lab for _, lab in samples))
    if len(labels) < 2:
        raise SingleClass(f"need at least two authors, got {labels}")
    scaling = fit_scaling(vectors, config.feature_set)
    X = scaling.transform(vectors)
    y_all = np.array([labels.index(lab) for _, lab in samples])

    pairs = []
    for a, b in combinations(range(len(labels)), 2):
        idx = np.flatnonzero((y_all == a) | (y_all == b))
        Xp = X[idx]
        y = np.where(y_all[idx] == a, 1.0, -1.0)
        alpha, rho, it = smo(Xp @ Xp.T, y, config.C, config.tol, config.max_iter)
        w = (alpha * y) @ Xp
        pairs.append(PairModel(a, b, w, rho, it))
    return ClassifierModel(labels, scaling, pairs, config, scheme, mode)


def predict(model: AttributionModel, v: StyleVector) -> str:
    return model.predict(v)


@dataclass
class AttributionReport:
    """Per-sample attributions plus confusion matrix (rows true, columns attributed)."""

    labels: list[str]
    items: list[dict]
    confusion: np.ndarray

    @property
    def total(self) -> int:
        return len(self.items)

    @property
    def correct(self) -> int:
        return sum(1 for it in self.items if it["true"] == it["predicted"])

    @property
    def accuracy(self) -> float:
        return self.correct / self.total

    def row_proportions(self) -> np.ndarray:
        sums = self.confusion.sum(axis=1, keepdims=True)
        return np.divide(self.confusion, sums, out=np.zeros(self.confusion.shape), where=sums > 0)

    def to_dict(self) -> dict:
        return {
            "labels": self.labels,
            "accuracy": self.accuracy,
            "correct": self.correct,
            "total": self.total,
            "confusion": self.confusion.tolist(),
            "predictions": self.items,
        }


def build_report(truth: Sequence[str], predicted: Sequence[str], ids: Sequence[str] | None = None,
                 labels: Sequence[str] | None = None) -> AttributionReport:
    if not truth:
        raise EmptyTraining("empty test set")
    labels = sorted(set(labels or []) | set(truth) | set(predicted))
    pos = {lab: i for i, lab in enumerate(labels)}
    cm = np.zeros((len(labels), len(labels)), dtype=int)
    ids = ids or [str(i) for i in range(len(truth))]
    items = []
    for sid, t, p in zip(ids, truth, predicted):
        cm[pos[t], pos[p]] += 1
        items.append({"source_id": sid, "true": t, "predicted": p})
    return AttributionReport(labels, items, cm)


def evaluate(model: ClassifierModel, test: Sequence[tuple[StyleVector, str]]) -> AttributionReport:
    if not test:
        raise EmptyTraining("empty test set")
    preds = model.predict_many([v for v, _ in test])
    return build_report([lab for _, lab in test], preds, [v.source_id for v, _ in test], model.labels)
