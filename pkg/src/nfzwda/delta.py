"""Burrows's Delta over the most frequent dictionary words."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .errors import EmptyTraining, UnknownAuthor
from .nf_dict import NFDictionary
from .text_ingest import TokenSequence

DEFAULT_N_WORDS = 150


def word_frequencies(seq: TokenSequence, words: Sequence[str]) -> np.ndarray:
    counts = Counter(seq.tokens)
    return np.array([counts[w] for w in words], dtype=float) / seq.n


@dataclass
class DeltaProfile:
    words: list[str]
    mean: np.ndarray
    std: np.ndarray
    authors: dict[str, np.ndarray]

    def zscores(self, freqs: np.ndarray) -> np.ndarray:
        # Zero-variance words carry no information: z = 0 by convention.
        safe = np.where(self.std > 0, self.std, 1.0)
        return np.where(self.std > 0, (freqs - self.mean) / safe, 0.0)

    def text_z(self, seq: TokenSequence) -> np.ndarray:
        return self.zscores(word_frequencies(seq, self.words))

    def to_dict(self) -> dict:
        return {
            "words": self.words,
            "mean": self.mean.tolist(),
            "std": self.std.tolist(),
            "authors": {a: z.tolist() for a, z in sorted(self.authors.items())},
        }

    @classmethod
    def from_dict(cls, d: dict) -> DeltaProfile:
        return cls(
            list(d["words"]),
            np.asarray(d["mean"], dtype=float),
            np.asarray(d["std"], dtype=float),
            {a: np.asarray(z, dtype=float) for a, z in d["authors"].items()},
        )

    def save(self, path: str | Path) -> None:
        Path(path).write_text(json.dumps(self.to_dict(), indent=1) + "\n", encoding="utf-8")

    @classmethod
    def load(cls, path: str | Path) -> DeltaProfile:
        return cls.from_dict(json.loads(Path(path).read_text(encoding="utf-8")))


def build_profile(
    train: Sequence[tuple[TokenSequence, str]], nf: NFDictionary, n_words: int = DEFAULT_N_WORDS
) -> DeltaProfile:
    """Corpus norms use population statistics over the training texts only."""
    if not train:
        raise EmptyTraining("no training texts for Delta")
    words = nf.top_words(n_words)
    freqs = np.vstack([word_frequencies(seq, words) for seq, _ in train])
    profile = DeltaProfile(words, freqs.mean(axis=0), freqs.std(axis=0), {})
    z = profile.zscores(freqs)
    labels = np.array([lab for _, lab in train])
    for author in sorted(set(labels)):
        profile.authors[author] = z[labels == author].mean(axis=0)
    return profile


def delta_score(profile: DeltaProfile, seq: TokenSequence, author: str) -> float:
    if author not in profile.authors:
        raise UnknownAuthor(author)
    return float(np.mean(np.abs(profile.authors[author] - profile.text_z(seq))))


def delta_scores(profile: DeltaProfile, seq: TokenSequence) -> dict[str, float]:
    z = profile.text_z(seq)
    return {a: float(np.mean(np.abs(sig - z))) for a, sig in sorted(profile.authors.items())}


def ranked_authors(scores: dict[str, float]) -> list[str]:
    return sorted(scores, key=lambda a: (scores[a], a))


def delta_attribute(profile: DeltaProfile, seq: TokenSequence) -> tuple[str, float]:
    scores = delta_scores(profile, seq)
    best = ranked_authors(scores)[0]
    return best, scores[best]


def delta_open_attribute(profile: DeltaProfile, seq: TokenSequence, threshold: float) -> str | None:
    """Best author if its Delta is within ``threshold``, else None (reject)."""
    best, score = delta_attribute(profile, seq)
    return best if score <= threshold else None


def top_k_hit(profile: DeltaProfile, seq: TokenSequence, true_author: str, k: int) -> bool:
    return true_author in ranked_authors(delta_scores(profile, seq))[:k]
