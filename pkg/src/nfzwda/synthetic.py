"""Synthetic authors with controllable vocabulary overlap.

A world has a shared pool of very frequent words and several disjoint bands of
rarer words; every pool occupies its own NF range, so pools never share a zone.
An author is a mixture over pools with a private Zipf preference order inside
each pool, optionally with bursty repetition.
"""

from __future__ import annotations

import string
import zlib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np

from .nf_dict import NFDictionary
from .text_ingest import Document

SHARED = "shared"


def pseudo_word(i: int, width: int = 4) -> str:
    letters = string.ascii_lowercase
    out = []
    for _ in range(width):
        i, rem = divmod(i, 26)
        out.append(letters[rem])
    return "".join(reversed(out))


@dataclass
class SyntheticWorld:
    n_bands: int = 4
    band_size: int = 30
    shared_size: int = 40
    pools: dict[str, list[str]] = field(init=False)
    nf: NFDictionary = field(init=False)

    def __post_init__(self):
        counter = iter(range(10**6))
        self.pools = {SHARED: [pseudo_word(next(counter)) for _ in range(self.shared_size)]}
        for b in range(self.n_bands):
            self.pools[f"band{b}"] = [pseudo_word(next(counter)) for _ in range(self.band_size)]
        entries = {}
        # Shared words sit far above every band; band b spans
        # [(b+1)*100000 - band_size*1000, (b+1)*100000), highest band first in rank.
        for j, w in enumerate(self.pools[SHARED]):
            entries[w] = 10_000_000 - j * 50_000
        for b in range(self.n_bands):
            top = (b + 1) * 100_000
            for j, w in enumerate(self.pools[f"band{b}"]):
                entries[w] = top - (j + 1) * 1000
        self.nf = NFDictionary(entries, source="synthetic")

    def band(self, b: int) -> str:
        return f"band{b}"


@dataclass
class SyntheticAuthor:
    name: str
    mixture: Mapping[str, float]
    seed: int = 0
    zipf: float = 1.1
    # Zipf exponent inside the non-shared pools; defaults to ``zipf``.
    band_zipf: float | None = None
    burst: float = 0.0
    burst_window: int = 15
    # When set, the preference order inside the shared pool comes from this
    # seed instead of the author's own, so several authors can share it.
    shared_seed: int | None = None

    def distribution(self, world: SyntheticWorld) -> tuple[list[str], np.ndarray]:
        vocab: list[str] = []
        probs: list[float] = []
        for pool, weight in sorted(self.mixture.items()):
            if weight <= 0:
                continue
            seed = self.shared_seed if pool == SHARED and self.shared_seed is not None else self.seed
            rng = np.random.default_rng([seed, zlib.crc32(pool.encode())])
            words = list(world.pools[pool])
            order = rng.permutation(len(words))
            z = self.zipf if pool == SHARED or self.band_zipf is None else self.band_zipf
            ranks = np.arange(1, len(words) + 1, dtype=float) ** -z
            ranks /= ranks.sum()
            for r, idx in enumerate(order):
                vocab.append(words[idx])
                probs.append(weight * ranks[r])
        p = np.asarray(probs)
        return vocab, p / p.sum()


def generate_tokens(world: SyntheticWorld, author: SyntheticAuthor, n: int,
                    rng: np.random.Generator) -> list[str]:
    vocab, p = author.distribution(world)
    draws = rng.choice(len(vocab), size=n, p=p)
    out: list[str] = []
    for i in range(n):
        if author.burst > 0 and out and rng.random() < author.burst:
            lo = max(0, len(out) - author.burst_window)
            out.append(out[int(rng.integers(lo, len(out)))])
        else:
            out.append(vocab[draws[i]])
    return out


def make_documents(world: SyntheticWorld, author: SyntheticAuthor, count: int, n_words: int,
                   rng: np.random.Generator, prefix: str = "doc") -> list[Document]:
    docs = []
    for i in range(count):
        text = " ".join(generate_tokens(world, author, n_words, rng))
        docs.append(Document(f"{author.name}/{prefix}{i:03d}.txt", text, author.name))
    return docs


def disjoint_authors(world: SyntheticWorld, count: int, seed: int = 0) -> list[SyntheticAuthor]:
    """Author i writes only band i words."""
    return [SyntheticAuthor(f"A{i}", {world.band(i): 1.0}, seed=seed + i) for i in range(count)]


def overlap_authors(world: SyntheticWorld, count: int, shared: float = 0.9,
                    seed: int = 0) -> list[SyntheticAuthor]:
    """Identical shared-pool habits; the remaining mass goes to a private band."""
    return [
        SyntheticAuthor(f"A{i}", {SHARED: shared, world.band(i): 1.0 - shared}, seed=seed + i,
                        shared_seed=seed)
        for i in range(count)
    ]


def blended_outsider(world: SyntheticWorld, candidates: int, shared: float = 0.9,
                     seed: int = 99, name: str = "X0", shared_seed: int = 0) -> SyntheticAuthor:
    """An author outside the candidate set: same shared-pool habits as the
    candidates, private mass spread evenly (no word preference) over every
    candidate's band."""
    rest = (1.0 - shared) / candidates
    mix = {SHARED: shared} | {world.band(i): rest for i in range(candidates)}
    return SyntheticAuthor(name, mix, seed=seed, band_zipf=0.0, shared_seed=shared_seed)


def write_corpus(root: str | Path, docs: list[Document]) -> Path:
    root = Path(root)
    for d in docs:
        path = root / d.source_id
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(d.text + "\n", encoding="utf-8")
    return root
