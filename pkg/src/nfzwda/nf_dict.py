"""Natural-frequency dictionary: word -> reference corpus count."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping

from .errors import DuplicateWord, EmptyCorpus, FormatError
from .text_ingest import Document, normalize_word, words


@dataclass(frozen=True)
class NFDictionary:
    entries: Mapping[str, int]
    source: str = ""
    f_max: int = field(init=False)

    def __post_init__(self):
        entries = dict(self.entries)
        for w, c in entries.items():
            if not w or c < 0:
                raise ValueError(f"bad dictionary entry {w!r}: {c}")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "f_max", max(entries.values(), default=0))

    def lookup(self, word: str) -> int:
        return self.entries.get(word, 0)

    def __len__(self):
        return len(self.entries)

    def __contains__(self, word):
        return word in self.entries

    def ranked(self) -> list[tuple[str, int]]:
        return sorted(self.entries.items(), key=lambda kv: (-kv[1], kv[0]))

    def top_words(self, count: int) -> list[str]:
        if count < 1:
            raise ValueError("count must be >= 1")
        return [w for w, _ in self.ranked()[:count]]


def lookup(d: NFDictionary, word: str) -> int:
    return d.lookup(word)


def top_words(d: NFDictionary, count: int) -> list[str]:
    return d.top_words(count)


def build_dictionary(docs: Iterable[Document], source: str = "") -> NFDictionary:
    counts: Counter[str] = Counter()
    for doc in docs:
        counts.update(words(doc.text))
    if not counts:
        raise EmptyCorpus("no words in any document")
    return NFDictionary(dict(counts), source=source)


def save_dictionary(d: NFDictionary, path: str | Path) -> None:
    lines = [f"{w}\t{c}\n" for w, c in d.ranked()]
    Path(path).write_text("".join(lines), encoding="utf-8")


def load_dictionary(path: str | Path, permissive: bool = False) -> NFDictionary:
    """Read a ``word<TAB>count`` file.

    The canonical file is sorted by descending count then word; ``permissive``
    accepts any line order (for converted third-party frequency lists).
    Words are lowercased on load so lookups match tokenizer output.
    """
    path = Path(path)
    entries: dict[str, int] = {}
    prev = None
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.rstrip("\r\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise FormatError(path, lineno, "expected word<TAB>count")
            word, count_s = normalize_word(parts[0].strip()), parts[1].strip()
            try:
                count = int(count_s)
            except ValueError:
                raise FormatError(path, lineno, f"count is not an integer: {count_s!r}") from None
            if not word or count < 0:
                raise FormatError(path, lineno, "empty word or negative count")
            if word in entries:
                raise DuplicateWord(path, lineno, f"duplicate word {word!r}")
            key = (-count, word)
            if not permissive and prev is not None and key < prev:
                raise FormatError(path, lineno, "lines not sorted by descending count")
            prev = key
            entries[word] = count
    return NFDictionary(entries, source=str(path))
