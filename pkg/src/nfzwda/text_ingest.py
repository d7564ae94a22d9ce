"""Turn raw text into ordered word occurrences with normalized positions."""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import EmptyText, MissingRoot, UnreadableFile

logger = logging.getLogger(__name__)

# A word is a maximal run of letters, optionally joined by apostrophes
# ("don't", "o'clock"). Digits, underscores, hyphens and punctuation separate.
_LETTERS = r"[^\W\d_]+"
WORD_RE = re.compile(rf"{_LETTERS}(?:['’]{_LETTERS})*")


@dataclass(frozen=True)
class TokenSequence:
    tokens: tuple[str, ...]
    positions: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not self.tokens:
            raise EmptyText("a token sequence needs at least one word")
        n = len(self.tokens)
        object.__setattr__(self, "tokens", tuple(self.tokens))
        object.__setattr__(self, "positions", tuple(i / n for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.tokens)

    def __len__(self):
        return len(self.tokens)


@dataclass(frozen=True)
class Document:
    source_id: str
    text: str
    author_label: str | None = None

    def __post_init__(self):
        if not self.source_id:
            raise ValueError("source_id must be nonempty")


def normalize_word(word: str) -> str:
    return word.lower()


def words(text: str) -> list[str]:
    """Lowercased words of ``text`` in order; may be empty."""
    # Lowercase first so that re-tokenizing the joined output is a no-op.
    return WORD_RE.findall(normalize_word(text))


def tokenize(text: str) -> TokenSequence:
    toks = words(text)
    if not toks:
        raise EmptyText("no words found in text")
    return TokenSequence(tuple(toks))


def segment(seq: TokenSequence, word_length: int, mode: str = "front") -> list[TokenSequence]:
    """Cut ``seq`` into samples of ``word_length`` words.

    ``front`` keeps only the leading ``word_length`` words (or the whole text if
    it is shorter). ``chunks`` returns every complete consecutive block and drops
    the remainder; a text shorter than one block is returned whole. Each
    returned segment has positions renormalized over its own length.
    """
    if word_length < 1:
        raise ValueError("word_length must be >= 1")
    toks = seq.tokens
    if mode == "front":
        return [TokenSequence(toks[:word_length])]
    if mode == "chunks":
        if seq.n < word_length:
            return [TokenSequence(toks)]
        return [
            TokenSequence(toks[i : i + word_length])
            for i in range(0, seq.n - word_length + 1, word_length)
        ]
    raise ValueError(f"unknown segment mode {mode!r}")


@dataclass
class CorpusLoad:
    documents: list[Document]
    errors: list[UnreadableFile]


def load_corpus_report(root: str | Path, pattern: str = "*.txt") -> CorpusLoad:
    """Read ``<root>/<author>/<doc>.txt``; unreadable files are collected, not raised."""
    root = Path(root)
    if not root.is_dir():
        raise MissingRoot(f"corpus root not found: {root}")
    docs: list[Document] = []
    errors: list[UnreadableFile] = []
    for author_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        for path in sorted(author_dir.glob(pattern)):
            if not path.is_file():
                continue
            rel = path.relative_to(root).as_posix()
            try:
                text = path.read_text(encoding="utf-8")
            except (UnicodeDecodeError, OSError) as exc:
                err = UnreadableFile(rel, str(exc))
                logger.warning("skipping %s", err)
                errors.append(err)
                continue
            docs.append(Document(source_id=rel, text=text, author_label=author_dir.name))
    return CorpusLoad(docs, errors)


def load_corpus(root: str | Path) -> list[Document]:
    return load_corpus_report(root).documents


def longest_documents(docs: list[Document], count: int) -> list[Document]:
    """Keep the ``count`` longest documents (by word count) per author.

    Ties go to the lexicographically smaller source_id; the returned list keeps
    the input order.
    """
    by_author: dict[str | None, list[tuple[int, str]]] = {}
    for d in docs:
        by_author.setdefault(d.author_label, []).append((len(words(d.text)), d.source_id))
    keep = set()
    for items in by_author.values():
        items.sort(key=lambda t: (-t[0], t[1]))
        keep.update(sid for _, sid in items[:count])
    return [d for d in docs if d.source_id in keep]
