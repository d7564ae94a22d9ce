import pytest
from hypothesis import given, strategies as st

from nfzwda.errors import EmptyText, MissingRoot
from nfzwda.text_ingest import (
    Document,
    TokenSequence,
    load_corpus,
    load_corpus_report,
    longest_documents,
    segment,
    tokenize,
)


def test_tokenize_basic():
    seq = tokenize("A B, a!")
    assert seq.tokens == ("a", "b", "a")
    assert seq.n == 3
    assert seq.positions == pytest.approx([0, 1 / 3, 2 / 3], abs=1e-12)


def test_tokenize_single_word():
    seq = tokenize("word")
    assert seq.tokens == ("word",)
    assert seq.positions == (0.0,)


@pytest.mark.parametrize("text", ["", "   ", "123 -- 456!", "___"])
def test_tokenize_empty(text):
    with pytest.raises(EmptyText):
        tokenize(text)


def test_tokenize_rules():
    assert tokenize("Don't stop-over at 5pm; o’clock").tokens == (
        "don't", "stop", "over", "at", "pm", "o’clock")
    assert tokenize("Ünïcödé ÉTÉ naïve").tokens == ("ünïcödé", "été", "naïve")
    # Dangling apostrophes are separators.
    assert tokenize("'quoted' dogs'").tokens == ("quoted", "dogs")


@given(st.text(max_size=200))
def test_tokenize_properties(text):
    try:
        seq = tokenize(text)
    except EmptyText:
        return
    n = seq.n
    assert len(seq.positions) == n >= 1
    for i, p in enumerate(seq.positions):
        assert abs(p - i / n) <= 1e-12
    assert all(b > a for a, b in zip(seq.positions, seq.positions[1:]))
    assert seq.positions[-1] < 1
    for tok in seq.tokens:
        assert tok and not any(c.isspace() for c in tok)
    # Idempotent on its own joined output.
    assert tokenize(" ".join(seq.tokens)).tokens == seq.tokens


def _seq(n):
    return TokenSequence(tuple(f"w{'a' * (i % 3 + 1)}" for i in range(n)))


def test_segment_front():
    (s,) = segment(_seq(2500), 1000, "front")
    assert s.n == 1000
    assert s.positions[1] == pytest.approx(1 / 1000)


def test_segment_front_short_text_whole():
    (s,) = segment(_seq(500), 1000, "front")
    assert s.n == 500


def test_segment_chunks():
    segs = segment(_seq(3200), 1000, "chunks")
    assert [s.n for s in segs] == [1000, 1000, 1000]
    assert segment(_seq(300), 1000, "chunks")[0].n == 300


@given(st.integers(1, 300), st.integers(1, 80))
def test_segment_chunks_are_disjoint_ordered_spans(n, w):
    seq = TokenSequence(tuple(f"t{chr(97 + i % 26)}{chr(97 + i // 26 % 26)}" for i in range(n)))
    segs = segment(seq, w, "chunks")
    joined = [t for s in segs for t in s.tokens]
    assert joined == list(seq.tokens[: len(joined)])
    if n >= w:
        assert len(segs) == n // w and all(s.n == w for s in segs)
    for s in segs:
        assert s.positions == tuple(i / s.n for i in range(s.n))


def test_segment_bad_length():
    with pytest.raises(ValueError):
        segment(_seq(5), 0)


def _write(root, rel, data):
    p = root / rel
    p.parent.mkdir(parents=True, exist_ok=True)
    p.write_bytes(data)


def test_load_corpus(tmp_path):
    for rel in ["A0/x.txt", "A0/y.txt", "A1/a.txt", "A1/b.txt", "A1/c.txt"]:
        _write(tmp_path, rel, b"some words here")
    docs = load_corpus(tmp_path)
    assert [d.source_id for d in docs] == ["A0/x.txt", "A0/y.txt", "A1/a.txt", "A1/b.txt", "A1/c.txt"]
    assert [d.author_label for d in docs] == ["A0", "A0", "A1", "A1", "A1"]


def test_load_corpus_empty_and_missing(tmp_path):
    assert load_corpus(tmp_path) == []
    with pytest.raises(MissingRoot):
        load_corpus(tmp_path / "nope")


def test_load_corpus_unreadable(tmp_path):
    _write(tmp_path, "A0/bad.txt", b"\xff\xfe\xfa not utf8 \x80")
    rep = load_corpus_report(tmp_path)
    assert rep.documents == []
    assert len(rep.errors) == 1 and rep.errors[0].path == "A0/bad.txt"


def test_longest_documents():
    docs = [
        Document("A/1", "a b c", "A"),
        Document("A/2", "a b c d e", "A"),
        Document("A/3", "a", "A"),
        Document("B/1", "x", "B"),
    ]
    kept = longest_documents(docs, 2)
    assert [d.source_id for d in kept] == ["A/1", "A/2", "B/1"]


def test_document_needs_source_id():
    with pytest.raises(ValueError):
        Document("", "text")
