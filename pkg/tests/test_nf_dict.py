from collections import Counter

import pytest
from hypothesis import given, strategies as st

from nfzwda.errors import DuplicateWord, EmptyCorpus, FormatError
from nfzwda.nf_dict import (
    NFDictionary,
    build_dictionary,
    load_dictionary,
    lookup,
    save_dictionary,
    top_words,
)
from nfzwda.text_ingest import Document, tokenize


def docs(*texts):
    return [Document(f"d{i}", t) for i, t in enumerate(texts)]


def test_build_counts():
    d = build_dictionary(docs("a a b"))
    assert dict(d.entries) == {"a": 2, "b": 1} and d.f_max == 2
    d = build_dictionary(docs("a", "A"))
    assert dict(d.entries) == {"a": 2} and d.f_max == 2


def test_build_empty():
    with pytest.raises(EmptyCorpus):
        build_dictionary(docs(""))
    with pytest.raises(EmptyCorpus):
        build_dictionary([])


def test_lookup():
    d = NFDictionary({"a": 2})
    assert lookup(d, "a") == 2
    assert lookup(d, "zzz") == 0
    assert lookup(NFDictionary({}), "a") == 0
    assert NFDictionary({}).f_max == 0


def test_save_format_and_roundtrip(tmp_path):
    d = NFDictionary({"b": 1, "a": 2})
    path = tmp_path / "d.tsv"
    save_dictionary(d, path)
    assert path.read_text(encoding="utf-8") == "a\t2\nb\t1\n"
    back = load_dictionary(path)
    assert dict(back.entries) == {"a": 2, "b": 1} and back.f_max == 2


def test_save_ties_by_word(tmp_path):
    path = tmp_path / "d.tsv"
    save_dictionary(NFDictionary({"c": 3, "b": 3, "a": 5}), path)
    assert path.read_text() == "a\t5\nb\t3\nc\t3\n"


def test_load_errors(tmp_path):
    p = tmp_path / "bad.tsv"
    p.write_text("a\t3\nb badcount\n")
    with pytest.raises(FormatError) as exc:
        load_dictionary(p)
    assert exc.value.line == 2
    p.write_text("a\tx\n")
    with pytest.raises(FormatError):
        load_dictionary(p)
    p.write_text("a\t3\nA\t2\n")
    with pytest.raises(DuplicateWord):
        load_dictionary(p)


def test_load_order_strict_vs_permissive(tmp_path):
    p = tmp_path / "list.tsv"
    p.write_text("The\t5\nzebra\t1\nof\t9\n")
    with pytest.raises(FormatError):
        load_dictionary(p)
    d = load_dictionary(p, permissive=True)
    assert dict(d.entries) == {"the": 5, "zebra": 1, "of": 9} and d.f_max == 9


def test_top_words():
    d = NFDictionary({"a": 5, "b": 3, "c": 3})
    assert top_words(d, 2) == ["a", "b"]
    assert top_words(d, 3) == ["a", "b", "c"]
    assert top_words(NFDictionary({"a": 5}), 150) == ["a"]
    with pytest.raises(ValueError):
        top_words(d, 0)


words = st.text(alphabet="abcde", min_size=1, max_size=4)


@given(st.lists(st.lists(words, max_size=20), min_size=1, max_size=5))
def test_build_matches_brute_force_recount(texts):
    corpus = docs(*[" ".join(t) for t in texts])
    if not any(texts):
        with pytest.raises(EmptyCorpus):
            build_dictionary(corpus)
        return
    d = build_dictionary(corpus)
    brute = Counter()
    for doc in corpus:
        for w in doc.text.split():
            brute[w] += 1
    assert dict(d.entries) == dict(brute)
    assert d.f_max == max(brute.values())


@given(st.dictionaries(words, st.integers(0, 10**9), max_size=30))
def test_roundtrip_property(tmp_path_factory, entries):
    d = NFDictionary(entries)
    path = tmp_path_factory.mktemp("rt") / "d.tsv"
    save_dictionary(d, path)
    back = load_dictionary(path)
    assert dict(back.entries) == entries and back.f_max == d.f_max
    ranked = d.top_words(len(entries) + 1) if entries else []
    assert ranked == sorted(entries, key=lambda w: (-entries[w], w))
    for k in range(1, len(entries) + 1):
        assert d.top_words(k) == ranked[:k]
