import json

import pytest

from nfzwda.cli import main
from nfzwda.nf_dict import load_dictionary


def run(*argv):
    return main([str(a) for a in argv])


def test_build_dict(corpus_dirs, tmp_path):
    out = tmp_path / "d.tsv"
    assert run("build-dict", "--corpus", corpus_dirs["train"], "--out", out) == 0
    d = load_dictionary(out)
    assert len(d) > 0 and d.f_max == d.ranked()[0][1]


def test_featurize_jsonl(corpus_dirs, tmp_path):
    out = tmp_path / "v.jsonl"
    assert run("featurize", "--dict", corpus_dirs["dict"], "--word-length", 100,
               "--segment-mode", "chunks", "--out", out, *sorted(corpus_dirs["test"].rglob("A0/*.txt"))) == 0
    recs = [json.loads(l) for l in out.read_text().splitlines()]
    assert len(recs) == 4 * 3
    assert recs[0]["source_id"].endswith("#0") and recs[0]["n"] == 100
    assert all(set(r) == {"source_id", "author_label", "n", "scheme", "odv_mode", "features"} for r in recs)


def test_train_attribute_open(corpus_dirs, tmp_path):
    model = tmp_path / "m.json"
    assert run("train", "--corpus", corpus_dirs["train"], "--dict", corpus_dirs["dict"],
               "--word-length", 300, "--out", model) == 0
    saved = json.loads(model.read_text())
    assert saved["labels"] == ["A0", "A1", "A2"]

    rep = tmp_path / "r.json"
    assert run("attribute", "--model", model, "--dict", corpus_dirs["dict"],
               "--corpus", corpus_dirs["test"], "--out", rep) == 0
    r = json.loads(rep.read_text())
    assert r["accuracy"] == 1.0 and len(r["predictions"]) == 12

    opn = tmp_path / "o.json"
    assert run("open-attribute", "--model", model, "--dict", corpus_dirs["dict"],
               "--corpus", corpus_dirs["out_of_set"], "--out", opn) == 0
    reports = json.loads(opn.read_text())
    assert [x["decision"] for x in reports] == ["Reject", "Reject"]
    assert all(x["segments"] == 20 for x in reports)

    assert run("open-attribute", "--model", model, "--dict", corpus_dirs["dict"],
               "--corpus", corpus_dirs["in_set"], "--out", opn) == 0
    reports = json.loads(opn.read_text())
    assert [x["decision"] for x in reports] == [x["true_author"] for x in reports]


def test_delta_command(corpus_dirs, tmp_path):
    out, prof = tmp_path / "d.json", tmp_path / "p.json"
    assert run("delta", "--train", corpus_dirs["train"], "--test", corpus_dirs["test"],
               "--dict", corpus_dirs["dict"], "--n-words", 50, "--top-k", 2, "--threshold", 5,
               "--word-length", 300, "--profile-out", prof, "--out", out) == 0
    r = json.loads(out.read_text())
    assert r["n_words"] == 50 and r["top_k_accuracy"] >= r["accuracy"]
    assert all("decision" in p for p in r["predictions"])
    assert len(json.loads(prof.read_text())["words"]) == 50


def test_experiment_byte_identical(corpus_dirs, tmp_path):
    cfg = tmp_path / "exp.toml"
    cfg.write_text(
        f'train_root = "{corpus_dirs["train"]}"\ntest_root = "{corpus_dirs["test"]}"\n'
        f'dict_path = "{corpus_dirs["dict"]}"\nword_lengths = [200]\nauthor_sweep = [[2, 2]]\n'
        f'delta_n_words = [40]\n'
    )
    assert run("--config", cfg, "experiment", "--out", tmp_path / "a") == 0
    assert run("--config", cfg, "experiment", "--out", tmp_path / "b") == 0
    a, b = (tmp_path / "a" / "closed.csv").read_bytes(), (tmp_path / "b" / "closed.csv").read_bytes()
    assert a == b and len(a.splitlines()) > 3
    assert run("--config", cfg, "experiment", "--out", tmp_path / "c", "--seed", 5) == 0
    assert b"\"seed\": 5" in (tmp_path / "c" / "closed.csv").read_bytes()


def test_config_defaults_and_flag_precedence(corpus_dirs, tmp_path):
    cfg = tmp_path / "c.toml"
    cfg.write_text(f'dict_path = "{corpus_dirs["dict"]}"\n[featurize]\nword-length = 50\n')
    text = next(corpus_dirs["test"].rglob("*.txt"))
    out = tmp_path / "v.jsonl"
    assert run("--config", cfg, "featurize", "--out", out, text) == 0
    assert json.loads(out.read_text())["n"] == 50
    assert run("--config", cfg, "featurize", "--word-length", 70, "--out", out, text) == 0
    assert json.loads(out.read_text())["n"] == 70


def test_exit_codes(corpus_dirs, tmp_path, capsys):
    with pytest.raises(SystemExit) as e:
        run("train", "--no-such-flag")
    assert e.value.code == 1
    assert run("train", "--corpus", corpus_dirs["train"]) == 1  # missing --out
    assert run("experiment") == 1
    assert run("build-dict", "--corpus", tmp_path / "nowhere", "--out", tmp_path / "x.tsv") == 2
    bad = tmp_path / "bad.tsv"
    bad.write_text("aaa\t1\nbbb\t5\n")
    assert run("featurize", "--dict", bad, next(corpus_dirs["test"].rglob("*.txt"))) == 2
    assert "bad.tsv:2:" in capsys.readouterr().err
    empty = tmp_path / "empty.txt"
    empty.write_text("123 456\n")
    assert run("featurize", "--dict", corpus_dirs["dict"], empty) == 2
