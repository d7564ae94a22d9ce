import sys

import numpy as np
import pytest

from nfzwda.synthetic import SyntheticWorld


@pytest.fixture(scope="session")
def world():
    return SyntheticWorld()


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def corpus_dirs(tmp_path_factory, world):
    """Small on-disk corpora: train/test for 3 overlapping authors, long in-set
    texts, and long texts by an outsider, plus the world's dictionary."""
    from nfzwda.nf_dict import save_dictionary
    from nfzwda.synthetic import blended_outsider, make_documents, overlap_authors, write_corpus

    root = tmp_path_factory.mktemp("corpora")
    r = np.random.default_rng(7)
    authors = overlap_authors(world, 3)
    out = blended_outsider(world, 3)
    paths = {
        "train": write_corpus(root / "train", [d for a in authors for d in make_documents(world, a, 8, 300, r, "tr")]),
        "test": write_corpus(root / "test", [d for a in authors for d in make_documents(world, a, 4, 300, r, "te")]),
        "in_set": write_corpus(root / "in_set", [d for a in authors[:2] for d in make_documents(world, a, 1, 300 * 20, r, "long")]),
        "out_of_set": write_corpus(root / "out", make_documents(world, out, 2, 300 * 20, r, "long")),
    }
    paths["dict"] = root / "nf.tsv"
    save_dictionary(world.nf, paths["dict"])
    return paths


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for tag in sorted(mod.RESULTS, key=lambda t: int(t[2:])):
        terminalreporter.write_line(mod.RESULTS[tag])
