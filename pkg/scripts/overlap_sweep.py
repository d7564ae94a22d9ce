"""Accuracy as the share of common vocabulary grows.

For each shared-pool mass, trains NFZ (full, ODE only, ODV only) and Delta on a
fresh synthetic corpus and prints a CSV row per setting.

    python3 scripts/overlap_sweep.py --words 300 --reps 3
"""

import argparse
import csv
import sys

import numpy as np

from nfzwda.attribution import PipelineConfig, basic_attribute
from nfzwda.classify import ClassifierConfig
from nfzwda.delta import build_profile, delta_attribute
from nfzwda.synthetic import SyntheticWorld, make_documents, overlap_authors
from nfzwda.text_ingest import segment, tokenize


def delta_accuracy(train, test, nf, words, n_words):
    sample = lambda d: segment(tokenize(d.text), words)[0]
    profile = build_profile([(sample(d), d.author_label) for d in train], nf, n_words)
    return float(np.mean([delta_attribute(profile, sample(d))[0] == d.author_label for d in test]))


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--authors", type=int, default=3)
    ap.add_argument("--words", type=int, default=300)
    ap.add_argument("--train", type=int, default=20)
    ap.add_argument("--test", type=int, default=10)
    ap.add_argument("--reps", type=int, default=3)
    ap.add_argument("--shared", type=float, nargs="+", default=[0.5, 0.8, 0.9, 0.95, 0.98])
    ap.add_argument("--delta-words", type=int, default=150)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    world = SyntheticWorld(n_bands=max(4, args.authors))
    out = csv.writer(sys.stdout, lineterminator="\n")
    out.writerow(["shared", "rep", "nfz-full", "nfz-ode", "nfz-odv", f"delta-{args.delta_words}"])
    for shared in args.shared:
        for rep in range(args.reps):
            rng = np.random.default_rng([args.seed, rep, int(shared * 1000)])
            authors = overlap_authors(world, args.authors, shared=shared, seed=args.seed + rep)
            train = [d for a in authors for d in make_documents(world, a, args.train, args.words, rng, "tr")]
            test = [d for a in authors for d in make_documents(world, a, args.test, args.words, rng, "te")]
            row = [shared, rep]
            for fs in ("full", "ode_only", "odv_only"):
                cfg = PipelineConfig(word_length=args.words, classifier=ClassifierConfig(feature_set=fs))
                row.append(f"{basic_attribute(train, test, world.nf, cfg).accuracy:.4f}")
            row.append(f"{delta_accuracy(train, test, world.nf, args.words, args.delta_words):.4f}")
            out.writerow(row)


if __name__ == "__main__":
    main()
