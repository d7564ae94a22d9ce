"""Write a synthetic corpus layout that the CLI and the experiment configs can use.

    python3 scripts/make_synthetic_corpus.py data/synthetic --authors 4 --shared 0.9

Creates train/, test/, in_set/, out_of_set/ and nf.tsv under the target.
"""

import argparse
from pathlib import Path

import numpy as np

from nfzwda.nf_dict import save_dictionary
from nfzwda.synthetic import (
    SyntheticWorld,
    blended_outsider,
    disjoint_authors,
    make_documents,
    overlap_authors,
    write_corpus,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("out", type=Path)
    ap.add_argument("--authors", type=int, default=3)
    ap.add_argument("--shared", type=float, default=0.9, help="shared-pool mass; 0 gives disjoint authors")
    ap.add_argument("--train", type=int, default=20)
    ap.add_argument("--test", type=int, default=10)
    ap.add_argument("--words", type=int, default=1000)
    ap.add_argument("--long-segments", type=int, default=25, help="length of long texts, in samples")
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    world = SyntheticWorld(n_bands=max(4, args.authors))
    if args.shared > 0:
        authors = overlap_authors(world, args.authors, shared=args.shared, seed=args.seed)
    else:
        authors = disjoint_authors(world, args.authors, seed=args.seed)
    outsider = blended_outsider(world, args.authors, shared=max(args.shared, 0.5), shared_seed=args.seed)
    rng = np.random.default_rng(args.seed)
    long_n = args.words * args.long_segments

    def docs(who, count, n, prefix):
        return [d for a in who for d in make_documents(world, a, count, n, rng, prefix)]

    write_corpus(args.out / "train", docs(authors, args.train, args.words, "tr"))
    write_corpus(args.out / "test", docs(authors, args.test, args.words, "te"))
    write_corpus(args.out / "in_set", docs(authors, 1, long_n, "long"))
    write_corpus(args.out / "out_of_set", docs([outsider], 2, long_n, "long"))
    save_dictionary(world.nf, args.out / "nf.tsv")
    print(f"wrote {args.out}")


if __name__ == "__main__":
    main()
