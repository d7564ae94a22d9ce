import numpy as np

from nfzwda.partition import DEFAULT_SCHEMES, zone_index
from nfzwda.synthetic import (
    SHARED,
    blended_outsider,
    disjoint_authors,
    generate_tokens,
    make_documents,
    overlap_authors,
    pseudo_word,
)
from nfzwda.text_ingest import tokenize


def test_pseudo_words_are_single_tokens():
    ws = [pseudo_word(i) for i in range(2000)]
    assert len(set(ws)) == 2000
    assert tokenize(" ".join(ws)).tokens == tuple(ws)


def test_pools_occupy_disjoint_zones(world):
    for name in DEFAULT_SCHEMES:
        scheme = DEFAULT_SCHEMES[name]
        zones = {
            pool: {zone_index(scheme, world.nf.lookup(w)) for w in words}
            for pool, words in world.pools.items()
        }
        pools = list(zones)
        for i, a in enumerate(pools):
            for b in pools[i + 1:]:
                assert not zones[a] & zones[b], (name, a, b)


def test_disjoint_authors_use_own_band(world, rng):
    a0 = disjoint_authors(world, 2)[0]
    toks = generate_tokens(world, a0, 500, rng)
    assert set(toks) <= set(world.pools["band0"])


def test_overlap_share(world, rng):
    a = overlap_authors(world, 3)[2]
    toks = generate_tokens(world, a, 5000, rng)
    shared = sum(t in set(world.pools[SHARED]) for t in toks) / len(toks)
    assert abs(shared - 0.9) < 0.03
    assert set(toks) - set(world.pools[SHARED]) <= set(world.pools["band2"])


def test_outsider_spreads_over_candidate_bands(world, rng):
    toks = generate_tokens(world, blended_outsider(world, 3), 9000, rng)
    counts = [sum(t in set(world.pools[f"band{b}"]) for t in toks) for b in range(4)]
    assert counts[3] == 0
    assert all(250 < c < 350 for c in counts[:3])


def test_generation_is_seeded(world):
    a = overlap_authors(world, 1)[0]
    d1 = make_documents(world, a, 2, 50, np.random.default_rng(3))
    d2 = make_documents(world, a, 2, 50, np.random.default_rng(3))
    assert d1 == d2


def test_burst_repeats_recent_words(world, rng):
    a = disjoint_authors(world, 1)[0]
    a.burst = 0.5
    toks = generate_tokens(world, a, 400, rng)
    assert len(toks) == 400
