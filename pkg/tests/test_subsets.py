import itertools
from fractions import Fraction

import numpy as np
import pytest
from conftest import graphs
from hypothesis import given
from oracles import crossing, nbhd

from expanders import subsets
from expanders.subsets import RatioMin, TooLargeError, iter_blocks, mask_of, members


def _scan(G):
    nbr = [mask_of(G.adj[v]) for v in range(G.n)]
    seen = {}
    for blk in iter_blocks(G.n, nbr, G.degrees()):
        for m, s, nb, c in zip(blk.masks, blk.sizes, blk.nbhd, blk.cut):
            seen[int(m)] = (int(s), int(nb), int(c))
    return seen


def _check_against_oracle(G):
    seen = _scan(G)
    assert len(seen) == 2 ** G.n
    for r in range(G.n + 1):
        for A in itertools.combinations(range(G.n), r):
            size, nb, cut = seen[mask_of(A)]
            assert size == len(A)
            assert members(nb) - set(A) == nbhd(G, A)
            assert cut == crossing(G, A)


@given(graphs(max_n=8))
def test_blocks_match_brute_force(G):
    _check_against_oracle(G)


@given(graphs(min_n=5, max_n=8))
def test_high_bit_blocks(G):
    # shrink the block so the high-vertex loop is exercised
    old = subsets.BLOCK_BITS
    subsets.BLOCK_BITS = 3
    try:
        _check_against_oracle(G)
    finally:
        subsets.BLOCK_BITS = old


def test_cap():
    with pytest.raises(TooLargeError):
        next(iter_blocks(25, [0] * 25))


def test_mask_roundtrip():
    assert members(mask_of({0, 3, 9})) == {0, 3, 9}
    assert mask_of([]) == 0


def test_ratio_min_exact_and_witness():
    r = RatioMin()
    masks = np.array([1, 2, 3, 4], dtype=np.uint32)
    num = np.array([3, 2, 4, 1])
    den = np.array([9, 6, 12, 2])
    r.update(masks, num, den, np.array([True, True, True, False]))
    assert r.best == Fraction(1, 3)
    assert r.witness == 1  # first of the tied masks
    r.update(masks, num, den, np.array([False, False, False, True]))
    assert r.best == Fraction(1, 3) and r.witness == 1  # a larger ratio never replaces the minimum
