"""Vectorised exhaustive subset scans over bitmask-encoded vertex sets.

Subset ``S`` of ``0..n-1`` is the integer with bit ``v`` set for ``v`` in ``S``.
Tables over all subsets of the low ``L`` vertices are built by doubling
(``T[S | 1<<i] = T[S] op f(i, S)`` for ``S < 2**i``); the remaining high
vertices are handled block by block, so memory stays at ``2**20`` entries.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

MAX_BITS = 24
BLOCK_BITS = 20


class TooLargeError(ValueError):
    """Exhaustive subset scan requested beyond the desk-scale cap."""


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def members(mask: int) -> frozenset[int]:
    return frozenset(v for v in range(mask.bit_length()) if mask >> v & 1)


@dataclass
class Block:
    masks: np.ndarray      # uint32 subset masks
    sizes: np.ndarray      # |S|
    nbhd: np.ndarray       # union of neighbour masks of S
    cut: np.ndarray | None  # edges leaving S (graphs only)


def iter_blocks(n: int, nbr_masks: Sequence[int], degrees: Sequence[int] | None = None) -> Iterator[Block]:
    """Yield every subset of ``0..n-1`` (including the empty set) in blocks.

    ``nbr_masks[v]`` is the neighbour mask of ``v`` in whatever target space
    the caller uses.  When ``degrees`` is given the masks are taken to live on
    the same vertex set and the edge-cut size of every subset is also produced.
    """
    if n > MAX_BITS:
        raise TooLargeError(f"exhaustive scan limited to {MAX_BITS} vertices, got {n}")
    low = min(n, BLOCK_BITS)
    high = n - low
    size = 1 << low
    idx = np.arange(size, dtype=np.uint32)
    low_nb = np.zeros(size, dtype=np.uint32)
    for i in range(low):
        low_nb[1 << i: 2 << i] = low_nb[: 1 << i] | np.uint32(nbr_masks[i])
    low_size = np.bitwise_count(idx).astype(np.int32)
    low_mask = np.uint32(size - 1)
    if degrees is not None:
        low_e = np.zeros(size, dtype=np.int32)
        low_vol = np.zeros(size, dtype=np.int32)
        for i in range(low):
            inner = np.bitwise_count(idx[: 1 << i] & np.uint32(nbr_masks[i] & (size - 1))).astype(np.int32)
            low_e[1 << i: 2 << i] = low_e[: 1 << i] + inner
            low_vol[1 << i: 2 << i] = low_vol[: 1 << i] + degrees[i]
    for h in range(1 << high):
        hv = [low + j for j in range(high) if h >> j & 1]
        nb_h = 0
        for v in hv:
            nb_h |= nbr_masks[v]
        masks = idx | np.uint32(h << low)
        nbhd = low_nb | np.uint32(nb_h)
        sizes = low_size + len(hv)
        cut = None
        if degrees is not None:
            hmask = h << low
            e_high = sum(bin(nbr_masks[v] & hmask).count("1") for v in hv) // 2
            e = low_e + e_high
            for v in hv:
                e = e + np.bitwise_count(idx & np.uint32(nbr_masks[v]) & low_mask).astype(np.int32)
            vol = low_vol + sum(degrees[v] for v in hv)
            cut = vol - 2 * e
        yield Block(masks, sizes, nbhd, cut)


def popcount(a: np.ndarray) -> np.ndarray:
    return np.bitwise_count(a).astype(np.int64)


class RatioMin:
    """Exact running minimum of ``num/den`` over vectorised candidate blocks."""

    def __init__(self) -> None:
        self.best: Fraction | None = None
        self.witness: int | None = None

    def update(self, masks: np.ndarray, num: np.ndarray, den: np.ndarray, valid: np.ndarray) -> None:
        if not valid.any():
            return
        masks, num, den = masks[valid], num[valid].astype(np.int64), den[valid].astype(np.int64)
        approx = num / den
        lo = approx.min()
        near = approx <= lo + 1e-9
        pairs = np.unique(np.stack([num[near], den[near]], axis=1), axis=0)
        block_best = min(Fraction(int(a), int(b)) for a, b in pairs)
        if self.best is None or block_best < self.best:
            hit = np.nonzero(num * block_best.denominator == den * block_best.numerator)[0][0]
            self.best = block_best
            self.witness = int(masks[hit])
