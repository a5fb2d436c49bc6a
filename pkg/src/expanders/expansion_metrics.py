"""Exact expansion and Cheeger constants by exhaustive subset scans.

All results are ``Fraction`` values.  A subset ``A`` is admissible for the
expansion constants when ``0 < |A|`` and ``2|A| ≤ n``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Sequence

import numpy as np

from .graph_core import BipartiteGraph, Graph, bfs_distances, boundary
from .subsets import RatioMin, iter_blocks, mask_of, members, popcount

Kind = Literal["expander", "fixed", "bi"]


@dataclass(frozen=True)
class ExpansionCertificate:
    """Either an exhaustive confirmation of ``c`` or a subset violating it."""

    kind: Kind
    c: Fraction
    witness: str | frozenset[int]

    @property
    def holds(self) -> bool:
        return self.witness == "exhaustive"


def _graph_masks(G: Graph) -> list[int]:
    return [mask_of(G.adj[v]) for v in range(G.n)]


def _scan_graph(G: Graph, numerator, need_cut: bool = False, admissible=None) -> tuple[Fraction, frozenset[int]]:
    n = G.n
    full = np.uint32((1 << n) - 1)
    tracker = RatioMin()
    degrees = G.degrees() if need_cut else None
    for blk in iter_blocks(n, _graph_masks(G), degrees):
        bnd = popcount(blk.nbhd & ~blk.masks & full)
        sizes = blk.sizes.astype(np.int64)
        valid = admissible(sizes, n) if admissible else (sizes > 0) & (2 * sizes <= n)
        num, den = numerator(bnd, sizes, blk.cut, n)
        tracker.update(blk.masks, num, den, valid)
    if tracker.best is None:
        raise ValueError("no admissible subset (graph too small)")
    return tracker.best, members(tracker.witness)


def expander_constant_with_witness(G: Graph) -> tuple[Fraction, frozenset[int]]:
    return _scan_graph(G, lambda b, s, _c, n: (b * n, (n - s) * s))


def expander_constant(G: Graph) -> Fraction:
    """Largest c with ``|∂A| ≥ c(1 - |A|/n)|A|`` for all admissible A."""
    return expander_constant_with_witness(G)[0]


def fixed_expander_constant_with_witness(G: Graph) -> tuple[Fraction, frozenset[int]]:
    return _scan_graph(G, lambda b, s, _c, n: (b, s))


def fixed_expander_constant(G: Graph) -> Fraction:
    """Largest c with ``|∂A| ≥ c|A|`` for all admissible A."""
    return fixed_expander_constant_with_witness(G)[0]


def bi_expander_constant_with_witness(B: BipartiteGraph) -> tuple[Fraction, frozenset[int]]:
    if B.n_in != B.n_out:
        raise ValueError("bi-expander constant needs equal parts")
    n = B.n_in
    tracker = RatioMin()
    for blk in iter_blocks(n, [mask_of(B.out_neighbors(i)) for i in range(n)]):
        sizes = blk.sizes.astype(np.int64)
        valid = (sizes > 0) & (2 * sizes <= n)
        tracker.update(blk.masks, popcount(blk.nbhd) - sizes, sizes, valid)
    if tracker.best is None:
        raise ValueError("no admissible input set")
    return tracker.best, members(tracker.witness)


def bi_expander_constant(B: BipartiteGraph) -> Fraction:
    """Min of ``(|∂A| - |A|)/|A|`` over admissible input sets (may be negative)."""
    return bi_expander_constant_with_witness(B)[0]


def _cut_sides(sizes: np.ndarray, n: int) -> np.ndarray:
    return (sizes > 0) & (sizes < n)


def cheeger_h_with_witness(G: Graph) -> tuple[Fraction, frozenset[int]]:
    return _scan_graph(
        G, lambda _b, s, cut, n: (cut, np.minimum(s, n - s)), need_cut=True, admissible=_cut_sides
    )


def cheeger_h(G: Graph) -> Fraction:
    """min over cuts of ``|E(A,B)| / min(|A|,|B|)``."""
    return cheeger_h_with_witness(G)[0]


def cheeger_h_prime(G: Graph) -> Fraction:
    """min over cuts of ``|E(A,B)| (1/|A| + 1/|B|)``."""
    return _scan_graph(
        G, lambda _b, s, cut, n: (cut * n, s * (n - s)), need_cut=True, admissible=_cut_sides
    )[0]


def edge_cut(G: Graph, A: Iterable[int]) -> int:
    A = set(A)
    return sum(1 for a in A for w in G.adj[a] if w not in A)


def certify_expansion(G: Graph | BipartiteGraph, c: Fraction, kind: Kind) -> ExpansionCertificate:
    """Check the ``kind`` inequality for constant ``c`` over all admissible sets."""
    c = Fraction(c)
    if kind == "bi":
        best, witness = bi_expander_constant_with_witness(G)  # type: ignore[arg-type]
    elif kind == "fixed":
        best, witness = fixed_expander_constant_with_witness(G)  # type: ignore[arg-type]
    elif kind == "expander":
        best, witness = expander_constant_with_witness(G)  # type: ignore[arg-type]
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return ExpansionCertificate(kind, c, "exhaustive" if best >= c else witness)


def convert_constant(from_kind: str, to_kind: str, n: int, k: int, c: Fraction) -> Fraction:
    """Constant guaranteed for ``to_kind`` by an (n,k,c) graph of ``from_kind``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    c = Fraction(c)
    pair = (from_kind, to_kind)
    if from_kind == to_kind and from_kind in ("expander", "fixed"):
        return c
    if pair == ("expander", "fixed"):
        return c / 2
    if pair == ("fixed", "expander"):
        return c / k
    raise ValueError(f"unsupported conversion {from_kind} -> {to_kind}")


# ---------------------------------------------------------------- large-graph Cheeger certificate

def shortest_path_loads(G: Graph) -> dict[tuple[int, int], Fraction]:
    """Edge loads when every unordered vertex pair sends one unit split evenly over its shortest paths.

    Computed exactly with Brandes-style dependency accumulation.
    """
    load: dict[tuple[int, int], Fraction] = {e: Fraction(0) for e in G.edges()}
    for s in range(G.n):
        dist = bfs_distances(G, s)
        order = sorted(range(G.n), key=lambda v: dist[v])
        order = [v for v in order if dist[v] >= 0]
        sigma = [0] * G.n
        sigma[s] = 1
        for v in order:
            for w in G.adj[v]:
                if dist[w] == dist[v] + 1:
                    sigma[w] += sigma[v]
        delta = [Fraction(0)] * G.n
        for w in reversed(order):
            for v in G.adj[w]:
                if dist[v] == dist[w] - 1:
                    share = Fraction(sigma[v], sigma[w]) * (1 + delta[w])
                    load[(min(v, w), max(v, w))] += share
                    delta[v] += share
    # each unordered pair was routed twice (once from each end)
    return {e: x / 2 for e, x in load.items()}


def cheeger_h_bounds(G: Graph, candidates: Sequence[Iterable[int]]) -> tuple[Fraction, Fraction]:
    """Exact lower and upper bounds on h for graphs too large to scan.

    Lower: any cut (A,B) carries at least ``|A||B|`` units of the all-pairs
    shortest-path flow, so ``|E(A,B)| · L ≥ |A||B|`` with ``L`` the maximum edge
    load, giving ``h ≥ h'/2 ≥ n / (2L)``.  Upper: the best candidate set.
    """
    if G.n < 2 or min(bfs_distances(G, 0)) < 0:
        raise ValueError("need a connected graph with at least two vertices")
    loads = shortest_path_loads(G)
    lower = Fraction(G.n) / (2 * max(loads.values()))
    upper = None
    for A in candidates:
        A = set(A)
        if not 0 < len(A) < G.n:
            continue
        val = Fraction(edge_cut(G, A), min(len(A), G.n - len(A)))
        upper = val if upper is None else min(upper, val)
    if upper is None:
        raise ValueError("no proper candidate set given")
    return lower, upper


__all__ = [
    "ExpansionCertificate",
    "bi_expander_constant",
    "boundary",
    "certify_expansion",
    "cheeger_h",
    "cheeger_h_bounds",
    "cheeger_h_prime",
    "convert_constant",
    "expander_constant",
    "fixed_expander_constant",
]
