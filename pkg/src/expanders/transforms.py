"""Conversions between fixed-expanders and bi-expanders, quotient graphs, and the sheared torus."""
from __future__ import annotations

import logging

from .graph_core import BipartiteGraph, Graph, Partition, is_k_regular, regular_degree
from .matching import ContractError, Matching, lexicographic_perfect_matching

log = logging.getLogger(__name__)


def fixed_to_bi(X: Graph) -> BipartiteGraph:
    """Input ``v`` (a copy of v) is joined to output ``v`` and to output ``w`` for every edge vw."""
    try:
        regular_degree(X)
    except ValueError:
        raise ContractError("fixed_to_bi needs a regular graph") from None
    edges = [(v, v) for v in range(X.n)]
    edges += [(v, w) for v in range(X.n) for w in X.adj[v]]
    return BipartiteGraph.from_edges(X.n, X.n, edges)


def glue_twins(B: BipartiteGraph, matching: Matching) -> tuple[Graph, int]:
    """Identify input ``v`` with its matched output; returns the graph and the number of dropped self-pairs.

    Vertex ``v`` of the result stands for input ``v`` and output ``matching[v]``;
    ``v ~ w`` whenever input v meets output of w or input w meets output of v.
    """
    mate = matching.as_dict()
    if len(mate) != B.n_in or B.n_in != B.n_out:
        raise ContractError("gluing needs a perfect matching")
    owner = {o: v for v, o in mate.items()}
    edges = set()
    loops = 0
    for i, o in B.edges:
        w = owner[o]
        if w == i:
            loops += 1
            continue
        edges.add((min(i, w), max(i, w)))
    return Graph.from_edges(B.n_in, edges), loops


def bi_to_fixed(B: BipartiteGraph) -> Graph:
    """Glue the twins of a regular bipartite graph along its lexicographically least perfect matching."""
    if B.n_in != B.n_out:
        raise ContractError("bi_to_fixed needs equal parts")
    degs = set(B.input_degrees()) | set(B.output_degrees())
    if len(degs) != 1:
        raise ContractError("bi_to_fixed needs a regular bipartite graph")
    G, loops = glue_twins(B, lexicographic_perfect_matching(B))
    log.info("bi_to_fixed dropped %d self-pair(s)", loops)
    return G


def quotient_graph(G: Graph, P: Partition) -> Graph:
    """Parts become vertices; distinct parts are adjacent when some edge joins them."""
    if P.n != G.n:
        raise ValueError("partition ground set differs from the graph")
    edges = set()
    for u, v in G.edges():
        a, b = P.part_of[u], P.part_of[v]
        if a != b:
            edges.add((min(a, b), max(a, b)))
    return Graph.from_edges(len(P.parts), edges)


def torus_index(m: int, i: int, j: int) -> int:
    return (i % m) * m + (j % m)


def torus_graph(m: int) -> Graph:
    """The m×m wrap-around grid; vertex ``(i, j)`` is ``i*m + j``."""
    if m < 3:
        raise ValueError("torus needs m ≥ 3")
    edges = []
    for i in range(m):
        for j in range(m):
            v = torus_index(m, i, j)
            edges.append((v, torus_index(m, i + 1, j)))
            edges.append((v, torus_index(m, i, j + 1)))
    G = Graph.from_edges(m * m, edges)
    assert is_k_regular(G, 4)
    return G


def torus_shear_partition(m: int) -> Partition:
    """``(i, j)`` goes to part ``(i + j(j+1)/2) mod m``."""
    if m < 3:
        raise ValueError("torus needs m ≥ 3")
    part_of = [0] * (m * m)
    for i in range(m):
        for j in range(m):
            part_of[torus_index(m, i, j)] = (i + j * (j + 1) // 2) % m
    parts = tuple(tuple(v for v in range(m * m) if part_of[v] == p) for p in range(m))
    return Partition(m * m, tuple(part_of), parts)


def torus_band(m: int, width: int | None = None) -> list[int]:
    """Rows ``0..width-1`` of the torus (default half of them): the natural sparse cut."""
    width = m // 2 if width is None else width
    return [torus_index(m, i, j) for i in range(width) for j in range(m)]
