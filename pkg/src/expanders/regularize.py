"""Regular and almost-regular constructions, k-regularisation, and degree raising."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

from .graph_core import Graph, complement, connected_components, induced_subgraph, is_connected, regular_degree, relabel


@dataclass(frozen=True)
class RegularizationReport:
    added_vertices: int
    added_edges: int
    output: Graph
    contains_input: bool
    new_vertex_block: int = 0  # size m of the block of fresh vertices (before trimming)


def circulant_regular(n: int, k: int) -> Graph:
    """Vertices on a circle joined to their ±1..±k/2 neighbours, plus antipodes when k is odd."""
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    if n * k % 2:
        raise ValueError(f"no {k}-regular graph on {n} vertices: nk is odd")
    edges = [(v, (v + s) % n) for v in range(n) for s in range(1, k // 2 + 1)]
    if k % 2:
        edges += [(v, v + n // 2) for v in range(n // 2)]
    return Graph.from_edges(n, edges)


def complement_matching(n: int, k: int) -> list[tuple[int, int]]:
    """A matching of size ``⌊n/2⌋`` avoiding the even-degree circulant's edges (k even, k < n-1).

    Even n pairs antipodes; odd n pairs ``i`` with ``i + (n+1)/2`` and leaves ``(n-1)/2`` out.
    """
    if k % 2 or not k < n - 1:
        raise ValueError("need k even and k < n - 1")
    if n % 2 == 0:
        return [(v, v + n // 2) for v in range(n // 2)]
    return [(v, v + (n + 1) // 2) for v in range((n - 1) // 2)]


def _degree_k_first(G: Graph, k: int) -> Graph:
    order = sorted(range(G.n), key=lambda v: (G.degree(v) != k, v))
    perm = [0] * G.n
    for new, old in enumerate(order):
        perm[old] = new
    return relabel(G, perm)


def almost_regular(a: int, b: int, k: int) -> Graph:
    """Graph on a+b vertices: vertices ``0..a-1`` have degree k, the other b have degree k-1."""
    n = a + b
    if a < 0 or b < 0 or not 0 < k < n:
        raise ValueError("need a, b ≥ 0 and 0 < k < a + b")
    if (a * k + b * (k - 1)) % 2:
        raise ValueError("ak + b(k-1) is odd: no such graph")
    if b == 0:
        return circulant_regular(n, k)
    if a == 0:
        return Graph.empty(n) if k == 1 else circulant_regular(n, k - 1)
    if k == 1:
        return Graph.from_edges(n, ((v, v + 1) for v in range(0, a, 2)))
    if n * k % 2 == 0:
        # remove a matching on the Hamiltonian cycle covering vertices a..n-1
        G = circulant_regular(n, k)
        drop = {(v, v + 1) for v in range(a, n - 1, 2)}
        return Graph.from_edges(n, (e for e in G.edges() if e not in drop))
    # n and k odd: add part of a complement matching to a (k-1)-regular circulant
    base = circulant_regular(n, k - 1)
    extra = complement_matching(n, k - 1)[: a // 2]
    return _degree_k_first(base.add_edges(extra), k)


def _choose_block_size(n: int, k: int, missing: int, largest_gap: int) -> int:
    for m in range(max(largest_gap, 1), k + 3):
        if m > k - missing // m > 0 and (n + m) * k % 2 == 0:
            return m
    raise RuntimeError("no admissible number of new vertices")  # excluded by the parity/size argument


def make_k_regular(G: Graph, k: int) -> RegularizationReport:
    """Embed a graph of maximum degree ≤ k into a k-regular graph using at most k+2 new vertices.

    The number of fresh vertices is the smallest m satisfying the block-size
    conditions; m = k+1 or k+2 always qualifies, and smaller values sometimes do.
    """
    if k < 0 or G.max_degree > k:
        raise ValueError("maximum degree exceeds k")
    n = G.n
    adj = [set(a) for a in G.adj]
    deg = [len(a) for a in adj]
    for u in range(n):
        for v in range(u + 1, n):
            if deg[u] < k and deg[v] < k and v not in adj[u]:
                adj[u].add(v)
                adj[v].add(u)
                deg[u] += 1
                deg[v] += 1
    deficient = [v for v in range(n) if deg[v] < k]
    edges = {(u, v) for u in range(n) for v in adj[u] if u < v}
    block = 0
    if deficient and len(deficient) == 1 and deg[deficient[0]] == 0:
        v = deficient[0]
        block = k
        fresh = list(range(n, n + k))
        edges |= {(v, w) for w in fresh}
        edges |= {(a, b) for a in fresh for b in fresh if a < b}
    elif deficient:
        missing = sum(k - deg[v] for v in deficient)
        gap = max(k - deg[v] for v in deficient)
        m = block = _choose_block_size(n, k, missing, gap)
        i = 0
        for v in sorted(deficient, key=lambda x: (deg[x], x)):
            for _ in range(k - deg[v]):
                edges.add((v, n + i % m))
                i += 1
        share = missing // m
        heavy = missing % m  # new vertices 0..heavy-1 already carry share+1 edges
        light = m - heavy
        H = almost_regular(light, heavy, k - share)
        target = list(range(heavy, m)) + list(range(heavy))
        edges |= {tuple(sorted((n + target[x], n + target[y]))) for x, y in H.edges()}
    total = n + block
    out = Graph.from_edges(total, edges)
    if n and is_connected(G) and block:
        comp = next(c for c in connected_components(out) if 0 in c)
        out = induced_subgraph(out, sorted(comp))
    if any(d != k for d in out.degrees()):  # pragma: no cover - guarded by construction
        raise RuntimeError("regularisation failed")
    return RegularizationReport(out.n - n, out.m - G.m, out, G.is_subgraph_of(out), block)


def hamiltonian_cycle_dirac(H: Graph) -> list[int]:
    """Hamiltonian cycle of a graph with minimum degree ≥ n/2 by path extension and rotation."""
    n = H.n
    if n < 3 or 2 * min(H.degrees()) < n:
        raise ValueError("Dirac condition fails")
    adj = H.adj
    path = [0]
    while True:
        on = set(path)
        grown = True
        while grown:
            grown = False
            for end_first in (False, True):
                end = path[0] if end_first else path[-1]
                free = sorted(adj[end] - on)
                if free:
                    if end_first:
                        path.insert(0, free[0])
                    else:
                        path.append(free[0])
                    on.add(free[0])
                    grown = True
        first, last = path[0], path[-1]
        if last in adj[first]:
            cycle = path
        else:
            p = len(path) - 1
            i = next(i for i in range(p) if path[i + 1] in adj[first] and path[i] in adj[last])
            cycle = path[: i + 1] + path[: i: -1]
        if len(cycle) == n:
            return cycle
        on = set(cycle)
        j, u = next((j, min(adj[c] - on)) for j, c in enumerate(cycle) if adj[c] - on)
        path = cycle[j + 1:] + cycle[: j + 1] + [u]


def raise_regular_degree(G: Graph, k: int) -> Graph:
    """Add Hamiltonian cycles (and at most one perfect matching) from the complement until k-regular."""
    current = regular_degree(G)
    n = G.n
    if not current < k or n * k % 2 or 2 * k > n:
        raise ValueError("need k' < k, nk even and k ≤ n/2")
    out = G
    while k - current >= 2:
        cycle = hamiltonian_cycle_dirac(complement(out))
        out = out.add_edges(zip(cycle, cycle[1:] + cycle[:1]))
        current += 2
    if k - current == 1:
        cycle = hamiltonian_cycle_dirac(complement(out))
        out = out.add_edges(zip(cycle[0::2], cycle[1::2]))
    return out


class RegularizedConstant(NamedTuple):
    threshold: int
    c_new: Fraction
    applies: bool  # n ≥ threshold


def regularized_expander_constant(n: int, k: int, c: Fraction) -> RegularizedConstant:
    """Size threshold above which regularising a c-fixed-expander keeps constant c/(k+3)."""
    c = Fraction(c)
    if not 0 < c <= 1:
        raise ValueError("need 0 < c ≤ 1")
    bound = Fraction(2 * (k + 3) ** 2) / (c * (k + 2))
    threshold = math.ceil(bound)
    return RegularizedConstant(threshold, c / (k + 3), n >= threshold)
