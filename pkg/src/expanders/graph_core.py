"""Graph types, constructors, traversal and text/DOT serialization.

Vertices are always the dense integers ``0..n-1``.  All types are immutable.
"""
from __future__ import annotations

import logging
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

log = logging.getLogger(__name__)

INFINITE = math.inf


class GraphFormatError(ValueError):
    """Malformed edge-list text; the message names the offending line."""


def _check_vertex(v: int, n: int) -> None:
    if not 0 <= v < n:
        raise ValueError(f"vertex {v} out of range 0..{n - 1}")


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph stored as a tuple of neighbour frozensets."""

    n: int
    adj: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise ValueError("adjacency length differs from n")
        total = 0
        for v, nbrs in enumerate(self.adj):
            if v in nbrs:
                raise ValueError(f"loop at vertex {v}")
            for w in nbrs:
                _check_vertex(w, self.n)
                if v not in self.adj[w]:
                    raise ValueError(f"asymmetric adjacency {v}-{w}")
            total += len(nbrs)
        if total % 2:
            raise ValueError("handshake violated")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        sets: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            _check_vertex(u, n)
            _check_vertex(v, n)
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            sets[u].add(v)
            sets[v].add(u)
        return cls(n, tuple(frozenset(s) for s in sets))

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, tuple(frozenset() for _ in range(n)))

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return [(u, v) for u in range(self.n) for v in sorted(self.adj[u]) if u < v]

    @property
    def m(self) -> int:
        return sum(len(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adj]

    @property
    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def add_edges(self, edges: Iterable[tuple[int, int]], n: int | None = None) -> "Graph":
        """New graph with extra edges (and optionally extra isolated vertices)."""
        return Graph.from_edges(self.n if n is None else n, list(self.edges()) + list(edges))

    def is_subgraph_of(self, other: "Graph") -> bool:
        return self.n <= other.n and all(self.adj[v] <= other.adj[v] for v in range(self.n))


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph; ``edges`` keeps multiplicity and may contain loops."""

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        for u, v in self.edges:
            _check_vertex(u, self.n)
            _check_vertex(v, self.n)

    def collapse(self) -> tuple[Graph, dict[str, int]]:
        """Keep one copy of each edge, drop loops; report what was removed."""
        seen: set[tuple[int, int]] = set()
        loops = dups = 0
        for u, v in self.edges:
            if u == v:
                loops += 1
                continue
            e = (min(u, v), max(u, v))
            if e in seen:
                dups += 1
            seen.add(e)
        return Graph.from_edges(self.n, seen), {"loops": loops, "duplicates": dups}


@dataclass(frozen=True)
class BipartiteGraph:
    """Bipartite graph with inputs ``0..n_in-1`` and outputs ``0..n_out-1``."""

    n_in: int
    n_out: int
    edges: frozenset[tuple[int, int]]
    _in_adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)
    _out_adj: tuple[frozenset[int], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        ins: list[set[int]] = [set() for _ in range(self.n_in)]
        outs: list[set[int]] = [set() for _ in range(self.n_out)]
        for i, o in self.edges:
            if not (0 <= i < self.n_in and 0 <= o < self.n_out):
                raise ValueError(f"edge {(i, o)} outside the parts")
            ins[i].add(o)
            outs[o].add(i)
        object.__setattr__(self, "_in_adj", tuple(frozenset(s) for s in ins))
        object.__setattr__(self, "_out_adj", tuple(frozenset(s) for s in outs))

    @classmethod
    def from_edges(cls, n_in: int, n_out: int, edges: Iterable[tuple[int, int]]) -> "BipartiteGraph":
        return cls(n_in, n_out, frozenset((int(i), int(o)) for i, o in edges))

    @classmethod
    def complete(cls, n_in: int, n_out: int) -> "BipartiteGraph":
        return cls.from_edges(n_in, n_out, ((i, o) for i in range(n_in) for o in range(n_out)))

    def out_neighbors(self, i: int) -> frozenset[int]:
        """Outputs adjacent to input ``i``."""
        return self._in_adj[i]

    def in_neighbors(self, o: int) -> frozenset[int]:
        """Inputs adjacent to output ``o``."""
        return self._out_adj[o]

    def boundary(self, inputs: Iterable[int]) -> frozenset[int]:
        out: set[int] = set()
        for i in inputs:
            out |= self._in_adj[i]
        return frozenset(out)

    def reversed(self) -> "BipartiteGraph":
        """Swap the roles of inputs and outputs."""
        return BipartiteGraph.from_edges(self.n_out, self.n_in, ((o, i) for i, o in self.edges))

    def input_degrees(self) -> list[int]:
        return [len(a) for a in self._in_adj]

    def output_degrees(self) -> list[int]:
        return [len(a) for a in self._out_adj]

    def is_regular(self, k: int) -> bool:
        return all(d == k for d in self.input_degrees()) and all(d == k for d in self.output_degrees())

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


@dataclass(frozen=True)
class Partition:
    n: int
    part_of: tuple[int, ...]
    parts: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.part_of) != self.n:
            raise ValueError("part_of must have one entry per vertex")
        seen = sorted(v for p in self.parts for v in p)
        if seen != list(range(self.n)):
            raise ValueError("parts must be disjoint and cover 0..n-1")
        for idx, p in enumerate(self.parts):
            if not p:
                raise ValueError("empty part")
            if any(self.part_of[v] != idx for v in p):
                raise ValueError("part_of disagrees with parts")

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Partition":
        """Build from arbitrary per-vertex labels; parts are numbered by first appearance."""
        index: dict[int, int] = {}
        part_of = []
        for lab in labels:
            part_of.append(index.setdefault(lab, len(index)))
        parts: list[list[int]] = [[] for _ in index]
        for v, p in enumerate(part_of):
            parts[p].append(v)
        return cls(len(labels), tuple(part_of), tuple(tuple(p) for p in parts))

    @property
    def equitable(self) -> bool:
        return len({len(p) for p in self.parts}) <= 1


# ---------------------------------------------------------------- text formats

def parse_edge_list_with_stats(text: str) -> tuple[Graph, int]:
    """Parse ``"n m"`` followed by ``m`` edge lines; returns the graph and the duplicate count.

    Blank lines and lines starting with ``#`` are ignored.
    """
    rows = [(no, ln.strip()) for no, ln in enumerate(text.splitlines(), start=1)]
    rows = [(no, ln) for no, ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise GraphFormatError("line 1: missing header 'n m'")
    no, header = rows[0]
    try:
        n, m = (int(t) for t in header.split())
    except ValueError:
        raise GraphFormatError(f"line {no}: expected header 'n m', got {header!r}") from None
    if n < 0 or m < 0:
        raise GraphFormatError(f"line {no}: negative size in header")
    body = rows[1:]
    if len(body) != m:
        where = body[m][0] if len(body) > m else (body[-1][0] if body else no)
        raise GraphFormatError(f"line {where}: header announces {m} edges, found {len(body)}")
    seen: set[tuple[int, int]] = set()
    dups = 0
    for no, ln in body:
        parts = ln.split()
        if len(parts) != 2:
            raise GraphFormatError(f"line {no}: expected 'u v', got {ln!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphFormatError(f"line {no}: non-integer vertex in {ln!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphFormatError(f"line {no}: vertex out of range 0..{n - 1}")
        if u == v:
            raise GraphFormatError(f"line {no}: loop at vertex {u}")
        e = (min(u, v), max(u, v))
        if e in seen:
            dups += 1
        seen.add(e)
    if dups:
        log.warning("collapsed %d duplicate edge(s)", dups)
    return Graph.from_edges(n, seen), dups


def parse_edge_list(text: str) -> Graph:
    return parse_edge_list_with_stats(text)[0]


def serialize(G: Graph) -> str:
    """Canonical edge-list text (edges sorted, ``u < v``)."""
    lines = [f"{G.n} {G.m}"] + [f"{u} {v}" for u, v in G.edges()]
    return "\n".join(lines) + "\n"


def to_dot(G: Graph, name: str = "G") -> str:
    lines = [f"graph {name} {{"]
    lines += [f"  {v};" for v in range(G.n)]
    lines += [f"  {u} -- {v};" for u, v in G.edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


def parse_bipartite(text: str) -> BipartiteGraph:
    """Bipartite edge list: header ``"n_in n_out m"`` then ``m`` lines ``"input output"``."""
    rows = [(no, ln.strip()) for no, ln in enumerate(text.splitlines(), start=1)]
    rows = [(no, ln) for no, ln in rows if ln and not ln.startswith("#")]
    if not rows:
        raise GraphFormatError("line 1: missing header 'n_in n_out m'")
    no, header = rows[0]
    try:
        n_in, n_out, m = (int(t) for t in header.split())
    except ValueError:
        raise GraphFormatError(f"line {no}: expected header 'n_in n_out m'") from None
    if len(rows) - 1 != m:
        raise GraphFormatError(f"line {no}: header announces {m} edges, found {len(rows) - 1}")
    edges = set()
    for no, ln in rows[1:]:
        try:
            i, o = (int(t) for t in ln.split())
        except ValueError:
            raise GraphFormatError(f"line {no}: expected 'input output', got {ln!r}") from None
        if not (0 <= i < n_in and 0 <= o < n_out):
            raise GraphFormatError(f"line {no}: endpoint out of range")
        edges.add((i, o))
    return BipartiteGraph.from_edges(n_in, n_out, edges)


def serialize_bipartite(B: BipartiteGraph) -> str:
    lines = [f"{B.n_in} {B.n_out} {len(B.edges)}"] + [f"{i} {o}" for i, o in B.sorted_edges()]
    return "\n".join(lines) + "\n"


def bipartite_to_dot(B: BipartiteGraph, name: str = "B") -> str:
    lines = [f"graph {name} {{"]
    lines += [f'  i{i} [label="i{i}"];' for i in range(B.n_in)]
    lines += [f'  o{o} [label="o{o}"];' for o in range(B.n_out)]
    lines += [f"  i{i} -- o{o};" for i, o in B.sorted_edges()]
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------- queries

def boundary(G: Graph, A: Iterable[int]) -> frozenset[int]:
    """Vertices outside ``A`` with a neighbour in ``A``."""
    A = set(A)
    for a in A:
        _check_vertex(a, G.n)
    out: set[int] = set()
    for a in A:
        out |= G.adj[a]
    return frozenset(out - A)


def bfs_distances(G: Graph, source: int) -> list[int]:
    """Distances from ``source``; unreachable vertices get -1."""
    dist = [-1] * G.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in G.adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def diameter(G: Graph) -> int | float:
    """Largest BFS distance, or ``math.inf`` when disconnected."""
    best = 0
    for s in range(G.n):
        d = bfs_distances(G, s)
        if min(d, default=0) < 0:
            return INFINITE
        best = max(best, max(d))
    return best


def connected_components(G: Graph) -> list[list[int]]:
    seen = [False] * G.n
    comps = []
    for s in range(G.n):
        if seen[s]:
            continue
        comp = [v for v, d in enumerate(bfs_distances(G, s)) if d >= 0]
        for v in comp:
            seen[v] = True
        comps.append(comp)
    return comps


def is_connected(G: Graph) -> bool:
    return G.n == 0 or min(bfs_distances(G, 0)) >= 0


def two_coloring(G: Graph) -> list[int] | None:
    """Proper 2-colouring by BFS, or None if G has an odd cycle."""
    color = [-1] * G.n
    for s in range(G.n):
        if color[s] >= 0:
            continue
        color[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in G.adj[v]:
                if color[w] < 0:
                    color[w] = 1 - color[v]
                    queue.append(w)
                elif color[w] == color[v]:
                    return None
    return color


def is_bipartite(G: Graph) -> bool:
    return two_coloring(G) is not None


def complement(G: Graph) -> Graph:
    everything = frozenset(range(G.n))
    return Graph(G.n, tuple(everything - G.adj[v] - {v} for v in range(G.n)))


def is_k_regular(G: Graph, k: int) -> bool:
    if k < 0:
        raise ValueError("k must be non-negative")
    return all(len(a) == k for a in G.adj)


def regular_degree(G: Graph) -> int:
    """The common degree of a regular graph; raises otherwise."""
    degs = set(G.degrees())
    if len(degs) > 1:
        raise ValueError("graph is not regular")
    return degs.pop() if degs else 0


def induced_subgraph(G: Graph, vertices: Sequence[int]) -> Graph:
    """Induced subgraph relabelled in the order given."""
    index = {v: i for i, v in enumerate(vertices)}
    return Graph.from_edges(
        len(vertices),
        ((index[u], index[w]) for u in vertices for w in G.adj[u] if w in index and index[u] < index[w]),
    )


def relabel(G: Graph, perm: Sequence[int]) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    return Graph.from_edges(G.n, ((perm[u], perm[v]) for u, v in G.edges()))


def is_isomorphic(G: Graph, H: Graph) -> bool:
    """Backtracking isomorphism test with degree/neighbour-degree refinement (small graphs)."""
    if G.n != H.n or G.m != H.m or sorted(G.degrees()) != sorted(H.degrees()):
        return False

    def signature(X: Graph, v: int) -> tuple:
        return (X.degree(v), tuple(sorted(X.degree(w) for w in X.adj[v])))

    sig_g = [signature(G, v) for v in range(G.n)]
    sig_h = [signature(H, v) for v in range(H.n)]
    if sorted(sig_g) != sorted(sig_h):
        return False
    order = sorted(range(G.n), key=lambda v: (-G.degree(v), v))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(idx: int) -> bool:
        if idx == len(order):
            return True
        v = order[idx]
        for w in range(H.n):
            if w in used or sig_h[w] != sig_g[v]:
                continue
            if all((u in G.adj[v]) == (mapping[u] in H.adj[w]) for u in mapping):
                mapping[v] = w
                used.add(w)
                if extend(idx + 1):
                    return True
                del mapping[v]
                used.discard(w)
        return False

    return extend(0)


# ---------------------------------------------------------------- standard graphs

def make_rng(seed: int) -> np.random.Generator:
    """The package-wide seeded generator (PCG64)."""
    return np.random.Generator(np.random.PCG64(seed))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, ((i, (i + 1) % n) for i in range(n)))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


_ROBERTSON_CHORDS = [
    (0, 4), (0, 7), (1, 9), (1, 12), (2, 6), (2, 14), (3, 8), (3, 11), (4, 15), (5, 13),
    (5, 17), (6, 10), (7, 16), (8, 13), (9, 17), (10, 15), (11, 18), (12, 16), (14, 18),
]


def robertson_graph() -> Graph:
    """The unique 4-regular graph of girth 5 on 19 vertices: a Hamiltonian cycle plus 19 chords."""
    return cycle_graph(19).add_edges(_ROBERTSON_CHORDS)


def disjoint_union(G: Graph, H: Graph) -> Graph:
    return Graph.from_edges(G.n + H.n, G.edges() + [(u + G.n, v + G.n) for u, v in H.edges()])


def random_regular_graph(n: int, k: int, rng, max_tries: int = 1000) -> Graph:
    """Random k-regular simple graph (Steger-Wormald pairing).

    Free points are paired two at a time, each pair drawn uniformly among
    those that create neither a loop nor a repeated edge; a dead end restarts.
    """
    if n * k % 2 or k >= n:
        raise ValueError("need nk even and k < n")
    for _ in range(max_tries):
        free = [v for v in range(n) for _ in range(k)]
        edges: set[tuple[int, int]] = set()
        while free:
            for _ in range(50):
                i, j = (int(x) for x in rng.choice(len(free), size=2, replace=False))
                a, b = free[i], free[j]
                if a != b and (min(a, b), max(a, b)) not in edges:
                    break
            else:
                ok = [(i, j) for i in range(len(free)) for j in range(i + 1, len(free))
                      if free[i] != free[j] and (min(free[i], free[j]), max(free[i], free[j])) not in edges]
                if not ok:
                    break
                i, j = ok[int(rng.integers(len(ok)))]
                a, b = free[i], free[j]
            edges.add((min(a, b), max(a, b)))
            for idx in sorted((i, j), reverse=True):
                free.pop(idx)
        if not free:
            return Graph.from_edges(n, edges)
    raise RuntimeError("pairing kept reaching dead ends")


def random_connected_regular_graph(n: int, k: int, rng, max_tries: int = 1000) -> Graph:
    for _ in range(max_tries):
        G = random_regular_graph(n, k, rng)
        if is_connected(G):
            return G
    raise RuntimeError("no connected sample found")


def random_graph(n: int, p: float, rng) -> Graph:
    """Erdős–Rényi G(n, p)."""
    return Graph.from_edges(n, ((i, j) for i in range(n) for j in range(i + 1, n) if rng.random() < p))


def random_bounded_degree_graph(n: int, k: int, attempts: int, rng) -> Graph:
    """Try ``attempts`` random vertex pairs, keeping an edge when both degrees stay ≤ k."""
    adj: list[set[int]] = [set() for _ in range(n)]
    for _ in range(attempts):
        u, v = int(rng.integers(n)), int(rng.integers(n))
        if u != v and v not in adj[u] and len(adj[u]) < k and len(adj[v]) < k:
            adj[u].add(v)
            adj[v].add(u)
    return Graph(n, tuple(frozenset(a) for a in adj))
