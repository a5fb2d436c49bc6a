"""Bounded concentrators from bi-expanders, recursive superconcentrators, and their verification."""
from __future__ import annotations

import itertools
import math
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

import numpy as np

from .expansion_metrics import bi_expander_constant
from .graph_core import BipartiteGraph, make_rng
from .subsets import MAX_BITS, iter_blocks, mask_of, members, popcount


@dataclass(frozen=True)
class Concentrator:
    graph: BipartiteGraph
    n: int
    theta: Fraction
    k_density: Fraction
    alpha: Fraction = Fraction(1, 2)

    def __post_init__(self) -> None:
        if self.graph.n_in != self.n or Fraction(self.graph.n_out) != self.theta * self.n:
            raise ValueError("output count must equal θn")
        if len(self.graph.edges) > self.k_density * self.n:
            raise ValueError("edge count exceeds the density bound")


@dataclass(frozen=True)
class ConcentratorCheck:
    ok: bool
    violator: frozenset[int] | None
    exhaustive: bool
    tested: int


def circulant_bigraph(m: int, k: int) -> BipartiteGraph:
    """Input ``i`` joined to outputs ``i, i+1, ..., i+k-1`` (mod m); complete when ``k ≥ m``."""
    if k >= m:
        return BipartiteGraph.complete(m, m)
    return BipartiteGraph.from_edges(m, m, ((i, (i + s) % m) for i in range(m) for s in range(k)))


def build_bounded_concentrator(B: BipartiteGraph, r: int, certified: bool = False) -> Concentrator:
    """Inputs: the m inputs of B followed by m/r extra inputs; extra input i feeds output block i (size r).

    Unless ``certified``, the bi-expander constant of B is checked to be at least 1/(r-1).
    """
    m = B.n_in
    if r < 2 or B.n_out != m or m % r:
        raise ValueError("need r ≥ 2, equal parts and r | m")
    degs = set(B.input_degrees())
    if len(degs) != 1:
        raise ValueError("bi-expander must have regular inputs")
    k = degs.pop()
    if not certified:
        if m > MAX_BITS:
            raise ValueError("bi-expander too large to certify; pass certified=True")
        if bi_expander_constant(B) < Fraction(1, r - 1):
            raise ValueError(f"bi-expander constant below 1/(r-1) = 1/{r - 1}")
    n = m * (r + 1) // r
    edges = list(B.edges)
    edges += [(m + i, i * r + t) for i in range(m // r) for t in range(r)]
    graph = BipartiteGraph.from_edges(n, m, edges)
    return Concentrator(graph, n, Fraction(r, r + 1), Fraction((k + 1) * r, r + 1))


def verify_concentrator(C: Concentrator, samples: int = 10_000, seed: int = 0) -> ConcentratorCheck:
    """Every input set with ``|A| ≤ αn`` has at least ``|A|`` neighbours.

    Exhaustive up to 24 inputs; beyond that, random sets of every admissible size are tested.
    """
    G = C.graph
    n = C.n
    limit = C.alpha * n
    nbr = [mask_of(G.out_neighbors(i)) for i in range(n)]
    if n <= MAX_BITS:
        tested = 0
        for blk in iter_blocks(n, nbr):
            valid = (blk.sizes > 0) & (blk.sizes <= limit)
            tested += int(valid.sum())
            bad = valid & (popcount(blk.nbhd) < blk.sizes)
            if bad.any():
                return ConcentratorCheck(False, members(int(blk.masks[np.nonzero(bad)[0][0]])), True, tested)
        return ConcentratorCheck(True, None, True, tested)
    rng = make_rng(seed)
    top = math.floor(limit)
    for t in range(samples):
        size = 1 + t % top
        A = frozenset(int(x) for x in rng.choice(n, size=size, replace=False))
        if len(G.boundary(A)) < len(A):
            return ConcentratorCheck(False, A, False, t + 1)
    return ConcentratorCheck(True, None, False, samples)


# ---------------------------------------------------------------- flows

class UnitVertexFlow:
    """Max-flow with unit vertex capacities on a directed graph (node splitting + BFS augmentation).

    Vertex v becomes ``2v`` (in) and ``2v+1`` (out) joined by a unit arc.  Arcs
    from a super source to every vertex and from every vertex to a super sink
    exist with capacity 0 and are switched on per query.
    """

    def __init__(self, num_vertices: int, arcs: Iterable[tuple[int, int]]):
        self.source = 2 * num_vertices
        self.sink = self.source + 1
        self.head: list[int] = []
        self.cap0: list[int] = []
        self.out: list[list[int]] = [[] for _ in range(self.sink + 1)]
        for v in range(num_vertices):
            self._arc(2 * v, 2 * v + 1, 1)
        for u, v in arcs:
            self._arc(2 * u + 1, 2 * v, 1)
        self.from_source = [self._arc(self.source, 2 * v, 0) for v in range(num_vertices)]
        self.to_sink = [self._arc(2 * v + 1, self.sink, 0) for v in range(num_vertices)]

    def _arc(self, a: int, b: int, c: int) -> int:
        idx = len(self.head)
        self.out[a].append(idx)
        self.head.append(b)
        self.cap0.append(c)
        self.out[b].append(idx + 1)
        self.head.append(a)
        self.cap0.append(0)
        return idx

    def max_flow(self, sources: Sequence[int], sinks: Sequence[int]) -> int:
        head, out = self.head, self.out
        cap = self.cap0[:]
        for s in sources:
            cap[self.from_source[s]] = 1
        for t in sinks:
            cap[self.to_sink[t]] = 1
        src, snk = self.source, self.sink
        flow = 0
        while True:
            parent = [-1] * (snk + 1)
            parent[src] = -2
            queue = deque([src])
            while queue and parent[snk] == -1:
                a = queue.popleft()
                for e in out[a]:
                    b = head[e]
                    if cap[e] and parent[b] == -1:
                        parent[b] = e
                        queue.append(b)
            if parent[snk] == -1:
                return flow
            b = snk
            while b != src:
                e = parent[b]
                cap[e] -= 1
                cap[e ^ 1] += 1
                b = head[e ^ 1]
            flow += 1


def max_flow(num_vertices: int, arcs: Iterable[tuple[int, int]], sources: Sequence[int], sinks: Sequence[int]) -> int:
    """Maximum number of vertex-disjoint source→sink paths."""
    return UnitVertexFlow(num_vertices, arcs).max_flow(sources, sinks)


# ---------------------------------------------------------------- superconcentrators

@dataclass(frozen=True)
class SuperconcentratorDAG:
    num_vertices: int
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    arcs: tuple[tuple[int, int], ...]
    layer: tuple[int, ...]  # depth marker of every vertex

    def __post_init__(self) -> None:
        if len(self.inputs) != len(self.outputs):
            raise ValueError("inputs and outputs must have equal size")
        for u, v in self.arcs:
            if not self.layer[u] < self.layer[v]:
                raise ValueError(f"arc {u}->{v} does not go to a deeper layer")
        heads = {v for _, v in self.arcs}
        tails = {u for u, _ in self.arcs}
        if heads & set(self.inputs) or tails & set(self.outputs):
            raise ValueError("inputs must be sources and outputs sinks")

    @property
    def n(self) -> int:
        return len(self.inputs)

    @property
    def edge_count(self) -> int:
        return len(self.arcs)


@dataclass(frozen=True)
class SuperconcentratorCheck:
    ok: bool
    counterexample: tuple[frozenset[int], frozenset[int], int] | None
    exhaustive: bool
    tested: int
    total: int


def complete_superconcentrator(n: int) -> SuperconcentratorDAG:
    """K_{n,n} from inputs ``0..n-1`` to outputs ``n..2n-1`` (contains the identity pairing)."""
    arcs = tuple((i, n + o) for i in range(n) for o in range(n))
    return SuperconcentratorDAG(2 * n, tuple(range(n)), tuple(range(n, 2 * n)), arcs, (0,) * n + (1,) * n)


def superconcentrator_base_size(k: int, r: int) -> int:
    """Fixed point ``l = (2k+3)r + 1`` of the density recursion."""
    return (2 * k + 3) * r + 1


Supplier = Callable[[int, int], BipartiteGraph]


def build_superconcentrator(
    n: int, r: int, k: int, base_size: int | None = None, supplier: Supplier = circulant_bigraph
) -> SuperconcentratorDAG:
    """Recursive construction down to ``K_{base,base}``; sizes follow ``n -> n r/(r+1)``.

    ``supplier(m, k)`` provides the (m, k) bi-expander used at each level; its
    constant is checked to be at least 1/(r-1).
    """
    base = superconcentrator_base_size(k, r) if base_size is None else base_size
    if n == base:
        return complete_superconcentrator(n)
    if n < base or (n * r) % (r + 1) or (n * r // (r + 1)) % r:
        raise ValueError(f"size {n} does not reduce to base {base} with ratio {r}/{r + 1}")
    m = n * r // (r + 1)
    conc = build_bounded_concentrator(supplier(m, k), r)
    inner = build_superconcentrator(m, r, k, base, supplier)
    # layout: inputs 0..n-1, outputs n..2n-1, inner DAG shifted by 2n
    shift = 2 * n
    inner_in = [shift + v for v in inner.inputs]
    inner_out = [shift + v for v in inner.outputs]
    arcs = [(i, inner_in[o]) for i, o in conc.graph.edges]
    arcs += [(inner_out[o], n + i) for i, o in conc.graph.edges]
    arcs += [(i, n + i) for i in range(n)]
    arcs += [(shift + u, shift + v) for u, v in inner.arcs]
    depth = max(inner.layer) + 2
    layer = [0] * n + [depth] * n + [x + 1 for x in inner.layer]
    return SuperconcentratorDAG(
        2 * n + inner.num_vertices, tuple(range(n)), tuple(range(n, 2 * n)), tuple(sorted(arcs)), tuple(layer)
    )


def verify_superconcentrator(
    D: SuperconcentratorDAG, exhaustive_limit: int = 10**6, samples: int = 10**4, seed: int = 0
) -> SuperconcentratorCheck:
    """Check that every equal-size pair (A ⊆ inputs, B ⊆ outputs) is joined by |A| disjoint paths."""
    n = D.n
    total = sum(math.comb(n, r) ** 2 for r in range(1, n + 1))
    flow = UnitVertexFlow(D.num_vertices, D.arcs)

    def check(A: tuple[int, ...], B: tuple[int, ...]) -> bool:
        return flow.max_flow(A, B) == len(A)

    if total <= exhaustive_limit:
        tested = 0
        for r in range(1, n + 1):
            for A in itertools.combinations(D.inputs, r):
                for B in itertools.combinations(D.outputs, r):
                    tested += 1
                    if not check(A, B):
                        return SuperconcentratorCheck(False, (frozenset(A), frozenset(B), r), True, tested, total)
        return SuperconcentratorCheck(True, None, True, tested, total)
    rng = make_rng(seed)
    weights = np.array([math.comb(n, r) ** 2 for r in range(1, n + 1)], dtype=float)
    weights /= weights.sum()
    for t in range(samples):
        r = 1 + int(rng.choice(n, p=weights))
        A = tuple(sorted(D.inputs[int(x)] for x in rng.choice(n, size=r, replace=False)))
        B = tuple(sorted(D.outputs[int(x)] for x in rng.choice(n, size=r, replace=False)))
        if not check(A, B):
            return SuperconcentratorCheck(False, (frozenset(A), frozenset(B), r), False, t + 1, total)
    return SuperconcentratorCheck(True, None, False, samples, total)


# ---------------------------------------------------------------- serialisation

def serialize_dag(D: SuperconcentratorDAG) -> str:
    """Text form: header lines, then one ``layer`` section per depth listing its vertices and outgoing arcs."""
    lines = [
        f"vertices {D.num_vertices}",
        "inputs " + " ".join(map(str, D.inputs)),
        "outputs " + " ".join(map(str, D.outputs)),
    ]
    by_tail: dict[int, list[int]] = {}
    for u, v in D.arcs:
        by_tail.setdefault(u, []).append(v)
    for depth in sorted(set(D.layer)):
        verts = [v for v in range(D.num_vertices) if D.layer[v] == depth]
        lines.append(f"layer {depth} " + " ".join(map(str, verts)))
        for u in verts:
            for v in by_tail.get(u, []):
                lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"


def parse_dag(text: str) -> SuperconcentratorDAG:
    num = None
    inputs: tuple[int, ...] = ()
    outputs: tuple[int, ...] = ()
    layer: dict[int, int] = {}
    arcs = []
    current = None
    for no, raw in enumerate(text.splitlines(), start=1):
        ln = raw.strip()
        if not ln or ln.startswith("#"):
            continue
        word, *rest = ln.split()
        try:
            if word == "vertices":
                num = int(rest[0])
            elif word == "inputs":
                inputs = tuple(int(x) for x in rest)
            elif word == "outputs":
                outputs = tuple(int(x) for x in rest)
            elif word == "layer":
                current = int(rest[0])
                for v in rest[1:]:
                    layer[int(v)] = current
            else:
                u, v = int(word), int(rest[0])
                if len(rest) != 1 or current is None or layer.get(u) != current:
                    raise ValueError
                arcs.append((u, v))
        except (ValueError, IndexError):
            raise ValueError(f"line {no}: cannot parse {ln!r}") from None
    if num is None or sorted(layer) != list(range(num)):
        raise ValueError("DAG text must declare every vertex in some layer")
    return SuperconcentratorDAG(num, inputs, outputs, tuple(sorted(arcs)), tuple(layer[v] for v in range(num)))
