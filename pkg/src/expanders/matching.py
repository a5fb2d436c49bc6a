"""Bipartite matchings: Hopcroft–Karp, Hall violators, bigamist matchings, König decomposition."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph_core import BipartiteGraph
from .subsets import iter_blocks, mask_of, popcount


class ContractError(ValueError):
    """Input violates an operation's precondition."""


@dataclass(frozen=True)
class Matching:
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self) -> None:
        ins = [i for i, _ in self.pairs]
        outs = [o for _, o in self.pairs]
        if len(set(ins)) != len(ins) or len(set(outs)) != len(outs):
            raise ValueError("a vertex is matched twice")

    def __len__(self) -> int:
        return len(self.pairs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def outputs(self) -> frozenset[int]:
        return frozenset(o for _, o in self.pairs)

    def is_matching_of(self, B: BipartiteGraph) -> bool:
        return self.pairs <= B.edges


def _hopcroft_karp(n_in: int, adj: list[list[int]], n_out: int) -> list[int]:
    """Return ``mate_in`` (output matched to each input, -1 if none)."""
    INF = n_in + n_out + 1
    mate_in = [-1] * n_in
    mate_out = [-1] * n_out
    while True:
        dist = [INF] * n_in
        queue = deque()
        for i in range(n_in):
            if mate_in[i] < 0:
                dist[i] = 0
                queue.append(i)
        found = False
        while queue:
            i = queue.popleft()
            for o in adj[i]:
                j = mate_out[o]
                if j < 0:
                    found = True
                elif dist[j] == INF:
                    dist[j] = dist[i] + 1
                    queue.append(j)
        if not found:
            return mate_in
        pointer = [0] * n_in

        def augment(root: int) -> bool:
            # iterative DFS along the BFS layering
            stack = [root]
            path: list[tuple[int, int]] = []
            while stack:
                i = stack[-1]
                advanced = False
                while pointer[i] < len(adj[i]):
                    o = adj[i][pointer[i]]
                    pointer[i] += 1
                    j = mate_out[o]
                    if j < 0:
                        path.append((i, o))
                        for a, b in path:
                            mate_in[a] = b
                            mate_out[b] = a
                        return True
                    if dist[j] == dist[i] + 1:
                        path.append((i, o))
                        stack.append(j)
                        advanced = True
                        break
                if not advanced:
                    dist[i] = INF
                    stack.pop()
                    if path:
                        path.pop()
            return False

        for i in range(n_in):
            if mate_in[i] < 0:
                augment(i)


def _adjacency(B: BipartiteGraph) -> list[list[int]]:
    return [sorted(B.out_neighbors(i)) for i in range(B.n_in)]


def maximum_matching(B: BipartiteGraph) -> Matching:
    mate = _hopcroft_karp(B.n_in, _adjacency(B), B.n_out)
    return Matching(frozenset((i, o) for i, o in enumerate(mate) if o >= 0))


def hall_violator(B: BipartiteGraph) -> frozenset[int] | None:
    """A set of inputs with fewer neighbours than members, or None if the inputs can be matched.

    The set is everything reachable by alternating paths from the lowest-index
    unmatched input after a maximum matching, so ``|∂A| = |A| - 1``.
    """
    adj = _adjacency(B)
    mate_in = _hopcroft_karp(B.n_in, adj, B.n_out)
    unmatched = [i for i in range(B.n_in) if mate_in[i] < 0]
    if not unmatched:
        return None
    mate_out = [-1] * B.n_out
    for i, o in enumerate(mate_in):
        if o >= 0:
            mate_out[o] = i
    root = unmatched[0]
    reached = {root}
    queue = deque([root])
    while queue:
        i = queue.popleft()
        for o in adj[i]:
            j = mate_out[o]
            if j >= 0 and j not in reached:
                reached.add(j)
                queue.append(j)
    return frozenset(reached)


def bigamist_matching(B: BipartiteGraph) -> tuple[Matching, Matching] | frozenset[int]:
    """Two input-covering matchings with disjoint output sets, or a set A with ``|∂A| < 2|A|``.

    Each input ``v`` is doubled into ``2v`` (plus copy) and ``2v+1`` (minus copy).
    """
    doubled = BipartiteGraph.from_edges(
        2 * B.n_in, B.n_out, ((2 * i + s, o) for i, o in B.edges for s in (0, 1))
    )
    violator = hall_violator(doubled)
    if violator is not None:
        return frozenset(v // 2 for v in violator)
    full = maximum_matching(doubled)
    plus = Matching(frozenset((i // 2, o) for i, o in full.pairs if i % 2 == 0))
    minus = Matching(frozenset((i // 2, o) for i, o in full.pairs if i % 2 == 1))
    return plus, minus


def _perfect_matching_exists(adj: list[list[int]], n_out: int) -> bool:
    mate = _hopcroft_karp(len(adj), adj, n_out)
    return all(o >= 0 for o in mate)


def lexicographic_perfect_matching(B: BipartiteGraph) -> Matching:
    """The perfect matching whose output sequence ``(π(0), π(1), ...)`` is lexicographically least."""
    if B.n_in != B.n_out:
        raise ContractError("perfect matching needs equal parts")
    n = B.n_in
    adj = _adjacency(B)
    if not _perfect_matching_exists(adj, n):
        raise ContractError("no perfect matching exists")
    chosen: list[int] = []
    used: set[int] = set()
    for i in range(n):
        for o in adj[i]:
            if o in used:
                continue
            rest = [[x for x in adj[j] if x not in used and x != o] for j in range(i + 1, n)]
            if _perfect_matching_exists(rest, n):
                chosen.append(o)
                used.add(o)
                break
        else:  # pragma: no cover - excluded by the existence check above
            raise ContractError("greedy extension failed")
    return Matching(frozenset(enumerate(chosen)))


def koenig_decomposition(B: BipartiteGraph, k: int) -> list[tuple[int, ...]]:
    """Split a k-regular bipartite graph into k perfect matchings, each given as a permutation."""
    if B.n_in != B.n_out:
        raise ContractError("parts must have equal size")
    if not B.is_regular(k):
        raise ContractError(f"graph is not {k}-regular")
    n = B.n_in
    remaining = {i: set(B.out_neighbors(i)) for i in range(n)}
    perms = []
    for _ in range(k):
        adj = [sorted(remaining[i]) for i in range(n)]
        mate = _hopcroft_karp(n, adj, n)
        if any(o < 0 for o in mate):  # pragma: no cover - impossible for regular graphs
            raise ContractError("regular bipartite graph without perfect matching")
        for i, o in enumerate(mate):
            remaining[i].discard(o)
        perms.append(tuple(mate))
    return perms


def bigraph_from_permutations(perms: Iterable[tuple[int, ...]]) -> BipartiteGraph:
    perms = list(perms)
    n = len(perms[0])
    return BipartiteGraph.from_edges(n, n, ((j, p[j]) for p in perms for j in range(n)))


def _side_expands(n: int, nbr_masks: list[int]) -> bool:
    for blk in iter_blocks(n, nbr_masks):
        valid = (blk.sizes > 0) & (2 * blk.sizes <= n)
        if np.any(popcount(blk.nbhd)[valid] < blk.sizes[valid]):
            return False
    return True


def has_two_sided_expansion(B: BipartiteGraph) -> bool:
    """Every set on either side with ``2|A| ≤ n`` has at least ``|A|`` neighbours."""
    if B.n_in != B.n_out:
        raise ContractError("parts must have equal size")
    n = B.n_in
    ins = [mask_of(B.out_neighbors(i)) for i in range(n)]
    outs = [mask_of(B.in_neighbors(o)) for o in range(n)]
    return _side_expands(n, ins) and _side_expands(n, outs)
