"""Incidence matrices, Laplacians, random-walk operators and tree return probabilities."""
from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np

from .graph_core import Graph, connected_components, diameter, is_bipartite, regular_degree

SYMMETRY_TOL = 1e-12


def incidence_matrix(G: Graph, orientation: Sequence[bool] | None = None) -> np.ndarray:
    """Edge-by-vertex matrix with ``(df)(e) = f(head) - f(tail)``.

    Edge ``e = (u, v)`` (``u < v``, in ``G.edges()`` order) points from u to v
    unless ``orientation[e]`` is True, which reverses it.
    """
    edges = G.edges()
    if orientation is not None and len(orientation) != len(edges):
        raise ValueError("one orientation flag per edge required")
    d = np.zeros((len(edges), G.n), dtype=np.int64)
    for e, (u, v) in enumerate(edges):
        tail, head = (v, u) if orientation is not None and orientation[e] else (u, v)
        d[e, head] += 1
        d[e, tail] -= 1
    return d


def laplacian(G: Graph, orientation: Sequence[bool] | None = None) -> np.ndarray:
    """``dᵀd`` as an exact integer matrix."""
    d = incidence_matrix(G, orientation)
    return d.T @ d


def adjacency_matrix(G: Graph) -> np.ndarray:
    A = np.zeros((G.n, G.n), dtype=np.int64)
    for u, v in G.edges():
        A[u, v] = A[v, u] = 1
    return A


def eigenvalues(M: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a real symmetric matrix (LAPACK ``syevd`` via numpy)."""
    M = np.asarray(M, dtype=float)
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError("square matrix required")
    if M.size and np.max(np.abs(M - M.T)) > SYMMETRY_TOL:
        raise ValueError("matrix is not symmetric")
    return np.linalg.eigvalsh(M)


def lambda1(G: Graph) -> float:
    """Smallest nonzero Laplacian eigenvalue; 0.0 for a disconnected graph."""
    if len(connected_components(G)) > 1:
        return 0.0
    return float(eigenvalues(laplacian(G))[1])


def markov_second_norm(G: Graph) -> float:
    """Largest ``|μ|`` among eigenvalues of A/k after removing 1 (and -1 when bipartite)."""
    try:
        k = regular_degree(G)
    except ValueError:
        raise ValueError("markov_second_norm needs a regular graph") from None
    if k == 0 or len(connected_components(G)) > 1:
        raise ValueError("graph must be connected with positive degree")
    mu = eigenvalues(adjacency_matrix(G) / k)
    rest = mu[:-1]
    if is_bipartite(G):
        rest = rest[1:]
    return float(np.max(np.abs(rest))) if rest.size else 0.0


def tree_distance_distribution(k: int, n: int) -> list[Fraction]:
    """Distribution of the walker's distance from the origin after n steps on the k-regular tree."""
    if k < 2 or n < 0:
        raise ValueError("need k ≥ 2 and n ≥ 0")
    counts = _tree_walk_counts(k, n)
    total = k ** n
    return [Fraction(c, total) for c in counts]


@lru_cache(maxsize=None)
def _tree_walk_counts(k: int, n: int) -> tuple[int, ...]:
    """Number of length-n walks from the root ending at each distance."""
    if n == 0:
        return (1,)
    prev = _tree_walk_counts(k, n - 1)
    nxt = [0] * (len(prev) + 1)
    for d, c in enumerate(prev):
        if not c:
            continue
        if d == 0:
            nxt[1] += k * c
        else:
            nxt[d + 1] += (k - 1) * c
            nxt[d - 1] += c
    return tuple(nxt)


def tree_return_probability(k: int, n: int) -> Fraction:
    """Exact probability that simple random walk on the k-regular tree is at the origin at time n."""
    return tree_distance_distribution(k, n)[0]


def tree_norm(k: int) -> float:
    if k < 2:
        raise ValueError("k ≥ 2 required")
    return 2 * math.sqrt(k - 1) / k


def tree_first_return_gf(k: int, z: complex | float) -> complex | float:
    """Generating function of first-return probabilities from a neighbour, ``T(z)``."""
    if z == 0:
        return 0.0
    root = (k * k - 4 * (k - 1) * z * z) ** 0.5
    return (k - root) / (2 * (k - 1) * z)


def tree_return_gf(k: int, z: float) -> float:
    """``Σ r_n zⁿ = 1 / (1 - z T(z))``: the return generating function."""
    return 1 / (1 - z * tree_first_return_gf(k, z))


def tree_branch_point(k: int) -> float:
    """Smallest positive zero of ``k² - 4(k-1)z²``; its reciprocal is the tree norm."""
    return k / (2 * math.sqrt(k - 1))


def markov_norm_estimate(k: int, N: int) -> list[float]:
    """``(r_{2n})^{1/(2n)}`` for ``n = 1..N`` (computed from exact integers via logarithms)."""
    if N < 1:
        raise ValueError("N ≥ 1 required")
    out = []
    for n in range(1, N + 1):
        count = _tree_walk_counts(k, 2 * n)[0]
        out.append(math.exp((math.log(count) - 2 * n * math.log(k)) / (2 * n)))
    return out


def return_probability_below_norm(k: int, n: int) -> bool:
    """Exact check ``r_{2n} ≤ (2√(k-1)/k)^{2n} = (4(k-1)/k²)^n``."""
    return tree_return_probability(k, 2 * n) <= Fraction(4 * (k - 1), k * k) ** n


def dyadic_roots_nondecreasing(k: int, max_exponent: int) -> bool:
    """Exact check that ``(r_{2^a})^{2^{-a}}`` is nondecreasing for ``a = 1..max_exponent``.

    Consecutive terms compare as ``r_{2^a}² ≤ r_{2^{a+1}}``.
    """
    return all(
        tree_return_probability(k, 2 ** a) ** 2 <= tree_return_probability(k, 2 ** (a + 1))
        for a in range(1, max_exponent)
    )


def alon_boppana_radius(G: Graph) -> int:
    diam = diameter(G)
    if diam == math.inf:
        raise ValueError("graph is disconnected")
    if diam < 4:
        raise ValueError(f"diameter {diam} too small: need at least 4")
    return (int(diam) - 2) // 2


def alon_boppana_lower_bound(G: Graph) -> float:
    """``(r̃_{2r})^{1/(2r)}`` on the k-regular tree with ``r = ⌊(diam - 2)/2⌋``; bounds the second norm from below."""
    k = regular_degree(G)
    r = alon_boppana_radius(G)
    count = _tree_walk_counts(k, 2 * r)[0]
    return math.exp((math.log(count) - 2 * r * math.log(k)) / (2 * r))


def is_ramanujan(G: Graph, tol: float = 1e-9) -> bool:
    return markov_second_norm(G) <= tree_norm(regular_degree(G)) + tol
