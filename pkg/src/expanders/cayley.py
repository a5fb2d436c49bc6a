"""Cayley graphs of finite matrix groups, the Z(n,p) vector graphs, and the random permutation model."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Hashable, NamedTuple, Sequence

import numpy as np

from .graph_core import BipartiteGraph, Graph, Partition, make_rng

Matrix = tuple[tuple[int, ...], ...]


# ---------------------------------------------------------------- integer / modular matrices

def identity(n: int) -> Matrix:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def mat_mul(a: Matrix, b: Matrix, modulus: int | None = None) -> Matrix:
    n, inner, cols = len(a), len(b), len(b[0])
    out = []
    for i in range(n):
        row = []
        for j in range(cols):
            s = sum(a[i][t] * b[t][j] for t in range(inner))
            row.append(s % modulus if modulus else s)
        out.append(tuple(row))
    return tuple(out)


def mat_vec(a: Matrix, v: Sequence[int], modulus: int | None = None) -> tuple[int, ...]:
    out = tuple(sum(a[i][t] * v[t] for t in range(len(v))) for i in range(len(a)))
    return tuple(x % modulus for x in out) if modulus else out


def reduce_mod(a: Matrix, modulus: int) -> Matrix:
    return tuple(tuple(x % modulus for x in row) for row in a)


def determinant(a: Matrix) -> int:
    """Exact determinant by fraction-free Gaussian elimination (Bareiss)."""
    m = [list(row) for row in a]
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((r for r in range(k + 1, n) if m[r][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


@dataclass(frozen=True)
class MatrixModM:
    entries: Matrix
    m: int

    def __post_init__(self) -> None:
        if any(x != x % self.m for row in self.entries for x in row):
            raise ValueError("entries must be reduced modulo m")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __mul__(self, other: "MatrixModM") -> "MatrixModM":
        return MatrixModM(mat_mul(self.entries, other.entries, self.m), self.m)

    def is_special(self) -> bool:
        return determinant(self.entries) % self.m == 1 % self.m


class GeneratorSet(NamedTuple):
    """``A, A⁻¹, B, B⁻¹`` over the integers."""

    A: Matrix
    A_inv: Matrix
    B: Matrix
    B_inv: Matrix

    def symmetric(self) -> list[Matrix]:
        return [self.A, self.A_inv, self.B, self.B_inv]


def sl_generators(n: int) -> GeneratorSet:
    """Transvection ``A = I + E_{12}`` and signed cycle ``B`` with rows ``e_i B = e_{i+1}``, ``e_n B = (-1)^{n-1} e_1``."""
    if n < 2:
        raise ValueError("n ≥ 2 required")
    A = [list(r) for r in identity(n)]
    A[0][1] = 1
    A_inv = [list(r) for r in identity(n)]
    A_inv[0][1] = -1
    B = [[0] * n for _ in range(n)]
    for i in range(n - 1):
        B[i][i + 1] = 1
    B[n - 1][0] = (-1) ** (n - 1)
    B_inv = [[B[j][i] for j in range(n)] for i in range(n)]  # signed permutation: inverse = transpose
    freeze = lambda M: tuple(tuple(r) for r in M)  # noqa: E731
    return GeneratorSet(freeze(A), freeze(A_inv), freeze(B), freeze(B_inv))


# ---------------------------------------------------------------- Cayley graphs

class CayleyGraph(NamedTuple):
    graph: Graph
    degree: int
    elements: list


def cayley_graph_of(identity_element: Hashable, generators: Sequence[Hashable],
                    multiply: Callable[[Hashable, Hashable], Hashable], cap: int = 10**5) -> CayleyGraph:
    """BFS closure of the identity; ``x ~ x·s`` for each generator s (loops and repeats dropped)."""
    index = {identity_element: 0}
    elements = [identity_element]
    queue = deque([identity_element])
    while queue:
        x = queue.popleft()
        for s in generators:
            y = multiply(x, s)
            if y not in index:
                if len(elements) >= cap:
                    raise ValueError(f"group larger than cap {cap}")
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    edges = set()
    for x in elements:
        for s in generators:
            a, b = index[x], index[multiply(x, s)]
            if a != b:
                edges.add((min(a, b), max(a, b)))
    G = Graph.from_edges(len(elements), edges)
    degs = set(G.degrees())
    if len(degs) != 1:  # pragma: no cover - Cayley graphs of symmetric sets are regular
        raise RuntimeError("Cayley graph is not regular; is the generator set symmetric?")
    return CayleyGraph(G, degs.pop(), elements)


def cayley_graph(generators: Sequence[Matrix], modulus: int, cap: int = 10**5) -> CayleyGraph:
    """Cayley graph of the group generated by integer matrices reduced modulo ``modulus``."""
    gens = [reduce_mod(g, modulus) for g in generators]
    gens_set = set(gens)
    inverses = {g for g in gens_set for h in gens_set if mat_mul(g, h, modulus) == reduce_mod(identity(len(g)), modulus)}
    if inverses != gens_set:
        raise ValueError("generator set is not closed under inverses")
    return cayley_graph_of(reduce_mod(identity(len(gens[0])), modulus), gens,
                           lambda a, b: mat_mul(a, b, modulus), cap)


# ---------------------------------------------------------------- Z(n, p)

def vector_index(v: Sequence[int], p: int) -> int:
    """Nonzero vector of F_pⁿ to its index ``Σ v_i p^i - 1``."""
    return sum(x * p ** i for i, x in enumerate(v)) - 1


def index_vector(idx: int, n: int, p: int) -> tuple[int, ...]:
    idx += 1
    out = []
    for _ in range(n):
        idx, r = divmod(idx, p)
        out.append(r)
    return tuple(out)


def unit_vector(n: int, i: int) -> tuple[int, ...]:
    """``e_i`` with 1-based ``i``."""
    return tuple(int(j == i - 1) for j in range(n))


def _vector_neighbours(v: tuple[int, ...], gens: GeneratorSet, p: int) -> set[tuple[int, ...]]:
    return {mat_vec(g, v, p) for g in gens.symmetric()}


def znp_graph(n: int, p: int) -> Graph:
    """Nonzero vectors of F_pⁿ with α ~ A^{±1}α and α ~ B^{±1}α."""
    size = p ** n - 1
    if size > 10**5:
        raise ValueError("p^n - 1 exceeds 10^5")
    gens = sl_generators(n)
    edges = set()
    for idx in range(size):
        v = index_vector(idx, n, p)
        for w in _vector_neighbours(v, gens, p):
            j = vector_index(w, p)
            if j != idx:
                edges.add((min(idx, j), max(idx, j)))
    return Graph.from_edges(size, edges)


def orbit_partition(cg: CayleyGraph, n: int, p: int) -> Partition:
    """Group elements x labelled by ``x⁻¹ e₁``; the induced quotient is Z(n, p)."""
    labels = []
    e1 = unit_vector(n, 1)
    for x in cg.elements:
        inv = _inverse_mod(x, p)
        labels.append(vector_index(mat_vec(inv, e1, p), p))
    return Partition.from_labels(labels)


def _inverse_mod(x: Matrix, p: int) -> Matrix:
    # x has finite order in SL_n(F_p): x^{-1} = x^{ord-1}
    power, prev = x, identity(len(x))
    eye = reduce_mod(identity(len(x)), p)
    while power != eye:
        prev = power
        power = mat_mul(power, x, p)
    return prev if x != eye else eye


class YnWitness(NamedTuple):
    Y: frozenset[tuple[int, ...]]
    boundary: frozenset[tuple[int, ...]]
    boundary_size: int
    ratio: Fraction


def yn_counterexample(n: int, p: int) -> YnWitness:
    """``Y = {e₃, ..., e_{⌊n/2⌋}}`` in Z(n,p): fixed by A^{±1}, and with ``|∂Y| ≤ (10/n)|Y|``.

    Neighbours are enumerated directly, so the full graph is never built.
    """
    if n < 8:
        raise ValueError("n ≥ 8 required")
    gens = sl_generators(n)
    Y = frozenset(unit_vector(n, i) for i in range(3, n // 2 + 1))
    for y in Y:
        if mat_vec(gens.A, y, p) != y or mat_vec(gens.A_inv, y, p) != y:
            raise AssertionError("transvection moved a vector of Y")
    bnd = set()
    for y in Y:
        bnd |= _vector_neighbours(y, gens, p)
    bnd = frozenset(bnd - Y)
    ratio = Fraction(len(bnd), len(Y))
    if ratio > Fraction(10, n):
        raise AssertionError("boundary ratio exceeds 10/n")
    return YnWitness(Y, bnd, len(bnd), ratio)


# ---------------------------------------------------------------- random permutation model

class PermutationDraw(NamedTuple):
    perms: list[tuple[int, ...]]
    edges: list[tuple[int, int]]  # multiset of (input j, output π_i(j))
    is_latin: bool

    def collapsed(self) -> BipartiteGraph:
        return BipartiteGraph.from_edges(len(self.perms[0]), len(self.perms[0]), set(self.edges))


def fisher_yates(n: int, rng: np.random.Generator) -> tuple[int, ...]:
    a = list(range(n))
    for i in range(n - 1, 0, -1):
        j = int(rng.integers(i + 1))
        a[i], a[j] = a[j], a[i]
    return tuple(a)


def is_latin(perms: Sequence[Sequence[int]]) -> bool:
    """No column of the k×n array of values repeats."""
    n = len(perms[0])
    return all(len({p[j] for p in perms}) == len(perms) for j in range(n))


def permutation_draw(perms: Sequence[tuple[int, ...]]) -> PermutationDraw:
    perms = [tuple(p) for p in perms]
    edges = [(j, p[j]) for p in perms for j in range(len(p))]
    return PermutationDraw(perms, edges, is_latin(perms))


def random_permutation_bigraph(n: int, k: int, seed: int | np.random.Generator) -> PermutationDraw:
    """k independent uniform permutations (Fisher–Yates); input j is joined to every π_i(j)."""
    if not 0 < k < n:
        raise ValueError("need 0 < k < n")
    rng = seed if isinstance(seed, np.random.Generator) else make_rng(seed)
    return permutation_draw([fisher_yates(n, rng) for _ in range(k)])


# ---------------------------------------------------------------- group algebra

GroupAlgebraElement = dict  # group element -> integer coefficient


def group_algebra_multiply(a: GroupAlgebraElement, b: GroupAlgebraElement,
                           multiply: Callable[[Hashable, Hashable], Hashable]) -> GroupAlgebraElement:
    out: dict = {}
    for g, x in a.items():
        for h, y in b.items():
            gh = multiply(g, h)
            out[gh] = out.get(gh, 0) + x * y
    return {g: c for g, c in out.items() if c}


def laplacian_element(identity_element: Hashable, generators: Sequence[Hashable]) -> GroupAlgebraElement:
    """``k·e − Σ_s s`` for the symmetric generator multiset."""
    out: dict = {identity_element: len(generators)}
    for s in generators:
        out[s] = out.get(s, 0) - 1
    return {g: c for g, c in out.items() if c}
