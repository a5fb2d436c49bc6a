import itertools
import math
from fractions import Fraction

import numpy as np
import pytest
import sympy
from hypothesis import assume, given
from hypothesis import strategies as st

from expanders.expansion_metrics import cheeger_h
from expanders.graph_core import (
    Graph,
    complete_graph,
    connected_components,
    cycle_graph,
    diameter,
    make_rng,
    petersen_graph,
    random_connected_regular_graph,
    random_graph,
)
from expanders.spectral import (
    adjacency_matrix,
    alon_boppana_lower_bound,
    alon_boppana_radius,
    dyadic_roots_nondecreasing,
    eigenvalues,
    incidence_matrix,
    is_ramanujan,
    lambda1,
    laplacian,
    markov_norm_estimate,
    markov_second_norm,
    return_probability_below_norm,
    tree_branch_point,
    tree_distance_distribution,
    tree_first_return_gf,
    tree_norm,
    tree_return_gf,
    tree_return_probability,
)
from expanders.transforms import torus_graph


def tree_walk_oracle(k, n):
    """Count closed walks by enumerating all k^n colour sequences on the k-regular tree.

    The tree is the Cayley graph of k copies of Z/2; a vertex is a word with no
    letter repeated twice in a row, and stepping along colour c cancels or appends c.
    """
    back = 0
    for seq in itertools.product(range(k), repeat=n):
        word = []
        for c in seq:
            if word and word[-1] == c:
                word.pop()
            else:
                word.append(c)
        back += not word
    return Fraction(back, k ** n)


def charpoly_roots(M):
    x = sympy.symbols("x")
    poly = sympy.Matrix(M.tolist()).charpoly(x)
    return sorted(float(sympy.re(r)) for r in sympy.Poly(poly.as_expr(), x).nroots(n=30))


@st.composite
def connected_regular(draw, max_n=14):
    n = draw(st.integers(4, max_n))
    k = draw(st.integers(2, min(5, n - 1)))
    assume(n * k % 2 == 0)
    return random_connected_regular_graph(n, k, make_rng(draw(st.integers(0, 10**6)))), k


class TestLaplacian:
    def test_k2(self):
        assert laplacian(complete_graph(2)).tolist() == [[1, -1], [-1, 1]]

    def test_c4_spectrum(self):
        L = laplacian(cycle_graph(4))
        assert (L == 2 * np.eye(4, dtype=int) - adjacency_matrix(cycle_graph(4))).all()
        assert np.allclose(eigenvalues(L), [0, 2, 2, 4], atol=1e-10)

    @given(st.integers(3, 9), st.integers(0, 10**6))
    def test_orientation_independence(self, n, seed):
        rng = make_rng(seed)
        G = random_graph(n, 0.5, rng)
        base = laplacian(G)
        for _ in range(100):
            flips = [bool(b) for b in rng.integers(0, 2, size=G.m)]
            assert (laplacian(G, flips) == base).all()

    @given(st.integers(2, 9), st.integers(0, 10**6))
    def test_green_identity_exact(self, n, seed):
        rng = make_rng(seed)
        G = random_graph(n, 0.5, rng)
        d = incidence_matrix(G, [bool(b) for b in rng.integers(0, 2, size=G.m)])
        f = rng.integers(-50, 50, size=n)
        g = rng.integers(-50, 50, size=n)
        assert int(f @ (laplacian(G) @ g)) == int((d @ f) @ (d @ g))

    @given(st.integers(1, 10), st.integers(0, 10**6))
    def test_kernel_counts_components(self, n, seed):
        G = random_graph(n, 0.3, make_rng(seed))
        ev = eigenvalues(laplacian(G))
        assert ev.min() > -1e-9
        assert int(np.sum(np.abs(ev) < 1e-8)) == len(connected_components(G))

    def test_orientation_length_checked(self):
        with pytest.raises(ValueError):
            incidence_matrix(cycle_graph(4), [True])


class TestEigenvalues:
    def test_identity(self):
        assert np.allclose(eigenvalues(np.eye(3)), [1, 1, 1])

    def test_k4(self):
        assert np.allclose(eigenvalues(laplacian(complete_graph(4))), [0, 4, 4, 4], atol=1e-10)

    def test_c6_circulant(self):
        expected = sorted(2 - 2 * math.cos(2 * math.pi * j / 6) for j in range(6))
        assert np.allclose(eigenvalues(laplacian(cycle_graph(6))), expected, atol=1e-10)

    @given(st.lists(st.integers(-5, 5), min_size=10, max_size=10), st.integers(1, 4))
    def test_against_characteristic_polynomial(self, entries, order):
        M = np.zeros((order, order))
        it = iter(entries)
        for i in range(order):
            for j in range(i, order):
                M[i, j] = M[j, i] = next(it)
        assert np.allclose(eigenvalues(M), charpoly_roots(M), atol=1e-8)

    def test_rejects_asymmetric(self):
        with pytest.raises(ValueError):
            eigenvalues(np.array([[0.0, 1.0], [0.0, 0.0]]))
        with pytest.raises(ValueError):
            eigenvalues(np.zeros((2, 3)))


class TestLambdaAndNorm:
    def test_lambda1_examples(self):
        assert lambda1(complete_graph(4)) == pytest.approx(4)
        assert lambda1(cycle_graph(6)) == pytest.approx(1)
        assert lambda1(torus_graph(5)) == pytest.approx(2 - 2 * math.cos(2 * math.pi / 5))
        assert lambda1(Graph.from_edges(4, [(0, 1), (2, 3)])) == 0.0

    def test_markov_examples(self):
        assert markov_second_norm(complete_graph(4)) == pytest.approx(1 / 3)
        assert markov_second_norm(cycle_graph(6)) == pytest.approx(0.5)
        assert markov_second_norm(petersen_graph()) == pytest.approx(2 / 3)
        assert is_ramanujan(petersen_graph())
        with pytest.raises(ValueError):
            markov_second_norm(Graph.from_edges(3, [(0, 1)]))

    @given(connected_regular())
    def test_spectra_correspond(self, Gk):
        G, k = Gk
        lap = eigenvalues(laplacian(G))
        walk = eigenvalues(adjacency_matrix(G) / k)
        assert np.allclose(sorted(k - k * walk), lap, atol=1e-8)

    @given(connected_regular())
    def test_cheeger_direction(self, Gk):
        G, k = Gk
        h = float(cheeger_h(G))
        assert h * h <= 2 * k * lambda1(G) + 1e-8

    @pytest.mark.parametrize("seed", range(4))
    def test_cheeger_direction_twenty(self, seed):
        G = random_connected_regular_graph(20, 3, make_rng(seed))
        assert float(cheeger_h(G)) ** 2 <= 6 * lambda1(G) + 1e-8


class TestTree:
    @pytest.mark.parametrize("k", [2, 3, 4, 5])
    def test_two_steps(self, k):
        assert tree_return_probability(k, 2) == Fraction(1, k)

    def test_known_values(self):
        assert tree_return_probability(2, 4) == Fraction(3, 8)
        assert tree_return_probability(3, 4) == Fraction(5, 27)
        assert tree_return_probability(3, 5) == 0

    @pytest.mark.parametrize("k,n", [(2, 6), (3, 6), (3, 8), (4, 6), (5, 5)])
    def test_against_walk_enumeration(self, k, n):
        assert tree_return_probability(k, n) == tree_walk_oracle(k, n)

    @given(st.integers(2, 6), st.integers(0, 40))
    def test_distribution_sums_to_one(self, k, n):
        assert sum(tree_distance_distribution(k, n)) == 1

    def test_norm_values(self):
        assert tree_norm(2) == 1
        assert tree_norm(3) == pytest.approx(0.9428090, abs=1e-7)
        assert tree_norm(4) == pytest.approx(0.8660254, abs=1e-7)
        assert tree_branch_point(3) == pytest.approx(1 / tree_norm(3))

    @pytest.mark.parametrize("k", [3, 4, 6])
    def test_generating_functions_match_series(self, k):
        z = 0.5
        series = sum(float(tree_return_probability(k, n)) * z ** n for n in range(200))
        assert tree_return_gf(k, z) == pytest.approx(series, rel=1e-12)
        # a first return from a neighbour either steps back at once or goes out and returns twice
        T = tree_first_return_gf(k, z)
        assert T == pytest.approx(z / k + (k - 1) / k * z * T * T, rel=1e-12)
        assert tree_first_return_gf(k, 0) == 0

    def test_estimates(self):
        assert markov_norm_estimate(3, 1)[0] == pytest.approx(math.sqrt(1 / 3))
        est = markov_norm_estimate(3, 30)
        assert abs(est[-1] - tree_norm(3)) < 0.08
        assert all(x <= tree_norm(3) for x in est)
        two = markov_norm_estimate(2, 20)
        assert all(a < b for a, b in zip(two, two[1:])) and two[-1] < 1
        with pytest.raises(ValueError):
            markov_norm_estimate(3, 0)

    @pytest.mark.parametrize("k", [2, 3, 4, 7])
    def test_exact_bounds(self, k):
        assert dyadic_roots_nondecreasing(k, 7)
        assert all(return_probability_below_norm(k, n) for n in range(1, 40))


class TestAlonBoppana:
    def test_c8_tight(self):
        G = cycle_graph(8)
        assert alon_boppana_radius(G) == 1
        assert alon_boppana_lower_bound(G) == pytest.approx(math.sqrt(0.5))
        assert markov_second_norm(G) == pytest.approx(math.cos(math.pi / 4))

    def test_small_diameter(self):
        with pytest.raises(ValueError, match="diameter"):
            alon_boppana_lower_bound(petersen_graph())

    @pytest.mark.parametrize("seed", range(6))
    def test_soundness_on_large_cubic_graphs(self, seed):
        G = random_connected_regular_graph(60, 3, make_rng(seed))
        assert diameter(G) >= 4
        bound = alon_boppana_lower_bound(G)
        assert bound <= tree_norm(3)
        assert markov_second_norm(G) + 1e-8 >= bound

    @given(st.integers(8, 40), st.sampled_from([2, 3, 4]), st.integers(0, 10**6))
    def test_soundness(self, n, k, seed):
        assume(n * k % 2 == 0)
        G = random_connected_regular_graph(n, k, make_rng(seed))
        assume(diameter(G) >= 4)
        assert markov_second_norm(G) + 1e-8 >= alon_boppana_lower_bound(G)
