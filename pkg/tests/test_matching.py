import itertools

import pytest
from conftest import bigraphs
from hypothesis import given
from hypothesis import strategies as st
from oracles import (
    brute_has_input_matching,
    brute_lexicographic_matching,
    brute_matching_size,
    figure_one_bigraph,
)

from expanders.graph_core import BipartiteGraph
from expanders.matching import (
    ContractError,
    Matching,
    bigamist_matching,
    bigraph_from_permutations,
    hall_violator,
    has_two_sided_expansion,
    koenig_decomposition,
    lexicographic_perfect_matching,
    maximum_matching,
)


def doubling_bigraph():
    # input n (1..4) joined to outputs 2n and 2n+1 (outputs 2..9 stored at index -2)
    return BipartiteGraph.from_edges(4, 8, ((n - 1, 2 * n - 2 + s) for n in range(1, 5) for s in (0, 1)))


class TestMaximumMatching:
    def test_examples(self):
        assert len(maximum_matching(BipartiteGraph.complete(3, 3))) == 3
        assert len(maximum_matching(doubling_bigraph())) == 4
        assert len(maximum_matching(BipartiteGraph.complete(1, 5))) == 1

    def test_matching_type_rejects_repeats(self):
        with pytest.raises(ValueError):
            Matching(frozenset({(0, 1), (0, 2)}))
        with pytest.raises(ValueError):
            Matching(frozenset({(0, 1), (2, 1)}))

    @given(bigraphs(square=False))
    def test_size_matches_networkx(self, B):
        M = maximum_matching(B)
        assert M.is_matching_of(B)
        assert len(M) == brute_matching_size(B)


class TestHall:
    def test_examples(self):
        C4 = BipartiteGraph.from_edges(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])
        assert hall_violator(C4) is None
        assert hall_violator(BipartiteGraph.from_edges(2, 1, [(0, 0), (1, 0)])) == {0, 1}

    def test_doubling_graph_covers_inputs_but_not_outputs(self):
        B = doubling_bigraph()
        assert hall_violator(B) is None
        assert hall_violator(B.reversed()) is not None

    @given(bigraphs(square=False))
    def test_against_subset_oracle(self, B):
        A = hall_violator(B)
        assert (A is None) == brute_has_input_matching(B)
        if A is not None:
            assert len(B.boundary(A)) < len(A)


class TestBigamist:
    def test_k24(self):
        plus, minus = bigamist_matching(BipartiteGraph.complete(2, 4))
        assert len(plus) == len(minus) == 2
        assert not (plus.outputs() & minus.outputs())

    def test_k23(self):
        assert bigamist_matching(BipartiteGraph.complete(2, 3)) == {0, 1}

    def test_single_input(self):
        plus, minus = bigamist_matching(BipartiteGraph.complete(1, 2))
        assert plus.outputs() | minus.outputs() == {0, 1}

    @given(bigraphs(square=False, max_n=6))
    def test_soundness(self, B):
        out = bigamist_matching(B)
        doubled_ok = all(
            len(B.boundary(A)) >= 2 * len(A)
            for r in range(1, B.n_in + 1)
            for A in itertools.combinations(range(B.n_in), r)
        )
        if isinstance(out, frozenset):
            assert len(B.boundary(out)) < 2 * len(out)
            assert not doubled_ok
        else:
            plus, minus = out
            for M in (plus, minus):
                assert M.is_matching_of(B) and len(M) == B.n_in
            assert not (plus.outputs() & minus.outputs())
            assert doubled_ok


def _check_decomposition(B, k, perms):
    assert len(perms) == k
    assert sorted(sorted(p) == list(range(B.n_in)) for p in perms) == [True] * k
    edges = [(j, p[j]) for p in perms for j in range(B.n_in)]
    assert len(edges) == len(set(edges)) and set(edges) == B.edges


class TestKoenig:
    def test_c4(self):
        C4 = BipartiteGraph.complete(2, 2)
        _check_decomposition(C4, 2, koenig_decomposition(C4, 2))

    def test_k33_latin_rectangle(self):
        perms = koenig_decomposition(BipartiteGraph.complete(3, 3), 3)
        for j in range(3):
            assert sorted(p[j] for p in perms) == [0, 1, 2]

    def test_figure_one(self):
        B = figure_one_bigraph()
        _check_decomposition(B, 3, koenig_decomposition(B, 3))

    def test_contract(self):
        with pytest.raises(ContractError):
            koenig_decomposition(BipartiteGraph.from_edges(2, 2, [(0, 0)]), 1)

    @given(st.integers(1, 8), st.integers(1, 4), st.randoms(use_true_random=False))
    def test_regular_graphs_decompose(self, n, k, rnd):
        k = min(k, n)
        # union of k disjoint shifts of a random permutation is k-regular and simple
        base = list(range(n))
        rnd.shuffle(base)
        perms = [tuple(base[(j + s) % n] for j in range(n)) for s in range(k)]
        B = bigraph_from_permutations(perms)
        _check_decomposition(B, k, koenig_decomposition(B, k))


class TestLexicographic:
    @given(bigraphs(max_n=6))
    def test_against_permutation_scan(self, B):
        expected = brute_lexicographic_matching(B)
        if expected is None:
            with pytest.raises(ContractError):
                lexicographic_perfect_matching(B)
        else:
            got = lexicographic_perfect_matching(B).as_dict()
            assert tuple(got[i] for i in range(B.n_in)) == expected


class TestTwoSided:
    def test_examples(self):
        assert has_two_sided_expansion(BipartiteGraph.complete(4, 4))
        assert has_two_sided_expansion(BipartiteGraph.from_edges(4, 4, [(i, i) for i in range(4)]))
        assert not has_two_sided_expansion(BipartiteGraph.from_edges(4, 4, [(1, 1), (2, 2), (3, 3)]))
        with pytest.raises(ContractError):
            has_two_sided_expansion(BipartiteGraph.complete(2, 3))

    @given(st.sampled_from([2, 4, 6, 8]), st.floats(0.2, 0.7), st.randoms(use_true_random=False))
    def test_implies_perfect_matching_for_even_parts(self, n, density, rnd):
        B = BipartiteGraph.from_edges(n, n, [(i, o) for i in range(n) for o in range(n) if rnd.random() < density])
        if has_two_sided_expansion(B):
            assert len(maximum_matching(B)) == n

    def test_odd_parts_can_fail(self):
        # n = 1: no set has 2|A| <= n, so the condition is vacuous
        B = BipartiteGraph.from_edges(1, 1, [])
        assert has_two_sided_expansion(B) and len(maximum_matching(B)) == 0
