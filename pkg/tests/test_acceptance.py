"""The sixteen acceptance criteria, one test each, at their stated tolerances.

Each test records a ``criterion N: PASS|FAIL`` line (printed and collected into
the terminal summary) before asserting.
"""
import math
import time
from fractions import Fraction

import numpy as np
import pytest
from conftest import ACCEPTANCE_LINES

from expanders.cayley import (
    cayley_graph_of,
    group_algebra_multiply,
    identity,
    laplacian_element,
    mat_mul,
    reduce_mod,
    sl_generators,
    yn_counterexample,
)
from expanders.concentrators import (
    build_bounded_concentrator,
    build_superconcentrator,
    verify_concentrator,
    verify_superconcentrator,
)
from expanders.expansion_metrics import (
    bi_expander_constant,
    cheeger_h,
    cheeger_h_bounds,
    cheeger_h_prime,
    fixed_expander_constant,
)
from expanders.graph_core import (
    BipartiteGraph,
    Graph,
    complete_graph,
    connected_components,
    is_connected,
    is_k_regular,
    make_rng,
    random_bounded_degree_graph,
    random_connected_regular_graph,
    random_graph,
    random_regular_graph,
    relabel,
    robertson_graph,
)
from expanders.hurwitz import (
    divisor_sum,
    enumerate_norm,
    m2fp_ideal_census,
    norm,
    representatives_S,
    units,
)
from expanders.matching import bigraph_from_permutations, koenig_decomposition
from expanders.regularize import almost_regular, make_k_regular, raise_regular_degree, regularized_expander_constant
from expanders.so3_free import certify_free
from expanders.spectral import (
    adjacency_matrix,
    alon_boppana_lower_bound,
    diameter,
    dyadic_roots_nondecreasing,
    incidence_matrix,
    lambda1,
    laplacian,
    markov_norm_estimate,
    markov_second_norm,
    return_probability_below_norm,
    tree_branch_point,
    tree_norm,
)
from expanders.transforms import (
    bi_to_fixed,
    fixed_to_bi,
    quotient_graph,
    torus_band,
    torus_graph,
    torus_shear_partition,
)

ODD_PRIMES_TO_97 = [p for p in range(3, 98) if all(p % d for d in range(2, p))]


@pytest.fixture
def record():
    def _record(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}"
        print(line)
        ACCEPTANCE_LINES.append(line)
        assert ok, line

    return _record


def timed(fn):
    start = time.perf_counter()
    out = fn()
    return out, time.perf_counter() - start


def test_01_jacobi_counts(record):
    counts, secs = timed(lambda: {p: len(enumerate_norm(p)) for p in ODD_PRIMES_TO_97})
    bad = [p for p, c in counts.items() if c != 8 * (p + 1)]
    record(1, not bad and secs < 10, f"{len(counts)} primes, mismatches {bad}, {secs:.2f}s")


def test_02_prime_power_counts(record):
    cases = [(3, 2), (3, 3), (5, 2), (7, 2)]
    got, secs = timed(lambda: [len(enumerate_norm(p ** k)) for p, k in cases])
    expected = [8 * sum(p ** j for j in range(k + 1)) for p, k in cases]
    assert expected == [8 * divisor_sum(p ** k) for p, k in cases]
    record(2, got == expected and secs < 30, f"counts {got} vs {expected}, {secs:.2f}s")


def test_03_unit_group(record):
    us = units()
    closed = all(a * b in set(us) for a in us for b in us)
    record(3, len(set(us)) == 24 and all(norm(u) == 1 for u in us) and closed, f"{len(us)} units, closed={closed}")


def test_04_s_sets(record):
    ok = True
    for p in (5, 13, 17):
        S = representatives_S(p)
        congruent = all(s.integer_coords()[0] % 2 == 1 and all(c % 2 == 0 for c in s.integer_coords()[1:]) for s in S)
        ok &= len(S) == p + 1 and {s.conj() for s in S} == set(S) and congruent
    record(4, ok, "p in {5, 13, 17}: size p+1, conjugation-closed, each ≡ 1 mod 2")


def test_05_matrix_census(record):
    ok = True
    for p in (3, 5, 7):
        c = m2fp_ideal_census(p)
        ok &= c == ((p + 1) * (p * p - 1), p + 1, p * p - 1)
    record(5, ok, "p in {3, 5, 7}: (p+1)(p^2-1) singular, p+1 ideals, orbits of size p^2-1")


def test_06_free_rotations(record):
    (exact, residue), secs = timed(lambda: (certify_free(12), certify_free(30, residue_only=True)))
    ok = exact.passed and residue.passed and secs < 60
    record(6, ok, f"exact L=12 over {exact.words_checked} words, residue L=30 over {residue.words_checked}, {secs:.2f}s")


def test_07_tree_norm(record):
    closed = all(abs(tree_norm(k) - 2 * math.sqrt(k - 1) / k) <= 1e-12 for k in range(2, 11))
    via_gf = all(abs(tree_norm(k) - 1 / tree_branch_point(k)) <= 1e-12 for k in range(2, 11))
    est = markov_norm_estimate(3, 30)
    bounded = all(x <= 2 * math.sqrt(2) / 3 + 1e-12 for x in est)
    exact_bound = all(return_probability_below_norm(3, n) for n in range(1, 31))
    dyadic = dyadic_roots_nondecreasing(3, 5)
    record(7, closed and via_gf and bounded and exact_bound and dyadic,
           f"closed form k=2..10, estimate ≤ bound (last {est[-1]:.6f}), dyadic nondecreasing")


def test_08_alon_boppana(record):
    rng = make_rng(2024)
    checked, skipped, worst = 0, 0, math.inf
    start = time.perf_counter()
    while checked < 50:
        n = int(rng.integers(10, 61))
        if n % 2:
            continue
        G = random_connected_regular_graph(n, 3, rng)
        if diameter(G) < 4:
            skipped += 1
            continue
        worst = min(worst, markov_second_norm(G) - alon_boppana_lower_bound(G))
        checked += 1
    secs = time.perf_counter() - start
    record(8, worst >= -1e-8 and secs < 60,
           f"50 graphs (skipped {skipped} with diameter < 4), min slack {worst:.3e}, {secs:.2f}s")


def test_09_laplacian_identities(record):
    rng = make_rng(9)
    ok = True
    for _ in range(10):
        G = random_graph(int(rng.integers(3, 12)), 0.4, rng)
        L = laplacian(G)
        for _ in range(100):
            ok &= bool((laplacian(G, [bool(b) for b in rng.integers(0, 2, size=G.m)]) == L).all())
        d = incidence_matrix(G, [bool(b) for b in rng.integers(0, 2, size=G.m)])
        f, g = rng.integers(-20, 21, size=G.n), rng.integers(-20, 21, size=G.n)
        ok &= int(f @ L @ g) == int((d @ f) @ (d @ g))
    for n, k in [(10, 3), (12, 4), (9, 2)]:
        G = random_regular_graph(n, k, rng)
        ok &= bool((laplacian(G) == k * np.eye(n, dtype=int) - adjacency_matrix(G)).all())
    p = 3
    gens = [reduce_mod(x, p) for x in sl_generators(2).symmetric()]
    mul = lambda a, b: mat_mul(a, b, p)  # noqa: E731
    eye = reduce_mod(identity(2), p)
    cg = cayley_graph_of(eye, gens, mul)
    idx = {x: i for i, x in enumerate(cg.elements)}
    L = laplacian(cg.graph)
    elem = laplacian_element(eye, gens)
    for g in cg.elements:
        col = np.zeros(len(idx), dtype=int)
        for h, c in group_algebra_multiply({g: 1}, elem, mul).items():
            col[idx[h]] = c
        ok &= bool((L[:, idx[g]] == col).all())
    record(9, ok, "orientation independence, Green identity, Δ = kI − A, SL2(3) group-algebra action")


def test_10_cheeger_chain(record):
    rng = make_rng(10)
    connected = 0
    ok = True
    for _ in range(200):
        n = int(rng.integers(2, 13))
        G = random_graph(n, float(rng.uniform(0.2, 0.8)), rng)
        if not is_connected(G):
            continue
        connected += 1
        h, hp = cheeger_h(G), cheeger_h_prime(G)
        ok &= h <= hp <= 2 * h
        ok &= float(h) ** 2 <= 2 * G.max_degree * lambda1(G) + 1e-6
    record(10, ok and connected > 100, f"{connected} connected graphs of the 200 sampled")


def test_11_conversion_soundness(record):
    rng = make_rng(11)
    ok = True
    done = 0
    while done < 100:
        n = int(rng.integers(4, 17))
        k = int(rng.integers(2, min(5, n - 1) + 1))
        if n * k % 2:
            continue
        X = random_regular_graph(n, k, rng)
        B = fixed_to_bi(X)
        Y = bi_to_fixed(B)
        ok &= B.is_regular(k + 1)
        ok &= all(k <= d <= 2 * k for d in Y.degrees())  # B is (k+1)-regular
        ok &= bi_expander_constant(B) >= fixed_expander_constant(X)
        ok &= fixed_expander_constant(Y) >= bi_expander_constant(B)
        done += 1
    record(11, ok, "100 regular graphs with n ≤ 16: degree bounds and both constant inequalities")


def cherry_family(n, k, rng):
    G = random_connected_regular_graph(n, k, rng)
    for v in range(n):
        nb = sorted(G.adj[v])
        for i, u in enumerate(nb):
            for w in nb[i + 1:]:
                if not G.has_edge(u, w):
                    drop = {(min(v, u), max(v, u)), (min(v, w), max(v, w))}
                    return Graph.from_edges(n, [e for e in G.edges() if e not in drop] + [(u, w)])
    raise AssertionError("no cherry")


def test_12_regularization(record):
    rng = make_rng(12)
    start = time.perf_counter()
    ok = True
    for _ in range(1000):
        k = int(rng.integers(1, 7))
        n = int(rng.integers(k + 1, 41))
        G = random_bounded_degree_graph(n, k, int(rng.integers(0, 3 * n)), rng)
        rep = make_k_regular(G, k)
        ok &= is_k_regular(rep.output, k) and rep.contains_input and G.is_subgraph_of(rep.output)
        ok &= rep.added_vertices <= (k + 1 if k % 2 == 0 else k + 2)
    sharp = True
    for k in (4, 6):
        for n in (11, 14, 20):
            sharp &= make_k_regular(cherry_family(n, k, rng), k).added_vertices == k + 1
    for k in (3, 5):
        for n in (9, 15, 21):
            sharp &= make_k_regular(almost_regular(n - 1, 1, k), k).added_vertices == k + 2
    raised = True
    for n, k0, k in [(8, 2, 4), (12, 3, 5), (16, 2, 7), (20, 4, 10)]:
        G = random_regular_graph(n, k0, rng)
        H = raise_regular_degree(G, k)
        raised &= H.n == n and is_k_regular(H, k) and G.is_subgraph_of(H)
    secs = time.perf_counter() - start
    record(12, ok and sharp and raised and secs < 60,
           f"1000 random inputs, sharpness families exact={sharp}, degree raising={raised}, {secs:.2f}s")


def fixed_constant_ceiling(n: int, k: int) -> Fraction:
    """Upper bound on the fixed constant of any n-vertex graph of maximum degree k.

    A positive constant forces connectivity.  A connected set T of t vertices
    has a closed neighbourhood of at most (k-1)t + 2 vertices; placing it
    inside a set C of ⌈n/2⌉ vertices, the complement A of C has ⌊n/2⌋
    vertices and its boundary lies in C minus T.
    """
    big, small = (n + 1) // 2, n // 2
    if k == 1:
        return Fraction(1) if n == 2 else Fraction(0)
    t = max(0, (big - 2) // (k - 1))
    return Fraction(big - t, small)


def test_13_expansion_preservation(record):
    admissible = [
        (n, k) for n in range(2, 21) for k in range(1, n)
        if fixed_constant_ceiling(n, k) > 0 and regularized_expander_constant(n, k, min(fixed_constant_ceiling(n, k), Fraction(1))).applies
    ]
    base = robertson_graph()
    c = fixed_expander_constant(base)
    rng = make_rng(13)
    ok = admissible == [(19, 4)] and c == fixed_constant_ceiling(19, 4) == Fraction(8, 9)
    for trial in range(4):
        perm = [int(x) for x in rng.permutation(19)]
        G = base if trial == 0 else relabel(base, perm)
        c_in = fixed_expander_constant(G)
        info = regularized_expander_constant(G.n, 4, c_in)
        out = make_k_regular(G, 4).output
        ok &= info.applies and fixed_expander_constant(out) >= info.c_new
    record(13, ok, f"only admissible (n, k) with n ≤ 20 is {admissible}; Robertson graph c = {c}, threshold 19, "
                   "regularized constant ≥ c/7 on 4 labelings")


def test_14_concentrators(record):
    start = time.perf_counter()
    conc = verify_concentrator(build_bounded_concentrator(BipartiteGraph.complete(4, 4), 2))
    one = build_superconcentrator(6, 2, 4, base_size=4)
    two = build_superconcentrator(9, 2, 4, base_size=4)
    r1, r2 = verify_superconcentrator(one), verify_superconcentrator(two)
    secs = time.perf_counter() - start
    ok = conc.ok and conc.exhaustive and r1.ok and r1.exhaustive and r2.ok and r2.exhaustive and secs < 120
    record(14, ok, f"K44/r=2 concentrator, superconcentrators n=6 ({r1.tested} pairs) and n=9 ({r2.tested} pairs), "
                   f"{secs:.2f}s")


def test_15_counterexamples(record):
    ok_a = all(yn_counterexample(n, p).ratio <= Fraction(10, n) for n, p in [(8, 3), (12, 2), (20, 2)])
    ok_b = True
    for m in (3, 5, 7):
        Q = quotient_graph(torus_graph(m), torus_shear_partition(m))
        ok_b &= Q == complete_graph(m) and set(Q.degrees()) == {m - 1}
    hs = []
    for m in (4, 6, 8, 10):
        lower, upper = cheeger_h_bounds(torus_graph(m), [torus_band(m)])
        hs.append((lower, upper))
    exact = all(lo == up for lo, up in hs)
    values = [up for _, up in hs]
    ok_c = exact and all(a > b for a, b in zip(values, values[1:])) and values[-1] < values[0] / 2
    record(15, ok_a and ok_b and ok_c, f"(a)={ok_a} (b)={ok_b} (c) h = {[str(v) for v in values]} exact={exact}")


def test_16_koenig(record):
    rng = make_rng(16)
    ok = True
    for _ in range(500):
        n = int(rng.integers(1, 9))
        k = int(rng.integers(1, min(4, n) + 1))
        perms: list[tuple[int, ...]] = []
        while len(perms) < k:
            cand = tuple(int(x) for x in rng.permutation(n))
            if all(all(cand[j] != q[j] for j in range(n)) for q in perms):
                perms.append(cand)
        B = bigraph_from_permutations(perms)
        got = koenig_decomposition(B, k)
        ok &= len(got) == k and bigraph_from_permutations(got) == B
        ok &= sum(len(p) for p in got) == len(B.edges) == n * k
    record(16, ok, "500 seeded k-regular bipartite graphs (parts ≤ 8, k ≤ 4) split into k perfect matchings")
