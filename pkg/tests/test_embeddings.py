from collections import Counter

import numpy as np
import pytest
from conftest import brute_embeddings, brute_inj, random_graph
from hypothesis import given
from hypothesis import strategies as st

from spectral_turan.embeddings import (
    automorphisms,
    count_copies,
    degree_stats,
    embedding_array,
    enumerate_injective,
    has_injective,
    inj_count,
    is_isomorphic,
    q_degree,
    q_degrees,
    q_link,
)
from spectral_turan.hypergraph import (
    HypergraphError,
    builtin_pattern,
    complete_hypergraph,
    cycle_graph,
    empty_hypergraph,
    induced_subgraph,
    make_hypergraph,
    petersen_graph,
    star_graph,
)

K2 = builtin_pattern("k2")
K3 = builtin_pattern("k3")
C5 = builtin_pattern("c5")
E3 = builtin_pattern("kr_r:3")


@st.composite
def graphs(draw, n_max=7):
    n = draw(st.integers(1, n_max))
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return make_hypergraph(n, 2, edges)


class TestEnumerate:
    def test_k2_in_k2(self):
        assert enumerate_injective(K2, complete_hypergraph(2)).items == [(1, 2), (2, 1)]

    def test_c5_in_c5(self):
        emb = enumerate_injective(C5, cycle_graph(5))
        assert len(emb) == 10
        assert sorted(emb.items) == sorted(brute_embeddings(C5.graph.edges, 5, cycle_graph(5).edges, 5))

    def test_k3_in_c5(self):
        assert len(enumerate_injective(K3, cycle_graph(5))) == 0

    def test_uniformity_mismatch(self):
        with pytest.raises(HypergraphError, match="uniformity"):
            inj_count(E3, cycle_graph(5))

    def test_output_is_lexicographic(self):
        items = enumerate_injective(C5, petersen_graph()).items
        assert items == sorted(items)

    def test_pattern_larger_than_host(self):
        assert inj_count(C5, complete_hypergraph(4)) == 0

    def test_has_injective(self):
        assert has_injective(C5, petersen_graph())
        assert not has_injective(K3, petersen_graph())

    @given(graphs())
    def test_matches_brute_force_k2_k3(self, H):
        for Q in (K2, K3):
            assert inj_count(Q, H) == brute_inj(Q.graph.edges, Q.q, H.edges, H.n)

    @given(graphs(n_max=7))
    def test_matches_brute_force_c5(self, H):
        assert inj_count(C5, H) == brute_inj(C5.graph.edges, 5, H.edges, H.n)

    def test_three_uniform(self, rng):
        for _ in range(10):
            n = int(rng.integers(3, 7))
            triples = [e for e in complete_hypergraph(n, 3).edges if rng.random() < 0.5]
            H = make_hypergraph(n, 3, triples)
            assert inj_count(E3, H) == brute_inj([(1, 2, 3)], 3, H.edges, n)

    @given(graphs())
    def test_aut_closure(self, H):
        emb = embedding_array(C5, H)
        rows = {tuple(r) for r in emb}
        for sigma in automorphisms(C5):
            perm = np.array(sigma) - 1
            assert {tuple(r) for r in emb[:, perm]} == rows

    @given(graphs(), st.data())
    def test_monotone_under_induced(self, H, data):
        S = data.draw(st.sets(st.integers(1, H.n), min_size=1))
        sub, _ = induced_subgraph(H, S)
        for Q in (K2, K3, C5):
            assert inj_count(Q, sub) <= inj_count(Q, H)


class TestCounts:
    def test_c5_c5(self):
        assert count_copies(C5, cycle_graph(5)) == 1

    @pytest.mark.parametrize("n", range(2, 9))
    def test_k2_kn(self, n):
        assert count_copies(K2, complete_hypergraph(n)) == n * (n - 1) // 2

    def test_c5_petersen(self):
        # the Petersen graph has 12 pentagons; the oracle counts ordered tuples
        assert brute_inj(C5.graph.edges, 5, petersen_graph().edges, 10) == 120
        assert count_copies(C5, petersen_graph()) == 12

    @given(graphs())
    def test_aut_divides_inj(self, H):
        for Q in (K2, K3, C5):
            assert inj_count(Q, H) % Q.aut_count == 0


class TestDegrees:
    def test_c5_every_vertex(self):
        for v in range(1, 6):
            assert q_degree(C5, cycle_graph(5), v) == 10

    def test_star_centre(self):
        assert q_degree(K2, star_graph(3), 1) == 6

    def test_out_of_range(self):
        with pytest.raises(HypergraphError):
            q_degree(K2, cycle_graph(5), 0)

    @given(graphs())
    def test_sum_identity(self, H):
        for Q in (K2, K3):
            assert q_degrees(Q, H).sum() == Q.q * inj_count(Q, H)

    def test_stats(self):
        s = degree_stats(K2, cycle_graph(5))
        assert (s.min, s.avg) == (4, 4.0)
        s = degree_stats(C5, cycle_graph(5))
        assert (s.min, s.avg) == (10, 10.0)
        s = degree_stats(K2, empty_hypergraph(4))
        assert (s.min, s.avg) == (0, 0.0)


class TestLink:
    def test_k2(self):
        link = q_link(K2, complete_hypergraph(2), 1)
        assert link.tuples == Counter({(2,): 2})

    def test_c5(self):
        link = q_link(C5, cycle_graph(5), 1)
        assert link.total == 10
        assert all(len(t) == 4 for t in link.tuples)

    @given(graphs())
    def test_multiplicity_and_total(self, H):
        for Q in (K2, K3, C5):
            for v in range(1, H.n + 1):
                link = q_link(Q, H, v)
                assert link.total == q_degree(Q, H, v)
                assert all(m <= Q.q for m in link.tuples.values())


class TestIsomorphism:
    def test_relabelled(self, rng):
        for _ in range(20):
            n = int(rng.integers(2, 8))
            G = make_hypergraph(n, 2, random_graph(rng, n, 0.4))
            perm = list(rng.permutation(n) + 1)
            assert is_isomorphic(G, G.relabel(perm))

    def test_distinguishes(self):
        assert not is_isomorphic(cycle_graph(6), make_hypergraph(6, 2, [(1, 2), (2, 3), (3, 1), (4, 5), (5, 6), (6, 4)]))
