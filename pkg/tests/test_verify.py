import itertools

import networkx as nx
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from spectral_turan.embeddings import is_isomorphic
from spectral_turan.hypergraph import (
    builtin_pattern,
    c5_blowup,
    complete_hypergraph,
    cycle_graph,
    make_hypergraph,
    petersen_graph,
    turan_hypergraph,
)
from spectral_turan.io import encode_graph6
from spectral_turan.verify import (
    EXACT,
    REPORT,
    GraphFamilySource,
    ReportEntry,
    VerifyReport,
    blowup_compositions,
    check_appendix_inequalities,
    check_kny_suite,
    check_lower_bound_suite,
    check_turan_count,
    check_turan_sandwich,
    colorability_check,
    deletion_and_degree_reports,
    find_partition,
    has_triangle,
    multipartite_family,
    pentagon_desk_check,
    sandwich_constants,
    standard_corpus,
    triangle_free_graphs,
)

K2 = builtin_pattern("k2")


def atlas_triangle_free(n):
    """Triangle-free graphs on n vertices from the networkx atlas (n <= 7)."""
    return [
        G for G in nx.graph_atlas_g()
        if G.number_of_nodes() == n and sum(nx.triangles(G).values()) == 0
    ]


def brute_c5_hom(G):
    """Try every map V -> Z_5."""
    for col in itertools.product(range(5), repeat=G.n):
        if all((col[a - 1] - col[b - 1]) % 5 in (1, 4) for a, b in G.edges):
            return True
    return False


class TestReportTypes:
    def test_exact_needs_flag(self):
        with pytest.raises(ValueError):
            ReportEntry("x", EXACT, {})

    def test_report_rejects_flag(self):
        with pytest.raises(ValueError):
            ReportEntry("x", REPORT, {}, True)

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            ReportEntry("x", "maybe", {}, None)

    def test_report_only_never_fails(self):
        rep = VerifyReport("demo")
        rep.report("a", value=1.0)
        assert rep.passed and rep.to_dict()["exact_checks"] == 0

    def test_failure_propagates(self):
        rep = VerifyReport("demo")
        rep.exact("a", True)
        rep.exact("b", False)
        assert not rep.passed and [e.instance for e in rep.failures] == ["b"]

    def test_runtime_excluded_by_default(self):
        rep = VerifyReport("demo", runtime=1.5)
        assert "runtime_s" not in rep.to_dict()
        assert rep.to_dict(include_runtime=True)["runtime_s"] == 1.5


class TestColorability:
    def test_c5(self):
        assert colorability_check(cycle_graph(5))

    def test_k3(self):
        assert not colorability_check(complete_hypergraph(3))

    def test_petersen(self):
        assert not colorability_check(petersen_graph())

    def test_blowups(self):
        for c in blowup_compositions(8):
            assert colorability_check(c5_blowup(c))

    def test_bipartite_and_odd_cycles(self):
        assert colorability_check(turan_hypergraph(2, 2, 6))
        assert colorability_check(cycle_graph(7))
        assert not colorability_check(cycle_graph(3))

    def test_rejects_hypergraph(self):
        with pytest.raises(Exception):
            colorability_check(complete_hypergraph(4, 3))

    @given(st.integers(0, 10_000))
    def test_matches_brute_force(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(1, 8))
        H = make_hypergraph(n, 2, [e for e in complete_hypergraph(n).edges if rng.random() < 0.4])
        assert colorability_check(H) == brute_c5_hom(H)


class TestTriangleFree:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_counts_match_atlas(self, n):
        assert len(triangle_free_graphs(n)) == len(atlas_triangle_free(n))

    @pytest.mark.parametrize("n", [5, 6])
    def test_pairwise_non_isomorphic(self, n):
        gs = triangle_free_graphs(n)
        assert all(not has_triangle(G) for G in gs)
        for a, b in itertools.combinations(gs, 2):
            assert not is_isomorphic(a, b)

    def test_source_rejects_triangles(self):
        stream = encode_graph6(complete_hypergraph(3)) + b"\n" + encode_graph6(cycle_graph(5))
        src = GraphFamilySource(graph6=stream, k3_free=True)
        rejected = []
        kept = list(src.graphs(rejected))
        assert len(kept) == 1 and len(rejected) == 1

    def test_source_needs_one_input(self):
        with pytest.raises(ValueError):
            GraphFamilySource()
        with pytest.raises(ValueError):
            GraphFamilySource("nope", (3,))


class TestBlowupCompositions:
    def test_five(self):
        assert blowup_compositions(5) == [(1, 1, 1, 1, 1)]

    def test_counts_by_burnside(self):
        # dihedral orbits of compositions of n into 5 positive parts
        for n in range(5, 11):
            comps = [c for c in itertools.product(range(1, n), repeat=5) if sum(c) == n]
            orbits = {min(min(c[k:] + c[:k], (c[k:] + c[:k])[::-1]) for k in range(5)) for c in comps}
            assert len(blowup_compositions(n)) == len(orbits)


class TestPartition:
    def test_turan(self):
        T = turan_hypergraph(3, 2, 7)
        parts = find_partition(T, 3)
        assert parts is not None
        assert all(parts[a - 1] != parts[b - 1] for a, b in T.edges)

    def test_k4_not_3_partite(self):
        assert find_partition(complete_hypergraph(4), 3) is None

    def test_three_uniform(self):
        T = turan_hypergraph(4, 3, 8)
        parts = find_partition(T, 4)
        assert all(len({parts[v - 1] for v in e}) == 3 for e in T.edges)


class TestSuites:
    def test_lower_bound_complete(self):
        rep = check_lower_bound_suite(K2, [("K_4", complete_hypergraph(4)), ("C_5", cycle_graph(5))], 2.0)
        assert rep.passed
        for e in rep.entries:
            assert e.values["lam"] == pytest.approx(e.values["bound_inj"], rel=1e-8)

    def test_turan_count(self):
        rep = check_turan_count(3, 2, range(1, 20))
        assert rep.passed and len(rep.entries) == 19

    def test_sandwich_small(self):
        rep = check_turan_sandwich(2, 2, range(2, 9), 2.0)
        assert rep.passed
        assert rep.summary["bounded"]

    def test_sandwich_rejects(self):
        with pytest.raises(ValueError):
            check_turan_sandwich(2, 3, range(3, 5), 2.0)

    def test_sandwich_constants(self):
        info = sandwich_constants([1, 2, 3, 4], [None, 0.5, 0.3, 0.4])
        assert info["C_fit"] == 0.5 and info["tail_non_increasing"]
        assert not sandwich_constants([1, 2, 3], [0.1, 0.2, 0.3])["tail_non_increasing"]

    def test_kny(self):
        fam = multipartite_family(3, 2, 8, seed=1, n_max=6)
        rep = check_kny_suite(3, 2, 2.0, fam)
        assert rep.passed and len(rep.entries) == 8

    def test_kny_rejects_non_partite(self):
        with pytest.raises(Exception, match="partite"):
            check_kny_suite(2, 2, 2.0, [("K_3", complete_hypergraph(3))])

    def test_pentagon_five(self):
        rep = pentagon_desk_check(5)
        assert rep.passed and len(rep.exact_entries) == 2
        assert rep.summary["lam_max"] == pytest.approx(10 * 5**-2.5, rel=1e-8)

    def test_pentagon_six_report_only(self):
        rep = pentagon_desk_check(6)
        assert rep.exact_entries == []
        assert rep.summary["maximizer_c5_colorable"]
        assert rep.summary["maximizer_matches_blowup"]

    def test_deletion(self):
        fam = [("C_5", cycle_graph(5)), ("K_4", complete_hypergraph(4))]
        rep = deletion_and_degree_reports(K2, fam, 2.0)
        assert rep.passed and len(rep.exact_entries) == 9

    def test_appendix(self):
        rep = check_appendix_inequalities(100)
        assert rep.passed and rep.summary["violations"] == 0

    def test_appendix_rejects_coarse_grid(self):
        with pytest.raises(ValueError):
            check_appendix_inequalities(50)


def test_standard_corpus_shape():
    corpus = standard_corpus()
    assert all(G.n <= 10 for _, G in corpus)
    assert len({label for label, _ in corpus}) == len(corpus)
    assert len(corpus) == 7 + 9 + 3 + 9 + 8 + 1
