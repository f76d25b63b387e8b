import math

import pytest

from conftest import eig_rho
from spectrabound.bounds import Side
from spectrabound.errors import BadParams, NotConnected
from spectrabound.graphs import Graph, MatrixKind, build_system, generate
from spectrabound.spectra import (
    CATALOG_EXEMPT,
    SpectrumKind,
    baseline_catalog,
    bounds_for,
    compare_report,
    search_problem34,
)


def catalog(g, kind):
    return {bv.id: bv for bv in baseline_catalog(g, kind)}


class TestKinds:
    def test_eight_combinations(self):
        labels = {SpectrumKind(k, d).label for k in MatrixKind for d in (False, True)}
        assert len(labels) == 8

    def test_of_graph(self):
        sk = SpectrumKind.of("distance", generate("directed_cycle", 3))
        assert sk.directed and sk.label == "digraph-distance" and sk.symbol == "rho^D(digraph)"


class TestBoundsFor:
    def test_p3_adjacency(self):
        r = bounds_for(generate("path", 3), "adjacency")
        assert r.bounds.lower == pytest.approx(math.sqrt(2), abs=1e-12)
        assert r.bounds.upper == pytest.approx(math.sqrt(2), abs=1e-12)
        assert r.diagnosis.condition_ii is not None
        assert r.classification["same_partition_average_degree"]
        assert r.predicted_equality

    def test_p3_distance(self):
        r = bounds_for(generate("path", 3), "distance")
        assert (r.bounds.lower, r.bounds.upper) == pytest.approx((8 / 3, 2 * math.sqrt(2)), abs=1e-12)
        assert r.rho.rho == pytest.approx(2.7320508, abs=1e-7)
        assert r.diagnosis.side is Side.NeitherAttained
        assert not r.predicted_equality

    def test_p3_distance_signless_laplacian(self):
        r = bounds_for(generate("path", 3), "distance-signless-laplacian")
        assert r.bounds.lower == pytest.approx(5.3723, abs=1e-4)
        assert r.bounds.upper == pytest.approx(5.6667, abs=1e-4)
        assert r.rho.rho == pytest.approx(5.5616, abs=1e-4)

    def test_disconnected(self):
        with pytest.raises(NotConnected):
            bounds_for(Graph.from_edges(4, [(1, 2), (3, 4)]), "adjacency")

    @pytest.mark.parametrize(
        "g,attained",
        [
            (generate("cycle", 4), True),
            (generate("star", 3), True),
            (generate("star", 6), True),
            (generate("complete_bipartite", 2, 5), True),
            (generate("path", 4), False),
            (generate("path", 5), True),
        ],
    )
    def test_adjacency_iff(self, g, attained):
        r = bounds_for(g, "adjacency")
        assert r.diagnosis.attained is attained
        assert r.predicted_equality is attained

    def test_prediction_matches_diagnosis(self):
        graphs = [generate("path", n) for n in range(3, 8)]
        graphs += [generate("cycle", n) for n in range(3, 8)]
        graphs += [generate("gnp", 7, 0.4, seed=s) for s in range(15)]
        graphs += [generate("random_digraph", 6, 0.4, seed=s) for s in range(15)]
        graphs += [generate("petersen"), generate("directed_cycle", 4)]
        for g in graphs:
            for kind in MatrixKind:
                r = bounds_for(g, kind)
                assert r.predicted_equality is r.diagnosis.attained, (g, kind)

    def test_distance_kinds_never_partitioned(self):
        graphs = [generate("path", n) for n in range(3, 7)] + [generate("complete_bipartite", 2, 3)]
        graphs += [generate("random_digraph", 5, 0.5, seed=s) for s in range(5)]
        for g in graphs:
            for kind in ("distance", "distance-signless-laplacian"):
                r = bounds_for(g, kind)
                assert r.diagnosis.condition_ii is None
                ratio_const = "T_over_D_constant" if kind == "distance" else "D_plus_T_over_D_constant"
                assert r.classification[ratio_const] is r.diagnosis.attained

    def test_oracle_agrees_with_dense_solver(self):
        for s in range(10):
            g = generate("gnp", 9, 0.35, seed=s)
            for kind in MatrixKind:
                r = bounds_for(g, kind)
                assert r.rho.rho == pytest.approx(eig_rho(build_system(g, kind).B), rel=1e-9)


class TestCatalog:
    def test_p3_adjacency(self):
        c = catalog(generate("path", 3), "adjacency")
        assert set(c) == {"1.1", "1.2"}
        assert c["1.2"].upper == pytest.approx(math.sqrt(2))
        assert c["1.2"].lower is None
        assert c["1.1"].note

    def test_p3_distance(self):
        c = catalog(generate("path", 3), "distance")
        assert set(c) == {"1.5", "1.6", "1.7"}
        assert (c["1.7"].lower, c["1.7"].upper) == pytest.approx((math.sqrt(6), math.sqrt(8)))
        assert c["1.6"].lower == pytest.approx(8 / 3)

    def test_directed_cycle_adjacency(self):
        c = catalog(generate("directed_cycle", 3), "adjacency")
        assert set(c) == {"1.11", "1.12", "1.13", "1.14", "1.15"}
        assert (c["1.11"].lower, c["1.11"].upper) == (1.0, 1.0)

    def test_families_per_kind(self):
        g, dg = generate("cycle", 5), generate("directed_cycle", 4)
        assert set(catalog(g, "signless-laplacian")) == {"1.3", "1.4"}
        assert set(catalog(g, "distance-signless-laplacian")) == {"1.8", "1.9", "1.10"}
        assert set(catalog(dg, "signless-laplacian")) == {"1.16", "1.17", "1.18"}
        assert set(catalog(dg, "distance")) == {"1.19", "1.20"}
        assert catalog(dg, "distance-signless-laplacian") == {}

    def test_upper_only_formulas(self):
        upper_only = {"1.1", "1.2", "1.3", "1.4", "1.5", "1.8", "1.18"}
        for g in (generate("star", 4), generate("directed_cycle", 4)):
            for kind in MatrixKind:
                for bv in baseline_catalog(g, kind):
                    assert bv.upper is not None
                    assert (bv.lower is None) == (bv.id in upper_only)

    def test_exempt_formula_is_loose_not_wrong(self):
        # as printed it lacks the square root; since rho >= 1 it still bounds, only loosely
        for g in (generate("star", 5), generate("petersen"), generate("gnp", 8, 0.4, seed=2)):
            rho = bounds_for(g, "adjacency").rho.rho
            printed = catalog(g, "adjacency")["1.1"].upper
            assert rho**2 <= printed + 1e-9
        assert "1.1" in CATALOG_EXEMPT


class TestCompare:
    def test_p3_distance_rows(self):
        rep, rows = compare_report(generate("path", 3), "distance")
        assert [r.bound_id for r in rows] == ["theorem", "1.5", "1.6", "1.7"]
        for r in rows:
            assert r.upper_gap >= -1e-9
            assert r.lower is None or r.lower_gap >= -1e-9

    def test_k3_adjacency_all_two(self):
        _, rows = compare_report(generate("complete", 3), "adjacency")
        assert rows[0].lower == pytest.approx(2) and rows[0].upper == pytest.approx(2)
        assert catalog(generate("complete", 3), "adjacency")["1.2"].upper == pytest.approx(2)

    def test_petersen_dsl_degenerate(self):
        _, rows = compare_report(generate("petersen"), "distance-signless-laplacian")
        for r in rows:
            assert r.upper == pytest.approx(30)
            if r.lower is not None:
                assert r.lower == pytest.approx(30)


class TestSearch:
    def test_small(self):
        s = search_problem34(4)
        assert s.examined > 0 and s.wall_time >= 0
        assert s.witnesses == []
        assert set(s.per_n) == {2, 3, 4}
        assert s.per_n[4]["examined"] == 1 + 5  # K_{1,3}; C4 and four P4s in K_{2,2}
        assert sum(v["examined"] for v in s.per_n.values()) == s.examined

    def test_max_n_5(self):
        s = search_problem34(5)
        assert s.examined > search_problem34(4).examined
        assert s.max_n == 5

    @pytest.mark.parametrize("bad", [3, 11, 4.0, "5"])
    def test_bad_max_n(self, bad):
        with pytest.raises(BadParams):
            search_problem34(bad)

    def test_bad_tol(self):
        with pytest.raises(BadParams):
            search_problem34(4, tol=0.0)

    def test_workers_match_sequential(self):
        a = search_problem34(6)
        b = search_problem34(6, workers=2)
        assert (a.examined, a.unique, a.chain_holds, a.per_n) == (b.examined, b.unique, b.chain_holds, b.per_n)
        assert a.witnesses == b.witnesses

    def test_counts_match_networkx(self):
        import itertools

        import networkx as nx

        s = search_problem34(5)
        for n in range(2, 6):
            total = 0
            for a in range(1, n // 2 + 1):
                b = n - a
                slots = [(i, a + j) for i in range(a) for j in range(b)]
                for k in range(len(slots) + 1):
                    for chosen in itertools.combinations(slots, k):
                        G = nx.Graph()
                        G.add_nodes_from(range(n))
                        G.add_edges_from(chosen)
                        total += nx.is_connected(G)
            assert s.per_n[n]["examined"] == total
