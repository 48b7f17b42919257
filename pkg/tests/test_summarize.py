import itertools

import pytest

from graphsim.generate import PlantSpec, er, plant
from graphsim.graph import Graph, jaccard
from graphsim.structures import Biclique, Clique, Star, StructureKind
from graphsim.summarize import (
    SummarizerConfig,
    decompose,
    grow_biclique,
    grow_clique,
    grow_star,
    grow_starclique,
    max_clique,
    merge_candidates,
    summarize,
)


def star_graph(spokes, offset=0, extra=()):
    hub = offset
    edges = [(hub, offset + i) for i in range(1, spokes + 1)]
    edges += list(extra)
    return edges


def clique_edges(nodes):
    return list(itertools.combinations(nodes, 2))


CFG10 = SummarizerConfig(min_component_size=10)


class TestDecompose:
    def test_single_star(self):
        g = Graph(10, star_graph(9))
        seeds = decompose(g, CFG10)
        assert seeds == [set(range(10))]

    def test_two_stars_largest_first_tie_lowest_index(self):
        edges = star_graph(9) + star_graph(9, offset=10)
        g = Graph(20, edges)
        seeds = decompose(g, CFG10)
        assert seeds == [set(range(10)), set(range(10, 20))]

    def test_er_shatters_quickly(self):
        g = er(50, 0.02, seed=3)
        seeds = decompose(g, CFG10)
        assert len(seeds) <= 5

    def test_residual_below_threshold(self):
        # after extracting the hub of K_{1,9} nothing of size >= 10 remains
        g = Graph(10, star_graph(9))
        assert len(decompose(g, CFG10)) == 1

    def test_small_graph_mode_lowers_threshold(self):
        g = Graph(6, star_graph(5))
        assert decompose(g, SummarizerConfig()) == [set(range(6))]
        assert decompose(g, CFG10) == []


class TestMaxClique:
    def test_exact_on_planted(self):
        edges = clique_edges(range(6)) + [(6, 0), (7, 1)]
        g = Graph(8, edges)
        assert set(max_clique(g, range(8))) == set(range(6))

    def test_greedy_above_limit(self):
        edges = clique_edges(range(12)) + [(u, u + 12) for u in range(12)]
        g = Graph(24, edges)
        found = max_clique(g, range(24), exact_limit=5)
        assert set(found) <= set(range(12)) and len(found) >= 8

    def test_deterministic(self):
        g = er(40, 0.3, seed=7)
        assert max_clique(g, range(40)) == max_clique(g, range(40))


class TestGrowClique:
    def test_recovers_embedded_clique(self):
        g = Graph(12, clique_edges(range(6)) + [(6, 7), (8, 9), (10, 11)])
        cfg = SummarizerConfig(min_component_size=3)
        cand = grow_clique(set(range(6)), g, cfg)
        assert cand.nodes == frozenset(range(6))
        assert cand.m_s == 15

    def test_absorbs_well_connected_node(self):
        edges = clique_edges(range(20)) + [(20, i) for i in range(15)]
        g = Graph(21, edges)
        cand = grow_clique(set(range(20)), g, CFG10)
        assert 20 in cand.nodes

    def test_tree_seed_discarded(self):
        g = Graph(12, [(i, i + 1) for i in range(11)])
        assert grow_clique(set(range(12)), g, CFG10) is None


class TestGrowStar:
    def test_pure_star_no_pruning(self):
        g = Graph(21, star_graph(20))
        cand = grow_star(set(range(21)), g, CFG10)
        assert cand.hub == 0
        assert cand.spokes == frozenset(range(1, 21))
        assert cand.x_s == 0

    def test_triangle_spokes_pruned(self):
        extra = [(1, 2), (1, 3), (2, 3)]
        g = Graph(21, star_graph(20, extra=extra))
        cand = grow_star(set(range(21)), g, CFG10)
        # hand trace: drop spoke 1 (i=0), then spoke 2 (i=1), then stop
        assert cand.spokes == frozenset(range(3, 21))
        assert cand.x_s == 0

    def test_k5_seed_discarded(self):
        g = Graph(5, clique_edges(range(5)))
        assert grow_star(set(range(5)), g, CFG10) is None


class TestGrowBiclique:
    def test_recovers_planted(self):
        g, truth = plant(200, 2.0 / 200, [PlantSpec(StructureKind.BICLIQUE, (5, 8))],
                         seed=11)
        cand = grow_biclique(set(range(13)), g, CFG10)
        assert cand is not None
        planted = truth[0]
        assert jaccard(cand.left, planted.left) >= 0.8
        assert jaccard(cand.right, planted.right) >= 0.8

    def test_clique_seed_discarded(self):
        g = Graph(8, clique_edges(range(8)))
        assert grow_biclique(set(range(8)), g, CFG10) is None

    def test_thin_left_side_discarded(self):
        left, right = range(2), range(2, 11)
        g = Graph(11, [(u, v) for u in left for v in right])
        assert grow_biclique(set(range(11)), g, CFG10) is None


class TestGrowStarclique:
    def test_recovers_planted(self):
        g, truth = plant(300, 0.001,
                         [PlantSpec(StructureKind.STARCLIQUE, (10, 30))], seed=13)
        cand = grow_starclique(set(range(40)), g, CFG10)
        planted = truth[0]
        assert jaccard(cand.left, planted.left) >= 0.8
        assert jaccard(cand.right, planted.right) >= 0.8

    def test_pure_star_seed_discarded(self):
        g = Graph(21, star_graph(20))
        assert grow_starclique(set(range(21)), g, CFG10) is None

    def test_pure_clique_seed_discarded(self):
        g = Graph(10, clique_edges(range(10)))
        assert grow_starclique(set(range(10)), g, CFG10) is None


class TestMerge:
    def test_overlapping_cliques_merge(self):
        nodes = range(11)
        g = Graph(11, clique_edges(nodes))
        a = Clique(frozenset(range(10)), 45)
        b = Clique(frozenset(range(1, 11)), 45)
        merged = merge_candidates([a, b], StructureKind.CLIQUE, CFG10, g)
        assert len(merged) == 1
        assert merged[0].nodes == frozenset(range(11))
        assert merged[0].m_s == 55

    def test_stars_never_merge(self):
        g = Graph(12, star_graph(10) + [(11, 1)])
        a = Star(0, frozenset(range(1, 11)), 0)
        b = Star(11, frozenset({1}), 0)
        merged = merge_candidates([a, b], StructureKind.STAR, CFG10, g)
        assert len(merged) == 2

    def test_bicliques_require_both_sides(self):
        left, r1, r2 = range(5), range(5, 10), range(10, 15)
        edges = [(u, v) for u in left for v in list(r1) + list(r2)]
        g = Graph(15, edges)
        a = Biclique(frozenset(left), frozenset(r1), 0, 0, 25)
        b = Biclique(frozenset(left), frozenset(r2), 0, 0, 25)
        merged = merge_candidates([a, b], StructureKind.BICLIQUE, CFG10, g)
        assert len(merged) == 2

    def test_exact_duplicates_collapse(self):
        g = Graph(10, clique_edges(range(10)))
        a = Clique(frozenset(range(10)), 45)
        merged = merge_candidates([a, a, a], StructureKind.CLIQUE, CFG10, g)
        assert len(merged) == 1


class TestSummarize:
    def planted(self, seed=42):
        specs = [
            PlantSpec(StructureKind.CLIQUE, (30,)),
            PlantSpec(StructureKind.STAR, (50,)),
            PlantSpec(StructureKind.BICLIQUE, (8, 12)),
            PlantSpec(StructureKind.STARCLIQUE, (10, 30)),
        ]
        return plant(300, 0.0007, specs, seed=seed)

    def test_recovers_all_four_kinds(self):
        g, truth = self.planted()
        model, report = summarize(g)
        census = report.kind_census
        assert all(census[k.value] >= 1 for k in StructureKind)
        for planted in truth:
            best = max(
                (s for s in model.structures if s.kind is planted.kind),
                key=lambda s: jaccard(s.node_set, planted.node_set),
            )
            assert jaccard(best.node_set, planted.node_set) >= 0.8

    def test_deterministic(self):
        g, _ = self.planted()
        m1, r1 = summarize(g)
        m2, r2 = summarize(g)
        assert m1.structures == m2.structures
        assert r1.total_bits == r2.total_bits

    def test_accepted_entries_strictly_reduce_ledger_bits(self):
        g, _ = self.planted()
        _, report = summarize(g)
        for entry in report.ledger:
            if entry["accepted"]:
                assert entry["bits_after"] < entry["bits_before"]
            else:
                assert entry["bits_after"] == entry["bits_before"]

    def test_total_never_exceeds_baseline(self):
        g, _ = self.planted()
        _, report = summarize(g)
        assert report.total_bits <= report.baseline_bits
        assert report.accepted <= 100

    def test_max_structures_cap(self):
        g, _ = self.planted()
        _, report = summarize(g, SummarizerConfig(max_structures=2))
        assert report.accepted == 2

    def test_rejection_budget_stops_early(self):
        g = er(300, 0.03, seed=1)
        _, report = summarize(g, SummarizerConfig(max_rejections=5))
        assert report.rejected <= 5

    def test_structure_invariants_hold(self):
        g, _ = self.planted()
        model, _ = summarize(g)
        for s in model.structures:
            assert s.n_s >= 3
            assert all(v < g.n for v in s.node_set)

    def test_er_yields_nothing(self):
        g = er(400, 0.02, seed=21)
        model, report = summarize(g, SummarizerConfig(min_component_size=10))
        assert report.accepted <= 1
        assert report.compression_pct <= 1.0
