#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "cpkit/errors.hpp"
#include "cpkit/generate.hpp"
#include "cpkit/metrics.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cpkit;

namespace {

CoreAssignment first_k_core_labels(NodeId n, NodeId k) {
    CoreAssignment c = CoreAssignment::all_periphery(n);
    for (NodeId v = 0; v < k; ++v) c.labels[v] = 1;
    return c;
}

}  // namespace

TEST_CASE("borgatti rho") {
    SUBCASE("graph equal to its ideal pattern correlates perfectly") {
        const Graph g = fixtures::ideal_cp(5, 2);
        CHECK(borgatti_rho(g, first_k_core_labels(5, 2)) == doctest::Approx(1.0));
    }
    SUBCASE("all-core pattern has zero variance") {
        const Graph g = fixtures::ideal_cp(5, 2);
        CHECK_THROWS_AS(borgatti_rho(g, first_k_core_labels(5, 5)), DegenerateVarianceError);
    }
    SUBCASE("path with middle-node core matches the flat-loop Pearson oracle") {
        const Graph g = fixtures::path(5);
        const CoreAssignment c = CoreAssignment::from_core_set(5, std::vector<NodeId>{2});
        CHECK(borgatti_rho(g, c) == doctest::Approx(oracles::pearson_rho(g, c)).epsilon(1e-12));
    }
    SUBCASE("oracle agreement on random graphs and labelings") {
        for (const std::uint64_t seed : {3, 4, 5}) {
            const Graph g = fixtures::random_graph(12, 0.3, seed);
            if (g.num_edges() == 0 || g.num_edges() == 66) continue;
            for (NodeId k = 1; k < 11; ++k) {  // K = n-1 makes the pattern constant
                const CoreAssignment c = first_k_core_labels(12, k);
                CHECK(borgatti_rho(g, c) == doctest::Approx(oracles::pearson_rho(g, c)).epsilon(1e-12));
            }
        }
    }
    SUBCASE("invariant under graph automorphisms applied to the labels") {
        const Graph g = fixtures::cycle(6);
        const CoreAssignment c = CoreAssignment::from_core_set(6, std::vector<NodeId>{0, 2});
        const double base = borgatti_rho(g, c);
        for (int shift = 1; shift < 6; ++shift) {
            CoreAssignment rotated = CoreAssignment::all_periphery(6);
            for (NodeId v = 0; v < 6; ++v) rotated.labels[(v + shift) % 6] = c.labels[v];
            CHECK(borgatti_rho(g, rotated) == doctest::Approx(base).epsilon(1e-12));
        }
    }
}

TEST_CASE("brusco Z") {
    SUBCASE("ideal pattern") {
        const Graph g = fixtures::ideal_cp(5, 2);
        CHECK(brusco_z(g, first_k_core_labels(5, 2)) == 4);
    }
    SUBCASE("empty graph, all periphery") {
        CHECK(brusco_z(fixtures::empty(6), first_k_core_labels(6, 0)) == 15);
    }
    SUBCASE("complete graph, all core") {
        CHECK(brusco_z(fixtures::complete(6), first_k_core_labels(6, 6)) == 15);
    }
    SUBCASE("complement identity, against pair enumeration") {
        for (const std::uint64_t seed : {7, 8}) {
            const Graph g = fixtures::random_graph(10, 0.4, seed);
            std::vector<Edge> co_edges;
            for (NodeId i = 0; i < 10; ++i) {
                for (NodeId j = i + 1; j < 10; ++j) {
                    if (!g.has_edge(i, j)) co_edges.emplace_back(i, j);
                }
            }
            const Graph co = Graph::from_edges(10, co_edges);
            for (NodeId k = 0; k <= 10; ++k) {
                const CoreAssignment c = first_k_core_labels(10, k);
                CoreAssignment flipped = c;
                for (auto& b : flipped.labels) b ^= 1;
                CHECK(brusco_z(g, c) == oracles::brusco_direct(g, c));
                CHECK(brusco_z(co, flipped) == brusco_z(g, c));
            }
        }
    }
}

TEST_CASE("holme c_cp") {
    SUBCASE("star is exactly its own ensemble") {
        const HolmeResult res = holme_ccp(fixtures::star(5), {.ensemble_size = 7}, Rng(1));
        CHECK(std::abs(res.c_cp) <= 1e-12);
        CHECK(res.observed_ratio == doctest::Approx(1.0));
    }
    SUBCASE("complete graph") {
        const HolmeResult res = holme_ccp(fixtures::complete(5), {.ensemble_size = 5}, Rng(2));
        CHECK(std::abs(res.c_cp) <= 1e-12);
    }
    SUBCASE("homogeneous ER carries no excess core closeness") {
        const Graph g = generate_er(50, 0.2, Rng(11));
        const HolmeResult res = holme_ccp(g, {.ensemble_size = 50}, Rng(11).child("holme"));
        CHECK(std::abs(res.c_cp) < 0.1);
    }
    SUBCASE("deterministic given seed") {
        const Graph g = fixtures::random_connected_graph(30, 0.12, 5);
        const HolmeResult a = holme_ccp(g, {.ensemble_size = 10}, Rng(42));
        const HolmeResult b = holme_ccp(g, {.ensemble_size = 10}, Rng(42));
        CHECK(a.c_cp == b.c_cp);
        CHECK(a.replicate_ratios == b.replicate_ratios);
    }
}

TEST_CASE("da Silva core coefficient") {
    SUBCASE("complete K5") {
        const DaSilvaResult res = dasilva_core_coefficient(fixtures::complete(5));
        CHECK(res.cc == doctest::Approx(0.4));
        CHECK(res.crossing == 2);
        CHECK(res.capacities[0] == doctest::Approx(10.0));
        CHECK(res.capacities[1] == doctest::Approx(6.0));
        CHECK(res.capacities[2] == doctest::Approx(3.0));
    }
    SUBCASE("single edge") {
        const DaSilvaResult res = dasilva_core_coefficient(fixtures::path(2));
        CHECK(res.cc == doctest::Approx(0.0));
    }
    SUBCASE("star matches the hand removal trace") {
        const DaSilvaResult res = dasilva_core_coefficient(fixtures::star(5));
        // Center ranks first; capacities 7, then 0 for every later stage.
        CHECK(res.removal_order[0] == 0);
        CHECK(res.capacities[0] == doctest::Approx(7.0));
        for (std::size_t i = 1; i < res.capacities.size(); ++i) CHECK(res.capacities[i] == doctest::Approx(0.0));
        CHECK(res.crossing == 0);
        CHECK(res.cc == doctest::Approx(0.0));
    }
    SUBCASE("disconnected input refuses") {
        CHECK_THROWS_AS(dasilva_core_coefficient(fixtures::empty(3)), UnreachablePairError);
    }
}

TEST_CASE("persistence probability") {
    SUBCASE("whole vertex set persists") {
        const Graph g = fixtures::random_connected_graph(12, 0.2, 9);
        std::vector<NodeId> all(12);
        std::iota(all.begin(), all.end(), 0);
        CHECK(persistence_probability(g, all) == doctest::Approx(1.0));
    }
    SUBCASE("star leaves never persist") {
        const Graph g = fixtures::star(5);
        const std::vector<NodeId> leaves{1, 2, 3, 4};
        CHECK(persistence_probability(g, leaves) == doctest::Approx(0.0));
    }
    SUBCASE("complete-graph subsets") {
        const Graph g = fixtures::complete(7);
        for (NodeId s = 1; s <= 7; ++s) {
            std::vector<NodeId> sub(s);
            std::iota(sub.begin(), sub.end(), 0);
            CHECK(persistence_probability(g, sub) == doctest::Approx((s - 1.0) / 6.0));
        }
    }
    SUBCASE("isolated set scores zero") {
        const Graph g = Graph::from_edges(4, {{0, 1}});
        const std::vector<NodeId> isolated{2, 3};
        CHECK(persistence_probability(g, isolated) == 0.0);
    }
}

TEST_CASE("core-periphery profile") {
    SUBCASE("star") {
        const CPProfile prof = cp_profile(fixtures::star(5));
        REQUIRE(prof.alphas.size() == 5);
        for (int k = 0; k < 4; ++k) CHECK(prof.alphas[k] == doctest::Approx(0.0));
        CHECK(prof.alphas[4] == doctest::Approx(1.0));
        CHECK(prof.order.back() == 0);  // the center joins last
    }
    SUBCASE("complete K4") {
        const CPProfile prof = cp_profile(fixtures::complete(4));
        const std::vector<double> expected{0.0, 1.0 / 3.0, 2.0 / 3.0, 1.0};
        for (int k = 0; k < 4; ++k) CHECK(prof.alphas[k] == doctest::Approx(expected[k]));
    }
    SUBCASE("alphas non-decreasing on random connected graphs") {
        for (std::uint64_t seed = 0; seed < 200; ++seed) {
            const Graph g = fixtures::random_connected_graph(3 + seed % 14, 0.25, seed);
            const CPProfile prof = cp_profile(g);
            for (std::size_t k = 1; k < prof.alphas.size(); ++k) {
                CHECK(prof.alphas[k] >= prof.alphas[k - 1] - 1e-12);
            }
            CHECK(prof.alphas.back() == doctest::Approx(1.0));
        }
    }
    SUBCASE("alpha-periphery query") {
        const CPProfile prof = cp_profile(fixtures::star(5));
        CHECK(prof.periphery_at(0.5).size() == 4);
        CHECK(prof.periphery_at(1.0).size() == 5);
    }
    SUBCASE("empty graph refuses") {
        CHECK_THROWS_AS(cp_profile(fixtures::empty(3)), EmptyGraphError);
    }
}

TEST_CASE("centralization") {
    SUBCASE("star is exactly 1") {
        for (const NodeId n : {3, 5, 9}) {
            CHECK(cp_profile(fixtures::star(n)).centralization == 1.0);
        }
    }
    SUBCASE("complete K5 is 1/(n-1)") {
        CHECK(cp_profile(fixtures::complete(5)).centralization == doctest::Approx(0.25));
    }
    SUBCASE("all-ones prefix profile hits the lower extreme") {
        CPProfile prof;
        prof.order = {0, 1, 2};
        prof.alphas = {1.0, 1.0, 1.0};
        CHECK(cp_centralization(prof) == doctest::Approx(-1.0));
    }
}

TEST_CASE("path-core scores") {
    SUBCASE("triangle") {
        const std::vector<double> s = path_core_scores(fixtures::complete(3));
        for (const double v : s) CHECK(v == doctest::Approx(1.0));
    }
    SUBCASE("star is all zeros") {
        const std::vector<double> s = path_core_scores(fixtures::star(5));
        for (const double v : s) CHECK(v == 0.0);
    }
    SUBCASE("four-cycle") {
        const std::vector<double> s = path_core_scores(fixtures::cycle(4));
        for (const double v : s) CHECK(v == doctest::Approx(2.0));
    }
    SUBCASE("automorphism symmetry on cycles and cliques") {
        for (const Graph& g : {fixtures::cycle(7), fixtures::complete(6)}) {
            const std::vector<double> s = path_core_scores(g);
            for (std::size_t i = 1; i < s.size(); ++i) CHECK(s[i] == doctest::Approx(s[0]).epsilon(1e-12));
        }
    }
}

TEST_CASE("density-contrast objective") {
    SUBCASE("ideal pattern") {
        const Graph g = fixtures::ideal_cp(5, 2);
        CHECK(cucuringu_objective(g, first_k_core_labels(5, 2), {.beta = 0.4, .gamma = 1.0}) ==
              doctest::Approx(2.0));
    }
    SUBCASE("empty graph scores zero") {
        CHECK(cucuringu_objective(fixtures::empty(6), first_k_core_labels(6, 3), {.beta = 0.5, .gamma = 0.0}) ==
              doctest::Approx(0.0));
    }
    SUBCASE("matches direct-count oracle on a random graph") {
        const Graph g = generate_er(30, 0.3, Rng(3));
        Rng rng(17);
        for (int trial = 0; trial < 20; ++trial) {
            CoreAssignment c = CoreAssignment::all_periphery(30);
            NodeId k = 0;
            for (auto& b : c.labels) {
                b = rng.bernoulli(0.3);
                k += b;
            }
            if (k < 2 || k > 28) continue;
            const CucuringuConfig cfg{.beta = 0.3, .gamma = 1.0};
            CHECK(cucuringu_objective(g, c, cfg) ==
                  doctest::Approx(oracles::cucuringu_direct(g, c, cfg.beta, cfg.gamma)).epsilon(1e-12));
        }
    }
    SUBCASE("degenerate splits refuse") {
        const Graph g = fixtures::complete(6);
        CHECK_THROWS_AS(cucuringu_objective(g, first_k_core_labels(6, 1), {}), DegenerateSplitError);
        CHECK_THROWS_AS(cucuringu_objective(g, first_k_core_labels(6, 5), {}), DegenerateSplitError);
    }
}
