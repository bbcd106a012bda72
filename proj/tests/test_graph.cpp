#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <numeric>

#include "cpkit/errors.hpp"
#include "cpkit/generate.hpp"
#include "cpkit/graph.hpp"
#include "fixtures.hpp"
#include "oracles.hpp"

using namespace cpkit;

TEST_CASE("construction drops self-loops and duplicates") {
    BuildStats stats;
    const std::vector<Edge> raw{{0, 1}, {1, 0}, {2, 2}, {1, 2}, {1, 2}};
    const Graph g = Graph::from_edges(3, raw, &stats);
    CHECK(g.num_edges() == 2);
    CHECK(stats.self_loops_dropped == 1);
    CHECK(stats.duplicates_dropped == 2);
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(2, 1));
    CHECK_FALSE(g.has_edge(0, 2));
}

TEST_CASE("adjacency symmetry and sorted neighbor lists") {
    const Graph g = fixtures::random_graph(40, 0.2, 123);
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        const auto nb = g.neighbors(v);
        CHECK(std::is_sorted(nb.begin(), nb.end()));
        for (const NodeId w : nb) {
            CHECK(w != v);
            CHECK(g.has_edge(w, v));
        }
    }
}

TEST_CASE("degrees") {
    SUBCASE("empty graph") {
        const Graph g = fixtures::empty(3);
        CHECK(degrees(g) == std::vector<NodeId>{0, 0, 0});
    }
    SUBCASE("star") {
        const Graph g = fixtures::star(5);
        CHECK(degrees(g) == std::vector<NodeId>{4, 1, 1, 1, 1});
    }
    SUBCASE("ER fixture matches independent recount") {
        const Graph g = generate_er(50, 0.10, Rng(7));
        const std::vector<NodeId> d = degrees(g);
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
            NodeId count = 0;
            for (NodeId w = 0; w < g.num_nodes(); ++w) count += g.has_edge(v, w) ? 1 : 0;
            CHECK(d[v] == count);
        }
    }
    SUBCASE("degree sum is twice the edge count") {
        for (const std::uint64_t seed : {1, 2, 3, 4}) {
            const Graph g = fixtures::random_graph(30, 0.15, seed);
            const std::vector<NodeId> d = degrees(g);
            CHECK(std::accumulate(d.begin(), d.end(), std::int64_t{0}) == 2 * g.num_edges());
        }
    }
}

TEST_CASE("bfs distances") {
    SUBCASE("path") {
        const DistanceRow row = bfs_distances(fixtures::path(3), 0);
        CHECK(row.dist == std::vector<std::int32_t>{0, 1, 2});
    }
    SUBCASE("unreachable marker") {
        const DistanceRow row = bfs_distances(fixtures::empty(2), 0);
        CHECK(row.dist[0] == 0);
        CHECK(row.dist[1] == DistanceRow::kUnreachable);
    }
    SUBCASE("six-cycle") {
        const DistanceRow row = bfs_distances(fixtures::cycle(6), 0);
        CHECK(row.dist == std::vector<std::int32_t>{0, 1, 2, 3, 2, 1});
    }
    SUBCASE("agrees with Floyd-Warshall on small fixtures") {
        for (const std::uint64_t seed : {10, 11, 12}) {
            const Graph g = fixtures::random_graph(12, 0.25, seed);
            const auto fw = oracles::floyd_warshall(g);
            for (NodeId s = 0; s < g.num_nodes(); ++s) {
                const DistanceRow row = bfs_distances(g, s);
                for (NodeId t = 0; t < g.num_nodes(); ++t) {
                    const int expected = fw[s][t] >= oracles::kInf ? DistanceRow::kUnreachable : fw[s][t];
                    CHECK(row.dist[t] == expected);
                }
            }
        }
    }
    SUBCASE("distance symmetry and triangle inequality") {
        const Graph g = fixtures::random_connected_graph(15, 0.2, 99);
        const NodeId n = g.num_nodes();
        std::vector<DistanceRow> rows;
        for (NodeId s = 0; s < n; ++s) rows.push_back(bfs_distances(g, s));
        for (NodeId i = 0; i < n; ++i) {
            for (NodeId j = 0; j < n; ++j) {
                CHECK(rows[i].dist[j] == rows[j].dist[i]);
                for (NodeId k = 0; k < n; ++k) {
                    CHECK(rows[i].dist[j] <= rows[i].dist[k] + rows[k].dist[j]);
                }
            }
        }
    }
}

TEST_CASE("closeness centrality") {
    const Graph star = fixtures::star(5);
    SUBCASE("star center") {
        const NodeId center[] = {0};
        CHECK(closeness_centrality(star, center) == doctest::Approx(1.0));
    }
    SUBCASE("star leaf") {
        const NodeId leaf[] = {1};
        CHECK(closeness_centrality(star, leaf) == doctest::Approx(4.0 / 7.0));
    }
    SUBCASE("complete graph, whole vertex set") {
        const Graph k4 = fixtures::complete(4);
        std::vector<NodeId> all(4);
        std::iota(all.begin(), all.end(), 0);
        CHECK(closeness_centrality(k4, all) == doctest::Approx(1.0));
    }
    SUBCASE("unreachable pair refuses") {
        const Graph g = fixtures::empty(3);
        const NodeId u[] = {0};
        CHECK_THROWS_AS(closeness_centrality(g, u), UnreachablePairError);
    }
}

TEST_CASE("k-core") {
    SUBCASE("k = 0 keeps everything") {
        const Graph g = fixtures::random_graph(10, 0.2, 5);
        CHECK(k_core(g, 0).size() == 10);
    }
    SUBCASE("triangle with pendant") {
        const Graph g = Graph::from_edges(4, {{0, 1}, {1, 2}, {0, 2}, {0, 3}});
        CHECK(k_core(g, 2) == std::vector<NodeId>{0, 1, 2});
    }
    SUBCASE("k above max degree is empty") {
        const Graph g = fixtures::star(6);
        CHECK(k_core(g, 6).empty());
    }
    SUBCASE("nesting and agreement with naive peeling") {
        for (const std::uint64_t seed : {21, 22, 23}) {
            const Graph g = fixtures::random_graph(25, 0.2, seed);
            std::vector<NodeId> prev = k_core(g, 0);
            for (int k = 1; k <= 8; ++k) {
                const std::vector<NodeId> cur = k_core(g, k);
                CHECK(cur == oracles::naive_k_core(g, k));
                CHECK(std::includes(prev.begin(), prev.end(), cur.begin(), cur.end()));
                prev = cur;
            }
        }
    }
}

TEST_CASE("capacity") {
    CHECK(capacity(fixtures::complete(3)) == doctest::Approx(3.0));
    CHECK(capacity(fixtures::path(3)) == doctest::Approx(2.5));
    CHECK(capacity(fixtures::empty(2)) == doctest::Approx(0.0));

    SUBCASE("bounded by the pair count, equality only for complete graphs") {
        for (const std::uint64_t seed : {31, 32, 33}) {
            const Graph g = fixtures::random_graph(12, 0.3, seed);
            const double pairs = 12.0 * 11.0 / 2.0;
            CHECK(capacity(g) <= pairs + 1e-12);
            if (g.num_edges() < 66) CHECK(capacity(g) < pairs - 1e-12);
        }
        CHECK(capacity(fixtures::complete(8)) == doctest::Approx(28.0));
    }
}

TEST_CASE("detour path counts") {
    SUBCASE("triangle") {
        const Graph g = fixtures::complete(3);
        const PathCounts pc = path_counts_excluding(g, 1, 2);
        CHECK(pc.sigma == doctest::Approx(1.0));
        CHECK(pc.through[0] == doctest::Approx(1.0));
        CHECK(pc.through[1] == 0.0);
        CHECK(pc.through[2] == 0.0);
    }
    SUBCASE("star pair disconnects") {
        const Graph g = fixtures::star(5);
        const PathCounts pc = path_counts_excluding(g, 0, 1);
        CHECK(pc.sigma == 0.0);
        for (const double t : pc.through) CHECK(t == 0.0);
    }
    SUBCASE("four-cycle") {
        const Graph g = fixtures::cycle(4);
        const PathCounts pc = path_counts_excluding(g, 1, 2);
        CHECK(pc.sigma == doctest::Approx(1.0));
        CHECK(pc.through[0] == doctest::Approx(1.0));
        CHECK(pc.through[3] == doctest::Approx(1.0));
    }
    SUBCASE("requires an existing edge") {
        const Graph g = fixtures::path(4);
        CHECK_THROWS_AS(path_counts_excluding(g, 0, 3), NotAnEdgeError);
    }
    SUBCASE("interior count bounds") {
        const Graph g = fixtures::random_connected_graph(14, 0.25, 44);
        for (const auto& [j, k] : g.edge_list()) {
            const PathCounts pc = path_counts_excluding(g, j, k);
            double total = 0.0;
            for (const double t : pc.through) {
                CHECK(t <= pc.sigma + 1e-9);
                total += t;
            }
            const DistanceRow row = bfs_distances(g, j);
            (void)row;
            if (pc.sigma > 0.0) {
                CHECK(total <= pc.sigma * static_cast<double>(g.num_nodes()));
            } else {
                CHECK(total == 0.0);
            }
        }
    }
}

TEST_CASE("canonical hash is structure-sensitive") {
    const Graph a = fixtures::path(5);
    const Graph b = fixtures::path(5);
    const Graph c = fixtures::cycle(5);
    CHECK(a.canonical_hash() == b.canonical_hash());
    CHECK(a.canonical_hash() != c.canonical_hash());
}
