#pragma once

// Hand-built graphs shared by the test suites. These are constructed edge by
// edge, independent of the library's generators.

#include <vector>

#include "cpkit/graph.hpp"

namespace fixtures {

using cpkit::Edge;
using cpkit::Graph;
using cpkit::NodeId;

inline Graph path(NodeId n) {
    std::vector<Edge> edges;
    for (NodeId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    return Graph::from_edges(n, edges);
}

inline Graph cycle(NodeId n) {
    std::vector<Edge> edges;
    for (NodeId v = 0; v < n; ++v) edges.emplace_back(v, (v + 1) % n);
    return Graph::from_edges(n, edges);
}

// Center is node 0.
inline Graph star(NodeId n) {
    std::vector<Edge> edges;
    for (NodeId v = 1; v < n; ++v) edges.emplace_back(0, v);
    return Graph::from_edges(n, edges);
}

inline Graph complete(NodeId n) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
    }
    return Graph::from_edges(n, edges);
}

inline Graph empty(NodeId n) { return Graph::from_edges(n, std::vector<Edge>{}); }

// Ideal core-periphery pattern: nodes 0..k-1 form the core; every pair with
// at least one core endpoint is an edge, periphery pairs are non-edges.
inline Graph ideal_cp(NodeId n, NodeId k) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (i < k || j < k) edges.emplace_back(i, j);
        }
    }
    return Graph::from_edges(n, edges);
}

// Simple LCG-driven random graph, independent of the library's RNG and
// generators; per-pair threshold test in lexicographic order.
inline Graph random_graph(NodeId n, double p, std::uint64_t seed) {
    std::uint64_t s = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    const auto next = [&s]() {
        s = s * 6364136223846793005ULL + 1442695040888963407ULL;
        return static_cast<double>(s >> 11) * 0x1.0p-53;
    };
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (next() < p) edges.emplace_back(i, j);
        }
    }
    return Graph::from_edges(n, edges);
}

// Random connected graph: random edges plus a spanning path to guarantee
// connectivity.
inline Graph random_connected_graph(NodeId n, double p, std::uint64_t seed) {
    std::uint64_t s = seed * 2862933555777941757ULL + 3037000493ULL;
    const auto next = [&s]() {
        s = s * 2862933555777941757ULL + 3037000493ULL;
        return static_cast<double>(s >> 11) * 0x1.0p-53;
    };
    std::vector<Edge> edges;
    for (NodeId v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 2; j < n; ++j) {
            if (next() < p) edges.emplace_back(i, j);
        }
    }
    return Graph::from_edges(n, edges);
}

}  // namespace fixtures
