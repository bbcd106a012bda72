#include "cpkit/nulls.hpp"

#include <algorithm>
#include <unordered_set>

#include "cpkit/errors.hpp"

namespace cpkit {

std::string to_string(NullKind kind) {
    switch (kind) {
        case NullKind::RewirePreserveM: return "preserve-m";
        case NullKind::RewirePreserveDegrees: return "preserve-degrees";
        case NullKind::ParametricEr: return "er";
    }
    return "?";
}

namespace {

// Pair code <-> (i, j) with i < j, lexicographic.
std::int64_t pair_count(NodeId n) { return static_cast<std::int64_t>(n) * (n - 1) / 2; }

Edge decode_pair(NodeId n, std::int64_t code) {
    // Row i starts at offset i*n - i*(i+1)/2 - i ... walk rows directly.
    NodeId i = 0;
    std::int64_t row = n - 1;
    while (code >= row) {
        code -= row;
        ++i;
        --row;
    }
    return {i, static_cast<NodeId>(i + 1 + code)};
}

std::uint64_t edge_key(NodeId a, NodeId b) {
    if (a > b) std::swap(a, b);
    return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

}  // namespace

Graph rewire_preserve_m(const Graph& g, Rng& rng) {
    const NodeId n = g.num_nodes();
    const std::int64_t m = g.num_edges();
    const std::int64_t total = pair_count(n);
    // Floyd's sampling of m distinct codes from [0, total).
    std::unordered_set<std::int64_t> chosen;
    chosen.reserve(static_cast<std::size_t>(m) * 2);
    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (std::int64_t t = total - m; t < total; ++t) {
        const std::int64_t r = static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(t + 1)));
        const std::int64_t pick = chosen.insert(r).second ? r : t;
        if (pick != r) chosen.insert(pick);
        edges.push_back(decode_pair(n, pick));
    }
    return Graph::from_edges(n, edges);
}

Graph rewire_preserve_degrees(const Graph& g, std::int64_t n_swaps, Rng& rng) {
    const std::int64_t m = g.num_edges();
    if (m < 2) throw PreconditionError("degree-preserving rewiring needs at least 2 edges");
    std::vector<Edge> edges = g.edge_list();
    std::unordered_set<std::uint64_t> present;
    present.reserve(static_cast<std::size_t>(m) * 2);
    for (const auto& [a, b] : edges) present.insert(edge_key(a, b));

    for (std::int64_t s = 0; s < n_swaps; ++s) {
        const std::size_t e1 = static_cast<std::size_t>(rng.uniform_below(static_cast<std::uint64_t>(m)));
        const std::size_t e2 = static_cast<std::size_t>(rng.uniform_below(static_cast<std::uint64_t>(m)));
        if (e1 == e2) continue;
        auto [a, b] = edges[e1];
        auto [c, d] = edges[e2];
        if (rng.bernoulli(0.5)) std::swap(c, d);
        // Proposed replacement: (a, c), (b, d).
        if (a == c || a == d || b == c || b == d) continue;
        if (present.count(edge_key(a, c)) || present.count(edge_key(b, d))) continue;
        present.erase(edge_key(a, b));
        present.erase(edge_key(c, d));
        present.insert(edge_key(a, c));
        present.insert(edge_key(b, d));
        edges[e1] = {std::min(a, c), std::max(a, c)};
        edges[e2] = {std::min(b, d), std::max(b, d)};
    }
    Graph out = Graph::from_edges(g.num_nodes(), edges);
    out.set_node_names(g.node_names());
    return out;
}

Graph parametric_er(const Graph& g, Rng& rng) {
    const NodeId n = g.num_nodes();
    if (n < 2) throw PreconditionError("parametric ER bootstrap needs n >= 2");
    const double p_hat = static_cast<double>(g.num_edges()) / static_cast<double>(pair_count(n));
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (rng.uniform01() < p_hat) edges.emplace_back(i, j);
        }
    }
    return Graph::from_edges(n, edges);
}

Graph draw_null_replicate(const Graph& g, const NullSpec& null, Rng& rng) {
    switch (null.kind) {
        case NullKind::RewirePreserveM:
            return rewire_preserve_m(g, rng);
        case NullKind::RewirePreserveDegrees: {
            const std::int64_t swaps = null.swap_count > 0 ? null.swap_count : 10 * g.num_edges();
            return rewire_preserve_degrees(g, swaps, rng);
        }
        case NullKind::ParametricEr:
            return parametric_er(g, rng);
    }
    throw PreconditionError("unknown null kind");
}

}  // namespace cpkit
