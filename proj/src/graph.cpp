#include "cpkit/graph.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

#include "cpkit/errors.hpp"
#include "cpkit/parallel.hpp"

namespace cpkit {

Graph Graph::from_edges(NodeId n, std::span<const Edge> edges, BuildStats* stats) {
    if (n < 0) throw PreconditionError("node count must be non-negative");
    std::vector<Edge> canon;
    canon.reserve(edges.size());
    std::int64_t loops = 0;
    for (const auto& [a, b] : edges) {
        if (a < 0 || a >= n || b < 0 || b >= n)
            throw PreconditionError("edge endpoint out of range");
        if (a == b) {
            ++loops;
            continue;
        }
        canon.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(canon.begin(), canon.end());
    const auto last = std::unique(canon.begin(), canon.end());
    const std::int64_t dups = static_cast<std::int64_t>(canon.end() - last);
    canon.erase(last, canon.end());
    if (stats) {
        stats->self_loops_dropped = loops;
        stats->duplicates_dropped = dups;
    }

    Graph g;
    g.n_ = n;
    g.m_ = static_cast<std::int64_t>(canon.size());
    std::vector<std::int64_t> deg(static_cast<std::size_t>(n) + 1, 0);
    for (const auto& [a, b] : canon) {
        ++deg[static_cast<std::size_t>(a) + 1];
        ++deg[static_cast<std::size_t>(b) + 1];
    }
    g.offsets_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (NodeId v = 0; v < n; ++v) g.offsets_[v + 1] = g.offsets_[v] + deg[static_cast<std::size_t>(v) + 1];
    g.adj_.resize(static_cast<std::size_t>(2 * g.m_));
    std::vector<std::int64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
    for (const auto& [a, b] : canon) {
        g.adj_[static_cast<std::size_t>(cursor[a]++)] = b;
        g.adj_[static_cast<std::size_t>(cursor[b]++)] = a;
    }
    // Canonical input order already leaves each neighbor list sorted for the
    // lower endpoint; sort defensively covers the upper one too.
    for (NodeId v = 0; v < n; ++v) {
        std::sort(g.adj_.begin() + g.offsets_[v], g.adj_.begin() + g.offsets_[v + 1]);
    }
    return g;
}

bool Graph::has_edge(NodeId u, NodeId v) const {
    if (u == v) return false;
    const auto nb = neighbors(u);
    return std::binary_search(nb.begin(), nb.end(), v);
}

std::vector<Edge> Graph::edge_list() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (NodeId v = 0; v < n_; ++v) {
        for (const NodeId w : neighbors(v)) {
            if (v < w) out.emplace_back(v, w);
        }
    }
    return out;
}

void Graph::set_node_names(std::vector<std::string> names) {
    if (!names.empty() && static_cast<NodeId>(names.size()) != n_)
        throw PreconditionError("name vector size must equal node count");
    names_ = std::move(names);
}

std::string Graph::name_of(NodeId v) const {
    if (!names_.empty()) return names_[static_cast<std::size_t>(v)];
    return std::to_string(v);
}

std::uint64_t Graph::canonical_hash() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    const auto mix = [&h](std::uint64_t x) {
        for (int i = 0; i < 8; ++i) {
            h ^= (x >> (8 * i)) & 0xffU;
            h *= 0x100000001b3ULL;
        }
    };
    mix(static_cast<std::uint64_t>(n_));
    for (NodeId v = 0; v < n_; ++v) {
        for (const NodeId w : neighbors(v)) {
            if (v < w) {
                mix(static_cast<std::uint64_t>(v));
                mix(static_cast<std::uint64_t>(w));
            }
        }
    }
    return h;
}

std::vector<NodeId> degrees(const Graph& g) {
    std::vector<NodeId> d(static_cast<std::size_t>(g.num_nodes()));
    for (NodeId v = 0; v < g.num_nodes(); ++v) d[static_cast<std::size_t>(v)] = g.degree(v);
    return d;
}

DistanceRow bfs_distances(const Graph& g, NodeId source) {
    if (source < 0 || source >= g.num_nodes())
        throw PreconditionError("bfs source out of range");
    DistanceRow row;
    row.source = source;
    row.dist.assign(static_cast<std::size_t>(g.num_nodes()), DistanceRow::kUnreachable);
    row.dist[static_cast<std::size_t>(source)] = 0;
    std::vector<NodeId> frontier{source};
    std::vector<NodeId> next;
    std::int32_t level = 0;
    while (!frontier.empty()) {
        ++level;
        next.clear();
        for (const NodeId v : frontier) {
            for (const NodeId w : g.neighbors(v)) {
                if (row.dist[static_cast<std::size_t>(w)] == DistanceRow::kUnreachable) {
                    row.dist[static_cast<std::size_t>(w)] = level;
                    next.push_back(w);
                }
            }
        }
        frontier.swap(next);
    }
    return row;
}

double closeness_centrality(const Graph& g, std::span<const NodeId> members) {
    if (members.empty()) throw PreconditionError("closeness of an empty node set");
    const NodeId n = g.num_nodes();
    if (n < 2) throw PreconditionError("closeness needs at least two nodes");
    std::vector<double> per_member(members.size(), 0.0);
    std::vector<std::uint8_t> bad(members.size(), 0);
    parallel_for(static_cast<std::int64_t>(members.size()), [&](std::int64_t idx) {
        const DistanceRow row = bfs_distances(g, members[static_cast<std::size_t>(idx)]);
        double sum = 0.0;
        for (NodeId j = 0; j < n; ++j) {
            if (j == members[static_cast<std::size_t>(idx)]) continue;
            if (row.dist[static_cast<std::size_t>(j)] == DistanceRow::kUnreachable) {
                bad[static_cast<std::size_t>(idx)] = 1;
                return;
            }
            sum += row.dist[static_cast<std::size_t>(j)];
        }
        per_member[static_cast<std::size_t>(idx)] = sum;
    });
    double total = 0.0;
    for (std::size_t i = 0; i < per_member.size(); ++i) {
        if (bad[i]) throw UnreachablePairError("disconnected pair while computing closeness");
        total += per_member[i];
    }
    const double mean = total / (static_cast<double>(members.size()) * (n - 1));
    return 1.0 / mean;
}

std::vector<NodeId> core_numbers(const Graph& g) {
    const NodeId n = g.num_nodes();
    std::vector<NodeId> deg = degrees(g);
    NodeId max_deg = 0;
    for (const NodeId d : deg) max_deg = std::max(max_deg, d);

    // Bucket sort nodes by degree, then peel in increasing order.
    std::vector<NodeId> bin(static_cast<std::size_t>(max_deg) + 2, 0);
    for (const NodeId d : deg) ++bin[static_cast<std::size_t>(d)];
    NodeId start = 0;
    for (NodeId d = 0; d <= max_deg; ++d) {
        const NodeId count = bin[static_cast<std::size_t>(d)];
        bin[static_cast<std::size_t>(d)] = start;
        start += count;
    }
    std::vector<NodeId> order(static_cast<std::size_t>(n));
    std::vector<NodeId> pos(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) {
        pos[static_cast<std::size_t>(v)] = bin[static_cast<std::size_t>(deg[static_cast<std::size_t>(v)])]++;
        order[static_cast<std::size_t>(pos[static_cast<std::size_t>(v)])] = v;
    }
    for (NodeId d = max_deg; d >= 1; --d) bin[static_cast<std::size_t>(d)] = bin[static_cast<std::size_t>(d - 1)];
    bin[0] = 0;

    std::vector<NodeId> core(deg);
    for (NodeId i = 0; i < n; ++i) {
        const NodeId v = order[static_cast<std::size_t>(i)];
        core[static_cast<std::size_t>(v)] = deg[static_cast<std::size_t>(v)];
        for (const NodeId w : g.neighbors(v)) {
            if (deg[static_cast<std::size_t>(w)] > deg[static_cast<std::size_t>(v)]) {
                const NodeId dw = deg[static_cast<std::size_t>(w)];
                const NodeId pw = pos[static_cast<std::size_t>(w)];
                const NodeId pfirst = bin[static_cast<std::size_t>(dw)];
                const NodeId vfirst = order[static_cast<std::size_t>(pfirst)];
                if (w != vfirst) {
                    std::swap(order[static_cast<std::size_t>(pw)], order[static_cast<std::size_t>(pfirst)]);
                    pos[static_cast<std::size_t>(w)] = pfirst;
                    pos[static_cast<std::size_t>(vfirst)] = pw;
                }
                ++bin[static_cast<std::size_t>(dw)];
                --deg[static_cast<std::size_t>(w)];
            }
        }
    }
    return core;
}

std::vector<NodeId> k_core(const Graph& g, NodeId k) {
    if (k < 0) throw PreconditionError("k must be non-negative");
    const std::vector<NodeId> core = core_numbers(g);
    std::vector<NodeId> out;
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        if (core[static_cast<std::size_t>(v)] >= k) out.push_back(v);
    }
    return out;
}

double capacity(const Graph& g) {
    const NodeId n = g.num_nodes();
    if (n < 2) return 0.0;
    std::vector<double> per_source(static_cast<std::size_t>(n), 0.0);
    parallel_for(n, [&](std::int64_t src) {
        const DistanceRow row = bfs_distances(g, static_cast<NodeId>(src));
        double sum = 0.0;
        for (NodeId j = static_cast<NodeId>(src) + 1; j < n; ++j) {
            const std::int32_t d = row.dist[static_cast<std::size_t>(j)];
            if (d > 0) sum += 1.0 / d;
        }
        per_source[static_cast<std::size_t>(src)] = sum;
    });
    double total = 0.0;
    for (const double s : per_source) total += s;
    return total;
}

namespace {

// BFS with shortest-path counting from `source`, skipping the edge
// skip_a-skip_b in both directions.
void count_paths(const Graph& g, NodeId source, NodeId skip_a, NodeId skip_b,
                 std::vector<std::int32_t>& dist, std::vector<double>& sigma) {
    const NodeId n = g.num_nodes();
    dist.assign(static_cast<std::size_t>(n), DistanceRow::kUnreachable);
    sigma.assign(static_cast<std::size_t>(n), 0.0);
    dist[static_cast<std::size_t>(source)] = 0;
    sigma[static_cast<std::size_t>(source)] = 1.0;
    std::vector<NodeId> frontier{source};
    std::vector<NodeId> next;
    std::int32_t level = 0;
    while (!frontier.empty()) {
        ++level;
        next.clear();
        for (const NodeId v : frontier) {
            for (const NodeId w : g.neighbors(v)) {
                if ((v == skip_a && w == skip_b) || (v == skip_b && w == skip_a)) continue;
                auto& dw = dist[static_cast<std::size_t>(w)];
                if (dw == DistanceRow::kUnreachable) {
                    dw = level;
                    next.push_back(w);
                }
                if (dw == level) sigma[static_cast<std::size_t>(w)] += sigma[static_cast<std::size_t>(v)];
            }
        }
        frontier.swap(next);
    }
}

}  // namespace

PathCounts path_counts_excluding(const Graph& g, NodeId j, NodeId k) {
    if (!g.has_edge(j, k)) throw NotAnEdgeError("path_counts_excluding requires an existing edge");
    const NodeId n = g.num_nodes();
    PathCounts out;
    out.through.assign(static_cast<std::size_t>(n), 0.0);

    std::vector<std::int32_t> dist_j, dist_k;
    std::vector<double> sigma_j, sigma_k;
    count_paths(g, j, j, k, dist_j, sigma_j);
    if (dist_j[static_cast<std::size_t>(k)] == DistanceRow::kUnreachable) {
        out.sigma = 0.0;
        return out;
    }
    count_paths(g, k, j, k, dist_k, sigma_k);

    const std::int32_t d = dist_j[static_cast<std::size_t>(k)];
    out.sigma = sigma_j[static_cast<std::size_t>(k)];
    for (NodeId i = 0; i < n; ++i) {
        if (i == j || i == k) continue;
        if (dist_j[static_cast<std::size_t>(i)] == DistanceRow::kUnreachable ||
            dist_k[static_cast<std::size_t>(i)] == DistanceRow::kUnreachable)
            continue;
        if (dist_j[static_cast<std::size_t>(i)] + dist_k[static_cast<std::size_t>(i)] == d)
            out.through[static_cast<std::size_t>(i)] =
                sigma_j[static_cast<std::size_t>(i)] * sigma_k[static_cast<std::size_t>(i)];
    }
    return out;
}

}  // namespace cpkit
