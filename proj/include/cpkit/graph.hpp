#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cpkit {

using NodeId = std::int32_t;
using Edge = std::pair<NodeId, NodeId>;

struct BuildStats {
    std::int64_t self_loops_dropped = 0;
    std::int64_t duplicates_dropped = 0;
};

// Immutable simple undirected graph in CSR form. Neighbor lists are strictly
// increasing; construction symmetrizes, deduplicates and drops self-loops.
// Safe to share across threads after construction.
class Graph {
public:
    Graph() = default;

    static Graph from_edges(NodeId n, std::span<const Edge> edges, BuildStats* stats = nullptr);
    static Graph from_edges(NodeId n, std::initializer_list<Edge> edges) {
        return from_edges(n, std::span<const Edge>(edges.begin(), edges.size()));
    }

    NodeId num_nodes() const { return n_; }
    std::int64_t num_edges() const { return m_; }

    std::span<const NodeId> neighbors(NodeId v) const {
        return {adj_.data() + offsets_[v], adj_.data() + offsets_[v + 1]};
    }
    NodeId degree(NodeId v) const { return static_cast<NodeId>(offsets_[v + 1] - offsets_[v]); }
    bool has_edge(NodeId u, NodeId v) const;

    // Edges as (i, j) with i < j, lexicographically sorted.
    std::vector<Edge> edge_list() const;

    // Original input labels; empty when nodes were created unnamed.
    const std::vector<std::string>& node_names() const { return names_; }
    void set_node_names(std::vector<std::string> names);
    std::string name_of(NodeId v) const;

    // Order-independent structural hash (FNV-1a over n and the sorted edge
    // list); used by the CLI manifest for round-trip checks.
    std::uint64_t canonical_hash() const;

private:
    NodeId n_ = 0;
    std::int64_t m_ = 0;
    std::vector<std::int64_t> offsets_{0};
    std::vector<NodeId> adj_;
    std::vector<std::string> names_;
};

struct DistanceRow {
    static constexpr std::int32_t kUnreachable = -1;
    NodeId source = 0;
    std::vector<std::int32_t> dist;
};

// Shortest-path counts for one pair (j, k) with the edge j-k removed before
// counting. `through[i]` is the number of those paths with i as an interior
// node; zero for i in {j, k} and when the removal disconnects the pair.
struct PathCounts {
    double sigma = 0.0;
    std::vector<double> through;
};

std::vector<NodeId> degrees(const Graph& g);

DistanceRow bfs_distances(const Graph& g, NodeId source);

// Closeness centrality of a node set U against the whole graph:
//   ( (1/(|U|(n-1))) * sum_{i in U} sum_{j != i} d_ij )^{-1}.
// Throws UnreachablePairError if any required pair is disconnected.
double closeness_centrality(const Graph& g, std::span<const NodeId> members);

// Core number of every node (largest k such that the node survives in the
// k-core), by bucket peeling in O(m + n).
std::vector<NodeId> core_numbers(const Graph& g);

// Maximal node set in which every member keeps >= k neighbors inside the
// set; possibly empty. Returned sorted ascending.
std::vector<NodeId> k_core(const Graph& g, NodeId k);

// Sum over unordered pairs of 1/d_ij, with disconnected pairs contributing 0.
double capacity(const Graph& g);

// Requires A_jk = 1 (NotAnEdgeError otherwise).
PathCounts path_counts_excluding(const Graph& g, NodeId j, NodeId k);

}  // namespace cpkit
