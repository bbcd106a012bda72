#include "cpkit/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cpkit/errors.hpp"
#include "cpkit/nulls.hpp"
#include "cpkit/parallel.hpp"

namespace cpkit {

PairCounts pair_counts(const Graph& g, const CoreAssignment& c) {
    if (c.size() != g.num_nodes()) throw PreconditionError("label vector size mismatch");
    PairCounts pc;
    pc.n = g.num_nodes();
    pc.m = g.num_edges();
    pc.core = c.core_size();
    for (NodeId v = 0; v < pc.n; ++v) {
        for (const NodeId w : g.neighbors(v)) {
            if (w <= v) continue;
            const int both = c.labels[static_cast<std::size_t>(v)] + c.labels[static_cast<std::size_t>(w)];
            if (both == 2)
                ++pc.cc;
            else if (both == 1)
                ++pc.cp;
        }
    }
    return pc;
}

double borgatti_rho_from_counts(const PairCounts& pc) {
    const std::int64_t pairs = pc.all_pairs();
    const std::int64_t s = pc.cc_pairs() + pc.cp_pairs();  // ones in the ideal pattern
    if (pc.m <= 0 || pc.m >= pairs || s <= 0 || s >= pairs)
        return std::numeric_limits<double>::quiet_NaN();
    const std::int64_t mc = pc.cc + pc.cp;  // sum of A*Delta over pairs
    const double num = static_cast<double>(pairs) * mc - static_cast<double>(pc.m) * s;
    const double var_a = static_cast<double>(pc.m) * (pairs - pc.m);
    const double var_d = static_cast<double>(s) * (pairs - s);
    return num / std::sqrt(var_a * var_d);
}

double borgatti_rho(const Graph& g, const CoreAssignment& c) {
    const double rho = borgatti_rho_from_counts(pair_counts(g, c));
    if (std::isnan(rho))
        throw DegenerateVarianceError("Pearson correlation undefined: constant adjacency or pattern");
    return rho;
}

std::int64_t brusco_z_from_counts(const PairCounts& pc) {
    return pc.cc + (pc.pp_pairs() - pc.pp());
}

std::int64_t brusco_z(const Graph& g, const CoreAssignment& c) {
    return brusco_z_from_counts(pair_counts(g, c));
}

std::int64_t brusco_z_prime_from_counts(const PairCounts& pc) {
    return (pc.cc_pairs() - pc.cc) + pc.pp();
}

double cucuringu_objective_from_counts(const PairCounts& pc, const CucuringuConfig& cfg) {
    if (pc.core < 2 || pc.core > pc.n - 2) return std::numeric_limits<double>::quiet_NaN();
    const double dens_cc = static_cast<double>(pc.cc) / static_cast<double>(pc.cc_pairs());
    const double dens_cp = static_cast<double>(pc.cp) / static_cast<double>(pc.cp_pairs());
    const double dens_pp = static_cast<double>(pc.pp()) / static_cast<double>(pc.pp_pairs());
    const double imbalance = std::abs(static_cast<double>(pc.core) / pc.n - cfg.beta);
    return dens_cc + dens_cp - dens_pp - cfg.gamma * imbalance;
}

double cucuringu_objective(const Graph& g, const CoreAssignment& c, const CucuringuConfig& cfg) {
    const double v = cucuringu_objective_from_counts(pair_counts(g, c), cfg);
    if (std::isnan(v)) throw DegenerateSplitError("objective requires 2 <= K <= n-2");
    return v;
}

namespace {

// k-core with maximal set closeness; ties toward larger k (smaller core).
struct BestCore {
    std::vector<NodeId> members;
    NodeId k = 0;
    double closeness = 0.0;
};

BestCore max_closeness_core(const Graph& g) {
    const std::vector<NodeId> core = core_numbers(g);
    NodeId max_core = 0;
    for (const NodeId c : core) max_core = std::max(max_core, c);
    BestCore best;
    bool found = false;
    for (NodeId k = 1; k <= max_core; ++k) {
        std::vector<NodeId> members;
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
            if (core[static_cast<std::size_t>(v)] >= k) members.push_back(v);
        }
        if (members.empty()) continue;
        const double cc = closeness_centrality(g, members);
        if (!found || cc >= best.closeness) {
            best = {std::move(members), k, cc};
            found = true;
        }
    }
    if (!found) throw PreconditionError("graph has no non-empty k-core (no edges)");
    return best;
}

double core_closeness_ratio(const Graph& g) {
    std::vector<NodeId> all(static_cast<std::size_t>(g.num_nodes()));
    std::iota(all.begin(), all.end(), 0);
    const double whole = closeness_centrality(g, all);
    const BestCore best = max_closeness_core(g);
    return closeness_centrality(g, best.members) / whole;
}

bool is_connected(const Graph& g) {
    if (g.num_nodes() == 0) return true;
    const DistanceRow row = bfs_distances(g, 0);
    for (const std::int32_t d : row.dist) {
        if (d == DistanceRow::kUnreachable) return false;
    }
    return true;
}

}  // namespace

HolmeResult holme_ccp(const Graph& g, const HolmeOptions& opts, Rng rng) {
    if (opts.ensemble_size < 1) throw PreconditionError("ensemble size must be >= 1");
    HolmeResult res;
    {
        std::vector<NodeId> all(static_cast<std::size_t>(g.num_nodes()));
        std::iota(all.begin(), all.end(), 0);
        closeness_centrality(g, all);  // rejects disconnected input up front
    }
    const BestCore best = max_closeness_core(g);
    res.core_k = best.k;
    res.observed_ratio = core_closeness_ratio(g);

    const std::int64_t swaps = opts.swap_count > 0 ? opts.swap_count : 10 * g.num_edges();
    res.replicate_ratios.assign(static_cast<std::size_t>(opts.ensemble_size), 0.0);
    std::vector<std::uint8_t> failed(static_cast<std::size_t>(opts.ensemble_size), 0);
    parallel_for(opts.ensemble_size, [&](std::int64_t b) {
        Rng child = rng.child("holme-replicate", static_cast<std::uint64_t>(b));
        for (int attempt = 0; attempt < opts.redraw_cap; ++attempt) {
            const Graph replicate = rewire_preserve_degrees(g, swaps, child);
            if (!is_connected(replicate)) continue;
            res.replicate_ratios[static_cast<std::size_t>(b)] = core_closeness_ratio(replicate);
            return;
        }
        failed[static_cast<std::size_t>(b)] = 1;
    });
    for (const std::uint8_t f : failed) {
        if (f) throw DegenerateEnsembleError("could not draw a connected degree-preserving replicate");
    }
    double mean = 0.0;
    for (const double r : res.replicate_ratios) mean += r;
    mean /= static_cast<double>(opts.ensemble_size);
    res.c_cp = res.observed_ratio - mean;
    return res;
}

DaSilvaResult dasilva_core_coefficient(const Graph& g) {
    const NodeId n = g.num_nodes();
    if (n < 2) throw PreconditionError("core coefficient needs n >= 2");
    // Single-node closeness for every node, computed once on the input.
    std::vector<double> score(static_cast<std::size_t>(n), 0.0);
    std::vector<std::uint8_t> bad(static_cast<std::size_t>(n), 0);
    parallel_for(n, [&](std::int64_t v) {
        const DistanceRow row = bfs_distances(g, static_cast<NodeId>(v));
        double sum = 0.0;
        for (NodeId j = 0; j < n; ++j) {
            if (j == static_cast<NodeId>(v)) continue;
            if (row.dist[static_cast<std::size_t>(j)] == DistanceRow::kUnreachable) {
                bad[static_cast<std::size_t>(v)] = 1;
                return;
            }
            sum += row.dist[static_cast<std::size_t>(j)];
        }
        score[static_cast<std::size_t>(v)] = static_cast<double>(n - 1) / sum;
    });
    for (const std::uint8_t b : bad) {
        if (b) throw UnreachablePairError("core coefficient requires a connected graph");
    }

    DaSilvaResult res;
    res.removal_order.resize(static_cast<std::size_t>(n));
    std::iota(res.removal_order.begin(), res.removal_order.end(), 0);
    std::stable_sort(res.removal_order.begin(), res.removal_order.end(),
                     [&](NodeId a, NodeId b) { return score[static_cast<std::size_t>(a)] > score[static_cast<std::size_t>(b)]; });

    // Capacity after each removal, on the shrinking induced subgraph.
    std::vector<std::uint8_t> alive(static_cast<std::size_t>(n), 1);
    std::vector<NodeId> keep(static_cast<std::size_t>(n));
    res.capacities.reserve(static_cast<std::size_t>(n) + 1);
    for (NodeId removed = 0; removed <= n; ++removed) {
        if (removed > 0) alive[static_cast<std::size_t>(res.removal_order[static_cast<std::size_t>(removed - 1)])] = 0;
        // Re-index the surviving nodes and rebuild the subgraph.
        NodeId live = 0;
        for (NodeId v = 0; v < n; ++v) {
            if (alive[static_cast<std::size_t>(v)]) keep[static_cast<std::size_t>(v)] = live++;
        }
        std::vector<Edge> edges;
        for (NodeId v = 0; v < n; ++v) {
            if (!alive[static_cast<std::size_t>(v)]) continue;
            for (const NodeId w : g.neighbors(v)) {
                if (w > v && alive[static_cast<std::size_t>(w)])
                    edges.emplace_back(keep[static_cast<std::size_t>(v)], keep[static_cast<std::size_t>(w)]);
            }
        }
        res.capacities.push_back(capacity(Graph::from_edges(live, edges)));
    }

    double total = 0.0;
    for (const double c : res.capacities) total += c;
    const double target = 0.9 * total;
    double cum = 0.0;
    NodeId crossing = n;
    for (NodeId i = 0; i <= n; ++i) {
        cum += res.capacities[static_cast<std::size_t>(i)];
        if (cum >= target) {
            crossing = i;
            break;
        }
    }
    res.crossing = crossing;
    res.cc = static_cast<double>(crossing) / static_cast<double>(n);
    return res;
}

double persistence_probability(const Graph& g, std::span<const NodeId> members) {
    if (members.empty()) throw PreconditionError("persistence of an empty set");
    std::vector<std::uint8_t> in(static_cast<std::size_t>(g.num_nodes()), 0);
    double denom = 0.0;
    for (const NodeId v : members) {
        in[static_cast<std::size_t>(v)] = 1;
        denom += g.degree(v);
    }
    if (denom == 0.0) return 0.0;  // all members isolated
    double internal = 0.0;         // ordered pairs
    for (const NodeId v : members) {
        for (const NodeId w : g.neighbors(v)) {
            if (in[static_cast<std::size_t>(w)]) internal += 1.0;
        }
    }
    return internal / denom;
}

CPProfile cp_profile(const Graph& g) {
    const NodeId n = g.num_nodes();
    if (g.num_edges() == 0) throw EmptyGraphError("profile needs at least one edge");

    CPProfile prof;
    prof.order.reserve(static_cast<std::size_t>(n));
    prof.alphas.reserve(static_cast<std::size_t>(n));

    std::vector<std::uint8_t> in(static_cast<std::size_t>(n), 0);
    std::vector<NodeId> into(static_cast<std::size_t>(n), 0);  // neighbors inside S

    // Weakest connected node first: minimum degree, lowest index on ties.
    NodeId first = 0;
    for (NodeId v = 1; v < n; ++v) {
        if (g.degree(v) < g.degree(first)) first = v;
    }
    double num = 0.0;    // ordered internal pairs
    double denom = 0.0;  // degree mass of S
    const auto insert = [&](NodeId v) {
        in[static_cast<std::size_t>(v)] = 1;
        num += 2.0 * into[static_cast<std::size_t>(v)];
        denom += g.degree(v);
        for (const NodeId w : g.neighbors(v)) ++into[static_cast<std::size_t>(w)];
        prof.order.push_back(v);
        prof.alphas.push_back(denom > 0.0 ? num / denom : 0.0);
    };
    insert(first);

    for (NodeId step = 1; step < n; ++step) {
        NodeId best = -1;
        double best_alpha = std::numeric_limits<double>::infinity();
        for (NodeId v = 0; v < n; ++v) {
            if (in[static_cast<std::size_t>(v)]) continue;
            const double cand_num = num + 2.0 * into[static_cast<std::size_t>(v)];
            const double cand_den = denom + g.degree(v);
            const double alpha = cand_den > 0.0 ? cand_num / cand_den : 0.0;
            if (alpha < best_alpha) {
                best_alpha = alpha;
                best = v;
            }
        }
        insert(best);
    }
    prof.centralization = cp_centralization(prof);
    return prof;
}

double cp_centralization(const CPProfile& profile) {
    const std::size_t n = profile.alphas.size();
    if (n < 2) throw PreconditionError("centralization needs n >= 2");
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < n; ++k) sum += profile.alphas[k];
    return 1.0 - 2.0 / (static_cast<double>(n) - 1.0) * sum;
}

std::vector<NodeId> CPProfile::periphery_at(double alpha) const {
    std::size_t k = 0;
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (alphas[i] <= alpha) k = i + 1;
    }
    return {order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k)};
}

std::vector<double> path_core_scores(const Graph& g) {
    const NodeId n = g.num_nodes();
    const std::vector<Edge> edges = g.edge_list();
    const std::int64_t m = static_cast<std::int64_t>(edges.size());
    std::vector<double> scores(static_cast<std::size_t>(n), 0.0);
    if (m == 0) return scores;

    // Fixed-size edge chunks with per-chunk partial sums keep the reduction
    // order independent of the thread count.
    constexpr std::int64_t kChunk = 64;
    const std::int64_t chunks = (m + kChunk - 1) / kChunk;
    std::vector<std::vector<double>> partial(static_cast<std::size_t>(chunks));
    parallel_for(chunks, [&](std::int64_t ci) {
        auto& acc = partial[static_cast<std::size_t>(ci)];
        acc.assign(static_cast<std::size_t>(n), 0.0);
        const std::int64_t lo = ci * kChunk;
        const std::int64_t hi = std::min(m, lo + kChunk);
        for (std::int64_t e = lo; e < hi; ++e) {
            const auto [j, k] = edges[static_cast<std::size_t>(e)];
            const PathCounts counts = path_counts_excluding(g, j, k);
            if (counts.sigma <= 0.0) continue;
            for (NodeId i = 0; i < n; ++i) {
                if (counts.through[static_cast<std::size_t>(i)] > 0.0)
                    acc[static_cast<std::size_t>(i)] += counts.through[static_cast<std::size_t>(i)] / counts.sigma;
            }
        }
    });
    for (const auto& acc : partial) {
        if (acc.empty()) continue;
        for (NodeId i = 0; i < n; ++i) scores[static_cast<std::size_t>(i)] += acc[static_cast<std::size_t>(i)];
    }
    return scores;
}

}  // namespace cpkit
