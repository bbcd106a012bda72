#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cpkit/core_assignment.hpp"
#include "cpkit/graph.hpp"
#include "cpkit/rng.hpp"

namespace cpkit {

// Unordered-pair tallies of a labeled graph; every block-style metric is a
// function of these.
struct PairCounts {
    NodeId n = 0;
    std::int64_t m = 0;
    NodeId core = 0;          // K
    std::int64_t cc = 0;      // core-core edges present
    std::int64_t cp = 0;      // core-periphery edges present
    std::int64_t pp() const { return m - cc - cp; }
    std::int64_t cc_pairs() const { return static_cast<std::int64_t>(core) * (core - 1) / 2; }
    std::int64_t cp_pairs() const { return static_cast<std::int64_t>(core) * (n - core); }
    std::int64_t pp_pairs() const {
        const std::int64_t p = n - core;
        return p * (p - 1) / 2;
    }
    std::int64_t all_pairs() const { return static_cast<std::int64_t>(n) * (n - 1) / 2; }
};

PairCounts pair_counts(const Graph& g, const CoreAssignment& c);

// Pearson correlation between the adjacency matrix and the ideal
// core-periphery pattern, over the C(n,2) unordered off-diagonal pairs.
// Throws DegenerateVarianceError when either matrix is constant.
double borgatti_rho(const Graph& g, const CoreAssignment& c);
double borgatti_rho_from_counts(const PairCounts& pc);  // NaN when degenerate

// Count of present core-core edges plus absent periphery-periphery pairs
// (maximization form).
std::int64_t brusco_z(const Graph& g, const CoreAssignment& c);
std::int64_t brusco_z_from_counts(const PairCounts& pc);

// Lip's closed form of the minimization variant for a fixed core:
// (m + K(K-1)/2) - sum of core degrees.
std::int64_t brusco_z_prime_from_counts(const PairCounts& pc);

struct CucuringuConfig {
    double beta = 0.5;   // target core fraction
    double gamma = 0.0;  // imbalance penalty weight
};

// Density contrast objective with core-size penalty. Requires
// 2 <= K <= n-2 (DegenerateSplitError otherwise).
double cucuringu_objective(const Graph& g, const CoreAssignment& c, const CucuringuConfig& cfg);
double cucuringu_objective_from_counts(const PairCounts& pc, const CucuringuConfig& cfg);  // NaN when out of domain

struct HolmeOptions {
    int ensemble_size = 100;       // B
    std::int64_t swap_count = 0;   // 0 -> 10*m
    int redraw_cap = 64;           // disconnected-replicate redraws per slot
};

struct HolmeResult {
    double c_cp = 0.0;
    double observed_ratio = 0.0;
    NodeId core_k = 0;                    // k of the selected k-core
    std::vector<double> replicate_ratios;
};

// Holme's closeness-normalized k-core metric against a degree-preserving
// ensemble. The core of each graph (observed and every replicate) is its
// k-core with maximal set closeness, ties broken toward larger k.
HolmeResult holme_ccp(const Graph& g, const HolmeOptions& opts, Rng rng);

struct DaSilvaResult {
    double cc = 0.0;
    std::vector<NodeId> removal_order;      // decreasing original closeness
    std::vector<double> capacities;         // C_0 .. C_n
    NodeId crossing = 0;                    // N
};

// Capacity-decay core coefficient. Node closeness is ranked once on the
// input graph; capacities are recorded after each removal.
DaSilvaResult dasilva_core_coefficient(const Graph& g);

// Probability that a stationary random walker inside S stays in S for one
// step: sum_{i,j in S} A_ij / sum_{i in S} d_i (ordered pairs). Sets whose
// members are all isolated score 0 by convention.
double persistence_probability(const Graph& g, std::span<const NodeId> members);

struct CPProfile {
    std::vector<NodeId> order;    // insertion order S_1 .. S_n
    std::vector<double> alphas;   // alpha_{S_1} .. alpha_{S_n}
    double centralization = 0.0;

    // Largest prefix S_k with alpha_{S_k} <= alpha (the alpha-periphery);
    // may be empty when even the first alpha exceeds the threshold.
    std::vector<NodeId> periphery_at(double alpha) const;
};

// Greedy minimal-persistence ordering. Requires at least one edge
// (EmptyGraphError).
CPProfile cp_profile(const Graph& g);

// C = 1 - 2/(n-1) * sum_{k<n} alpha_{S_k}; 1 for the star, at most 1 always.
double cp_centralization(const CPProfile& profile);

// Per-node sums over existing edges (j,k) of the fraction of shortest
// detour paths (edge removed) running through the node; 0/0 counts as 0.
std::vector<double> path_core_scores(const Graph& g);

}  // namespace cpkit
