#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cpkit/core_assignment.hpp"
#include "cpkit/graph.hpp"
#include "cpkit/rng.hpp"

namespace cpkit {

// Two-block edge probabilities; block 1 is the core side.
struct BlockParams {
    double gamma1 = 0.5;  // prior block-1 probability (inference only)
    double p11 = 0.0;
    double p12 = 0.0;
    double p22 = 0.0;

    bool cp_ordered() const { return p11 >= p12 && p12 >= p22; }
};

struct HybridParams {
    std::vector<int> community;    // group label per node
    std::vector<double> coreness;  // C_i in [0,1]
    double scale = 0.0;            // a
    double baseline = 0.0;         // b; requires a + b <= 1
};

// All generators draw one uniform per unordered pair in lexicographic
// (i < j) order, so models that collapse onto each other (CL -> ER,
// DCSBM -> SBM, hybrid -> ER) produce byte-identical graphs under a matched
// seed. Every generator emits a simple graph and is deterministic given the
// rng seed.

Graph generate_er(NodeId n, double p, Rng rng);

// P_ij = theta_i * theta_j; requires every pairwise product <= 1.
Graph generate_chung_lu(std::span<const double> theta, Rng rng);

struct PlantedGraph {
    Graph graph;
    CoreAssignment planted;
};

// Two-block SBM; the first n1 nodes form block 1 (= planted core). When
// require_cp is set, p11 >= p12 >= p22 is enforced (OrderingViolationError).
PlantedGraph generate_sbm2(NodeId n1, NodeId n2, const BlockParams& params, bool require_cp, Rng rng);

// P_ij = theta_i * Omega[c_i][c_j] * theta_j (Bernoulli). `omega` is a
// symmetric KxK matrix indexed by the labels.
Graph generate_dcsbm(std::span<const double> theta, std::span<const int> labels,
                     const std::vector<std::vector<double>>& omega, Rng rng);

// P_ij = 1 - exp(-2 theta_i theta_j); theta >= 0.
Graph generate_sociability(std::span<const double> theta, Rng rng);

// P_ij = exp(theta_i + theta_j) / (K_ij + exp(theta_i + theta_j)); the
// kernel is an optional n*n row-major matrix (default K_ij = 1), all
// entries > 0.
Graph generate_logistic(std::span<const double> theta, const std::vector<double>* kernel, Rng rng);

// P_ij = a * [c_i == c_j] * (C_i + C_j - C_i C_j) + b.
Graph generate_hybrid(const HybridParams& params, Rng rng);

}  // namespace cpkit
