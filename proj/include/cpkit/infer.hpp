#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cpkit/core_assignment.hpp"
#include "cpkit/generate.hpp"
#include "cpkit/graph.hpp"
#include "cpkit/rng.hpp"

namespace cpkit {

// Complete-data log likelihood of the two-block model at fixed labels:
// log gamma1^n1 (1-gamma1)^(n-n1) prod p_kl^M_kl (1-p_kl)^(m_kl - M_kl).
// Zero-probability events with positive counts raise LogOfZeroError; with
// zero counts the factor contributes nothing.
double loglik_sbm2(const Graph& g, const CoreAssignment& c, const BlockParams& params);

struct EMOptions {
    double tol = 1e-8;
    int max_iter = 500;
    // Exact E-step (enumeration over all labelings) is used when
    // n <= exact_threshold; the trace is then the exact observed-data log
    // likelihood. Above it, a mean-field E-step is used and the trace is
    // the variational lower bound.
    NodeId exact_threshold = 14;
    int mean_field_sweeps = 200;
};

struct EMResult {
    BlockParams params;
    std::vector<double> responsibilities;  // P(c_i = core)
    std::vector<double> loglik_trace;
    int iterations = 0;
    bool converged = false;
    bool exact = false;  // trace semantics flag
    CoreAssignment labels() const;
};

// Two-block EM. Init probabilities must lie in (0,1) with p11 != p22
// (SymmetricInitError). Output is relabeled so the denser-diagonal block is
// the core.
EMResult newman_em(const Graph& g, const BlockParams& init, const EMOptions& opts = {});

enum class GibbsPrior { Flat, Ordered };

struct GibbsOptions {
    GibbsPrior prior = GibbsPrior::Flat;
    int n_samples = 2000;
    int burn_in = 500;
    int thin = 1;
    // When set, labels stay fixed at this assignment and only the rates are
    // sampled (conjugate draws are then i.i.d.).
    std::optional<CoreAssignment> clamp_labels;
    std::optional<CoreAssignment> init_labels;
    std::int64_t ordered_rejection_cap = 1000000;
};

struct BlockSample {
    double gamma1 = 0.0;
    double p11 = 0.0;
    double p12 = 0.0;
    double p22 = 0.0;
};

struct GibbsChain {
    GibbsPrior prior = GibbsPrior::Flat;
    std::uint64_t seed = 0;
    int burn_in = 0;
    std::vector<BlockSample> samples;
    std::vector<std::vector<std::uint8_t>> label_samples;
    double ordered_acceptance_rate = 1.0;

    std::vector<double> core_frequency() const;  // per node
};

// Snijders-style block Gibbs sampler: conjugate Beta draws for the rates
// (rejection onto p22 <= p12 <= p11 under the ordered prior) alternating
// with sequential label sweeps from the full conditionals.
GibbsChain gibbs_sampler(const Graph& g, const GibbsOptions& opts, Rng rng);

struct LayeredGibbsOptions {
    int layers = 2;  // K
    int n_samples = 2000;
    int burn_in = 500;
    int thin = 1;
    std::optional<std::vector<int>> init_labels;
    std::int64_t ordered_rejection_cap = 1000000;
};

struct LayeredSample {
    std::vector<double> gamma;  // layer membership probabilities
    std::vector<double> rates;  // p_1 >= ... >= p_K
};

struct LayeredGibbsChain {
    int layers = 0;
    std::uint64_t seed = 0;
    int burn_in = 0;
    std::vector<LayeredSample> samples;
    std::vector<std::vector<std::uint8_t>> label_samples;  // values 0..K-1
    double ordered_acceptance_rate = 1.0;
};

// Layered variant: K nested density levels with p(l,m) = p_max(l,m) and the
// ordering prior p_1 >= ... >= p_K.
LayeredGibbsChain gibbs_layered(const Graph& g, const LayeredGibbsOptions& opts, Rng rng);

struct OddsResult {
    double lambda = 1.0;
    double log_lambda = 0.0;
    double logml_block = 0.0;
    double logml_layered = 0.0;
    double block_modal_frequency = 0.0;
    double layered_modal_frequency = 0.0;
    std::string method;
};

// Posterior odds of the two-block structure against the layered structure,
// Lambda > 1 favoring the block model. Marginal likelihoods are estimated
// from each chain via the posterior identity at its modal labeling
// (closed-form conjugate integrals; ordering constraints bridged by Monte
// Carlo mass under the unconstrained posterior). Throws
// InsufficientSamplesError when a chain's modal labeling is visited too
// rarely to anchor the estimate.
OddsResult posterior_odds(const Graph& g, const GibbsChain& block_chain,
                          const LayeredGibbsChain& layered_chain, Rng rng);

struct DCSBMLik {
    CoreAssignment labels;
    std::vector<double> theta;
    double pc = 0.0;  // rate factor for core-incident pairs
    double pp = 0.0;  // rate factor for periphery-periphery pairs
};

// Poisson-style degree-corrected likelihood:
// sum over pairs of A_ij log(theta_i theta_j p) - theta_i theta_j p,
// with p = pc when either endpoint is core, else pp. Returns -infinity when
// an observed edge has rate zero; 0 log 0 counts as 0.
double dcsbm_loglik(const Graph& g, const DCSBMLik& model);

struct DCSBMFit {
    DCSBMLik model;
    double loglik = 0.0;
    int restarts_used = 0;
};

// Greedy maximum-likelihood fit: theta_i proportional to degree, rates
// re-solved in closed form, labels improved by single flips; multi-start.
DCSBMFit dcsbm_greedy_fit(const Graph& g, Rng rng, int restarts = 5);

}  // namespace cpkit
