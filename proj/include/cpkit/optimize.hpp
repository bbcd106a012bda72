#pragma once

#include <functional>
#include <string>
#include <vector>

#include "cpkit/core_assignment.hpp"
#include "cpkit/graph.hpp"
#include "cpkit/metrics.hpp"
#include "cpkit/rng.hpp"

namespace cpkit {

// Maximization objective over core assignments. Count-based objectives are
// evaluated in O(1) per candidate flip inside the searchers; arbitrary
// scorers fall back to a full re-evaluation. Scorers signal invalid
// assignments (e.g. degenerate variance) with NaN, which searchers treat as
// -infinity.
class Objective {
public:
    using CountFn = std::function<double(const PairCounts&)>;
    using FullFn = std::function<double(const Graph&, const CoreAssignment&)>;

    static Objective from_counts(std::string name, CountFn fn);
    static Objective from_scorer(std::string name, FullFn fn);

    double score(const Graph& g, const CoreAssignment& c) const;
    double score_counts(const Graph& g, const PairCounts& pc, const CoreAssignment& c) const;
    bool count_based() const { return static_cast<bool>(count_fn_); }
    const std::string& name() const { return name_; }

private:
    std::string name_;
    CountFn count_fn_;
    FullFn full_fn_;
};

namespace objectives {

Objective borgatti();
Objective brusco();
// Negated Lip/Brusco minimization form Z' = missing core-core pairs +
// present periphery-periphery edges; maximizing it reproduces lip_solver's
// ranking across different core sizes.
Objective brusco_z_prime_neg();
Objective cucuringu(CucuringuConfig cfg);

}  // namespace objectives

struct SearchResult {
    CoreAssignment assignment;
    double value = 0.0;
    std::vector<double> trace;  // objective after every accepted move
};

// Steepest-ascent single-flip search; ties broken toward the lowest node
// index. Level plateaus are crossed for a bounded number of sideways moves;
// the trace records strict improvements only and is strictly increasing.
SearchResult greedy_switch(const Graph& g, const Objective& obj, const CoreAssignment& init);

// Best of `restarts` greedy runs from Bernoulli(1/2) random initial labels.
SearchResult greedy_multistart(const Graph& g, const Objective& obj, int restarts, Rng rng);

struct AnnealSchedule {
    double t0 = 1.0;             // initial temperature
    double cooling = 0.95;       // multiplicative factor in (0,1)
    int steps_per_temp = 100;
    double t_min = 1e-3;
};

// Returns a schedule that behaves well for flip deltas of order `n`.
AnnealSchedule default_schedule(NodeId n);

// Metropolis single-flip annealing; returns the best assignment ever
// visited. Deterministic given the rng seed.
SearchResult simulated_annealing(const Graph& g, const Objective& obj, const CoreAssignment& init,
                                 const AnnealSchedule& schedule, Rng rng);

// Evaluates the n-1 prefix assignments of `order` (K = 1..n-1) and returns
// the argmax; ties and invalid prefixes resolve toward smaller K.
SearchResult node_order_sweep(const Graph& g, std::span<const NodeId> order, const Objective& obj);

// Degree-prefix minimizer of the Brusco Z' form via its closed-form
// expression; O(n log n) after degrees. Ties toward smaller K.
CoreAssignment lip_solver(const Graph& g);

struct DegreeGapResult {
    CoreAssignment assignment;
    bool constant_degrees = false;  // no gap; everything labeled periphery
    NodeId threshold_degree = 0;    // smallest degree labeled core
};

// Splits the sorted degree sequence at its largest consecutive gap. By
// default the high-degree side is the core; `low_degree_core` flips that.
DegreeGapResult degree_gap_estimator(const Graph& g, bool low_degree_core = false);

}  // namespace cpkit
