#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cpkit/core_assignment.hpp"
#include "cpkit/graph.hpp"
#include "cpkit/metrics.hpp"
#include "cpkit/nulls.hpp"
#include "cpkit/rng.hpp"

namespace cpkit {

// Named statistic plus the detector that produces the labels it is scored
// on. The detector is re-run on every null replicate (so the test accounts
// for the maximization step); freeze the observed labels instead by setting
// `frozen_labels` in the test options.
struct MetricSpec {
    std::string name;
    std::function<CoreAssignment(const Graph&, Rng&)> detector;
    std::function<double(const Graph&, const CoreAssignment&)> metric;
};

struct TestResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int replicates = 0;  // B
    NullSpec null;
    std::uint64_t seed = 0;
    std::vector<double> replicate_statistics;
    CoreAssignment observed_labels;
};

struct PermutationOptions {
    bool frozen_labels = false;
    bool keep_replicates = true;
};

// One-sided upper-tail Monte Carlo test with the add-one correction:
// p = (1 + #{replicate >= observed}) / (B + 1).
TestResult permutation_test(const Graph& g, const MetricSpec& metric, const NullSpec& null,
                            const PermutationOptions& opts = {});

struct ZScoreResult {
    double z = 0.0;
    double observed = 0.0;
    double null_mean = 0.0;
    double null_sd = 0.0;  // sample standard deviation (B-1 denominator)
    bool zero_variance = false;
    std::string note;
    std::vector<double> replicate_values;
    std::uint64_t seed = 0;
};

// Centralization z-score against degree-preserving rewirings. A degenerate
// ensemble (all replicates identical, e.g. the star) is reported with the
// zero_variance flag instead of a division failure.
ZScoreResult rossa_zscore(const Graph& g, int replicates, std::int64_t n_swaps, Rng rng);

struct SurpriseResult {
    double p_value = 1.0;
    std::int64_t population = 0;  // C(n,2)
    std::int64_t successes = 0;   // core-incident pairs
    std::int64_t draws = 0;       // m
    std::int64_t observed = 0;    // core-incident edges
};

// Exact hypergeometric upper tail P(X >= observed) for the number of edges
// landing on core-incident pairs; computed in log space.
SurpriseResult surprise_pvalue(const Graph& g, const CoreAssignment& c);

}  // namespace cpkit
