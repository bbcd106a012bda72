#include "cpkit/hypothesis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cpkit/errors.hpp"
#include "cpkit/parallel.hpp"

namespace cpkit {

TestResult permutation_test(const Graph& g, const MetricSpec& metric, const NullSpec& null,
                            const PermutationOptions& opts) {
    if (null.replicates < 1) throw PreconditionError("replicate count must be >= 1");
    Rng rng(null.seed);
    TestResult res;
    res.null = null;
    res.seed = null.seed;
    res.replicates = null.replicates;

    Rng det_rng = rng.child("observed-detector");
    res.observed_labels = metric.detector(g, det_rng);
    res.statistic = metric.metric(g, res.observed_labels);

    std::vector<double> stats(static_cast<std::size_t>(null.replicates), 0.0);
    parallel_for(null.replicates, [&](std::int64_t b) {
        Rng draw = rng.child("null-replicate", static_cast<std::uint64_t>(b));
        const Graph replicate = draw_null_replicate(g, null, draw);
        double value;
        if (opts.frozen_labels) {
            value = metric.metric(replicate, res.observed_labels);
        } else {
            Rng det = rng.child("replicate-detector", static_cast<std::uint64_t>(b));
            const CoreAssignment c = metric.detector(replicate, det);
            value = metric.metric(replicate, c);
        }
        stats[static_cast<std::size_t>(b)] = value;
    });

    std::int64_t at_least = 0;
    for (const double s : stats) {
        if (s >= res.statistic) ++at_least;
    }
    res.p_value = static_cast<double>(1 + at_least) / static_cast<double>(null.replicates + 1);
    if (opts.keep_replicates) res.replicate_statistics = std::move(stats);
    return res;
}

ZScoreResult rossa_zscore(const Graph& g, int replicates, std::int64_t n_swaps, Rng rng) {
    if (g.num_edges() < 2) throw PreconditionError("z-score needs at least 2 edges");
    if (replicates < 2) throw PreconditionError("z-score needs at least 2 replicates");
    const std::int64_t swaps = n_swaps > 0 ? n_swaps : 10 * g.num_edges();

    ZScoreResult res;
    res.seed = rng.seed();
    res.observed = cp_profile(g).centralization;
    res.replicate_values.assign(static_cast<std::size_t>(replicates), 0.0);
    parallel_for(replicates, [&](std::int64_t b) {
        Rng child = rng.child("rossa-replicate", static_cast<std::uint64_t>(b));
        const Graph replicate = rewire_preserve_degrees(g, swaps, child);
        res.replicate_values[static_cast<std::size_t>(b)] = cp_profile(replicate).centralization;
    });

    double mean = 0.0;
    for (const double v : res.replicate_values) mean += v;
    mean /= static_cast<double>(replicates);
    double ss = 0.0;
    for (const double v : res.replicate_values) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / static_cast<double>(replicates - 1));
    res.null_mean = mean;
    res.null_sd = sd;
    if (sd <= 1e-15 * std::max(1.0, std::abs(mean))) {
        res.zero_variance = true;
        res.z = std::numeric_limits<double>::infinity();
        res.note = "degenerate ensemble: every degree-preserving replicate has the same centralization";
        return res;
    }
    res.z = (res.observed - mean) / sd;
    return res;
}

namespace {

double log_choose(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(static_cast<double>(n) + 1.0) - std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}

}  // namespace

SurpriseResult surprise_pvalue(const Graph& g, const CoreAssignment& c) {
    if (c.size() != g.num_nodes()) throw PreconditionError("label vector size mismatch");
    const PairCounts pc = pair_counts(g, c);
    SurpriseResult res;
    res.population = pc.all_pairs();
    res.successes = pc.cc_pairs() + pc.cp_pairs();
    res.draws = pc.m;
    res.observed = pc.cc + pc.cp;

    const std::int64_t lo = std::max<std::int64_t>(res.observed, std::max<std::int64_t>(0, res.draws - (res.population - res.successes)));
    const std::int64_t hi = std::min(res.draws, res.successes);
    if (res.observed <= std::max<std::int64_t>(0, res.draws - (res.population - res.successes))) {
        res.p_value = 1.0;  // the whole support is in the tail
        return res;
    }
    if (lo > hi) {
        res.p_value = 0.0;  // cannot happen for consistent counts
        return res;
    }
    const double log_denom = log_choose(res.population, res.draws);
    double max_term = -std::numeric_limits<double>::infinity();
    std::vector<double> terms;
    terms.reserve(static_cast<std::size_t>(hi - lo + 1));
    for (std::int64_t x = lo; x <= hi; ++x) {
        const double t = log_choose(res.successes, x) + log_choose(res.population - res.successes, res.draws - x) - log_denom;
        terms.push_back(t);
        max_term = std::max(max_term, t);
    }
    double sum = 0.0;
    for (const double t : terms) sum += std::exp(t - max_term);
    res.p_value = std::min(1.0, std::exp(max_term + std::log(sum)));
    return res;
}

}  // namespace cpkit
