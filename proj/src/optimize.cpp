#include "cpkit/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "cpkit/errors.hpp"
#include "cpkit/parallel.hpp"

namespace cpkit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double guard(double v) { return std::isnan(v) ? kNegInf : v; }

// Incrementally maintained pair tallies for single-flip search.
class FlipState {
public:
    FlipState(const Graph& g, const CoreAssignment& init) : g_(g), labels_(init.labels) {
        counts_ = pair_counts(g, init);
        core_deg_.assign(static_cast<std::size_t>(g.num_nodes()), 0);
        for (NodeId v = 0; v < g.num_nodes(); ++v) {
            NodeId cd = 0;
            for (const NodeId w : g.neighbors(v)) cd += labels_[static_cast<std::size_t>(w)];
            core_deg_[static_cast<std::size_t>(v)] = cd;
        }
    }

    const PairCounts& counts() const { return counts_; }
    const std::vector<std::uint8_t>& labels() const { return labels_; }

    // Tallies after flipping v, without committing.
    PairCounts preview(NodeId v) const {
        PairCounts pc = counts_;
        const NodeId cd = core_deg_[static_cast<std::size_t>(v)];
        const NodeId pd = g_.degree(v) - cd;
        if (labels_[static_cast<std::size_t>(v)]) {  // core -> periphery
            pc.core -= 1;
            pc.cc -= cd;
            pc.cp += cd - pd;
        } else {  // periphery -> core
            pc.core += 1;
            pc.cc += cd;
            pc.cp += pd - cd;
        }
        return pc;
    }

    void flip(NodeId v) {
        counts_ = preview(v);
        const std::int8_t delta = labels_[static_cast<std::size_t>(v)] ? -1 : 1;
        labels_[static_cast<std::size_t>(v)] ^= 1;
        for (const NodeId w : g_.neighbors(v)) core_deg_[static_cast<std::size_t>(w)] += delta;
    }

    CoreAssignment assignment() const { return CoreAssignment{labels_}; }

private:
    const Graph& g_;
    std::vector<std::uint8_t> labels_;
    PairCounts counts_;
    std::vector<NodeId> core_deg_;
};

}  // namespace

Objective Objective::from_counts(std::string name, CountFn fn) {
    Objective o;
    o.name_ = std::move(name);
    o.count_fn_ = std::move(fn);
    return o;
}

Objective Objective::from_scorer(std::string name, FullFn fn) {
    Objective o;
    o.name_ = std::move(name);
    o.full_fn_ = std::move(fn);
    return o;
}

double Objective::score(const Graph& g, const CoreAssignment& c) const {
    if (count_fn_) return guard(count_fn_(pair_counts(g, c)));
    return guard(full_fn_(g, c));
}

double Objective::score_counts(const Graph& g, const PairCounts& pc, const CoreAssignment& c) const {
    if (count_fn_) return guard(count_fn_(pc));
    return guard(full_fn_(g, c));
}

namespace objectives {

Objective borgatti() {
    return Objective::from_counts("borgatti_rho",
                                  [](const PairCounts& pc) { return borgatti_rho_from_counts(pc); });
}

Objective brusco() {
    return Objective::from_counts("brusco_z", [](const PairCounts& pc) {
        return static_cast<double>(brusco_z_from_counts(pc));
    });
}

Objective brusco_z_prime_neg() {
    return Objective::from_counts("neg_brusco_z_prime", [](const PairCounts& pc) {
        return -static_cast<double>(brusco_z_prime_from_counts(pc));
    });
}

Objective cucuringu(CucuringuConfig cfg) {
    return Objective::from_counts("cucuringu", [cfg](const PairCounts& pc) {
        return cucuringu_objective_from_counts(pc, cfg);
    });
}

}  // namespace objectives

SearchResult greedy_switch(const Graph& g, const Objective& obj, const CoreAssignment& init) {
    const NodeId n = g.num_nodes();
    FlipState state(g, init);
    double current = obj.score_counts(g, state.counts(), state.assignment());
    SearchResult res;
    res.trace.push_back(current);

    // Plateaus (flips that keep the objective exactly level) are walked for a
    // bounded number of steps so the search can cross flat regions such as
    // the empty-core start; only strict improvements enter the trace.
    const int sideways_cap = 2 * n;
    int sideways = 0;
    NodeId last_flip = -1;
    for (;;) {
        NodeId best = -1;           // lowest index attaining the best value
        NodeId best_fresh = -1;     // same, excluding the last flipped node
        double best_val = kNegInf;
        for (NodeId v = 0; v < n; ++v) {
            double val;
            if (obj.count_based()) {
                val = obj.score_counts(g, state.preview(v), state.assignment());
            } else {
                CoreAssignment cand = state.assignment();
                cand.labels[static_cast<std::size_t>(v)] ^= 1;
                val = obj.score(g, cand);
            }
            if (val > best_val) {
                best_val = val;
                best = v;
                best_fresh = v != last_flip ? v : NodeId{-1};
            } else if (val == best_val && best_fresh < 0 && v != last_flip) {
                best_fresh = v;
            }
        }
        if (best >= 0 && best_val > current) {
            state.flip(best);
            current = best_val;
            res.trace.push_back(current);
            sideways = 0;
            last_flip = best;
            continue;
        }
        if (best_fresh >= 0 && best_val == current && current != kNegInf && sideways < sideways_cap) {
            state.flip(best_fresh);
            ++sideways;
            last_flip = best_fresh;
            continue;
        }
        break;
    }
    res.assignment = state.assignment();
    res.value = current;
    return res;
}

SearchResult greedy_multistart(const Graph& g, const Objective& obj, int restarts, Rng rng) {
    if (restarts < 1) throw PreconditionError("restarts must be >= 1");
    const NodeId n = g.num_nodes();
    std::vector<SearchResult> runs(static_cast<std::size_t>(restarts));
    parallel_for(restarts, [&](std::int64_t r) {
        Rng child = rng.child("greedy-restart", static_cast<std::uint64_t>(r));
        CoreAssignment init = CoreAssignment::all_periphery(n);
        for (NodeId v = 0; v < n; ++v) init.labels[static_cast<std::size_t>(v)] = child.bernoulli(0.5);
        runs[static_cast<std::size_t>(r)] = greedy_switch(g, obj, init);
    });
    std::size_t best = 0;
    for (std::size_t r = 1; r < runs.size(); ++r) {
        if (runs[r].value > runs[best].value) best = r;
    }
    return runs[best];
}

AnnealSchedule default_schedule(NodeId n) {
    AnnealSchedule s;
    s.t0 = 2.0 + 0.25 * static_cast<double>(n);
    s.cooling = 0.95;
    s.steps_per_temp = 20 * std::max<NodeId>(n, 4);
    s.t_min = 1e-3;
    return s;
}

SearchResult simulated_annealing(const Graph& g, const Objective& obj, const CoreAssignment& init,
                                 const AnnealSchedule& schedule, Rng rng) {
    if (!(schedule.t0 > 0.0) || !(schedule.cooling > 0.0 && schedule.cooling < 1.0) ||
        schedule.steps_per_temp < 1 || !(schedule.t_min > 0.0))
        throw PreconditionError("invalid annealing schedule");
    const NodeId n = g.num_nodes();
    FlipState state(g, init);
    double current = obj.score_counts(g, state.counts(), state.assignment());
    SearchResult res;
    res.assignment = state.assignment();
    res.value = current;
    res.trace.push_back(current);
    for (double t = schedule.t0; t >= schedule.t_min; t *= schedule.cooling) {
        for (int s = 0; s < schedule.steps_per_temp; ++s) {
            const NodeId v = static_cast<NodeId>(rng.uniform_below(static_cast<std::uint64_t>(n)));
            double cand;
            if (obj.count_based()) {
                cand = obj.score_counts(g, state.preview(v), state.assignment());
            } else {
                CoreAssignment c = state.assignment();
                c.labels[static_cast<std::size_t>(v)] ^= 1;
                cand = obj.score(g, c);
            }
            bool accept;
            if (cand >= current) {
                accept = true;
            } else if (cand == kNegInf) {
                accept = false;
            } else {
                accept = rng.uniform01() < std::exp((cand - current) / t);
            }
            if (accept) {
                state.flip(v);
                current = cand;
                if (current > res.value) {
                    res.value = current;
                    res.assignment = state.assignment();
                    res.trace.push_back(current);
                }
            }
        }
    }
    return res;
}

SearchResult node_order_sweep(const Graph& g, std::span<const NodeId> order, const Objective& obj) {
    const NodeId n = g.num_nodes();
    if (static_cast<NodeId>(order.size()) != n) throw PreconditionError("order must cover all nodes");
    {
        std::vector<std::uint8_t> seen(static_cast<std::size_t>(n), 0);
        for (const NodeId v : order) {
            if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
                throw PreconditionError("order is not a permutation");
            seen[static_cast<std::size_t>(v)] = 1;
        }
    }
    FlipState state(g, CoreAssignment::all_periphery(n));
    SearchResult res;
    res.value = kNegInf;
    NodeId best_k = 0;
    for (NodeId k = 1; k <= n - 1; ++k) {
        state.flip(order[static_cast<std::size_t>(k - 1)]);
        const double val = obj.score_counts(g, state.counts(), state.assignment());
        if (val > res.value) {
            res.value = val;
            best_k = k;
        }
    }
    CoreAssignment best = CoreAssignment::all_periphery(n);
    for (NodeId k = 0; k < best_k; ++k) best.labels[static_cast<std::size_t>(order[static_cast<std::size_t>(k)])] = 1;
    res.assignment = std::move(best);
    res.trace.push_back(res.value);
    return res;
}

CoreAssignment lip_solver(const Graph& g) {
    const NodeId n = g.num_nodes();
    if (n < 2) return CoreAssignment::all_periphery(n);
    std::vector<NodeId> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](NodeId a, NodeId b) { return g.degree(a) > g.degree(b); });
    const std::int64_t m = g.num_edges();
    std::int64_t core_degree_sum = 0;
    std::int64_t best_z = std::numeric_limits<std::int64_t>::max();
    NodeId best_k = 1;
    for (NodeId k = 1; k <= n - 1; ++k) {
        core_degree_sum += g.degree(order[static_cast<std::size_t>(k - 1)]);
        const std::int64_t z = m + static_cast<std::int64_t>(k) * (k - 1) / 2 - core_degree_sum;
        if (z < best_z) {
            best_z = z;
            best_k = k;
        }
    }
    return CoreAssignment::from_core_set(n, std::span<const NodeId>(order.data(), static_cast<std::size_t>(best_k)));
}

DegreeGapResult degree_gap_estimator(const Graph& g, bool low_degree_core) {
    const NodeId n = g.num_nodes();
    if (n < 2) throw PreconditionError("degree gap needs n >= 2");
    std::vector<NodeId> deg = degrees(g);
    std::vector<NodeId> sorted(deg);
    std::sort(sorted.begin(), sorted.end());

    NodeId best_gap = 0;
    NodeId split = -1;  // gap between sorted[split] and sorted[split+1]
    for (NodeId i = 0; i + 1 < n; ++i) {
        const NodeId gap = sorted[static_cast<std::size_t>(i + 1)] - sorted[static_cast<std::size_t>(i)];
        if (gap >= best_gap && gap > 0) {  // ties toward larger index = smaller core
            best_gap = gap;
            split = i;
        }
    }
    DegreeGapResult res;
    if (split < 0) {
        res.assignment = CoreAssignment::all_periphery(n);
        res.constant_degrees = true;
        return res;
    }
    res.threshold_degree = sorted[static_cast<std::size_t>(split + 1)];
    res.assignment = CoreAssignment::all_periphery(n);
    for (NodeId v = 0; v < n; ++v) {
        const bool high = deg[static_cast<std::size_t>(v)] >= res.threshold_degree;
        res.assignment.labels[static_cast<std::size_t>(v)] = (high != low_degree_core) ? 1 : 0;
    }
    return res;
}

}  // namespace cpkit
