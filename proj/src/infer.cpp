#include "cpkit/infer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "cpkit/errors.hpp"
#include "cpkit/metrics.hpp"

namespace cpkit {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// M log p + (mm - M) log(1-p) with the degenerate-consistent conventions.
double bernoulli_block_term(double p, std::int64_t hits, std::int64_t pairs) {
    const std::int64_t misses = pairs - hits;
    double out = 0.0;
    if (hits > 0) {
        if (p <= 0.0) throw LogOfZeroError("positive edge count with zero probability");
        out += static_cast<double>(hits) * std::log(p);
    }
    if (misses > 0) {
        if (p >= 1.0) throw LogOfZeroError("positive non-edge count with probability one");
        out += static_cast<double>(misses) * std::log1p(-p);
    }
    return out;
}

struct BlockCounts {
    std::int64_t n1 = 0;
    std::int64_t m11 = 0, m12 = 0, m22 = 0;  // pair totals
    std::int64_t e11 = 0, e12 = 0, e22 = 0;  // edges
};

BlockCounts block_counts(const Graph& g, const CoreAssignment& c) {
    const PairCounts pc = pair_counts(g, c);
    BlockCounts bc;
    bc.n1 = pc.core;
    bc.m11 = pc.cc_pairs();
    bc.m12 = pc.cp_pairs();
    bc.m22 = pc.pp_pairs();
    bc.e11 = pc.cc;
    bc.e12 = pc.cp;
    bc.e22 = pc.pp();
    return bc;
}

double clamp_rate(double p) { return std::min(1.0 - 1e-12, std::max(1e-12, p)); }

double log_beta_fn(double a, double b) { return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b); }

}  // namespace

double loglik_sbm2(const Graph& g, const CoreAssignment& c, const BlockParams& params) {
    const BlockCounts bc = block_counts(g, c);
    const std::int64_t n = g.num_nodes();
    double ll = 0.0;
    if (bc.n1 > 0) {
        if (params.gamma1 <= 0.0) throw LogOfZeroError("core nodes present with gamma1 = 0");
        ll += static_cast<double>(bc.n1) * std::log(params.gamma1);
    }
    if (n - bc.n1 > 0) {
        if (params.gamma1 >= 1.0) throw LogOfZeroError("periphery nodes present with gamma1 = 1");
        ll += static_cast<double>(n - bc.n1) * std::log1p(-params.gamma1);
    }
    ll += bernoulli_block_term(params.p11, bc.e11, bc.m11);
    ll += bernoulli_block_term(params.p12, bc.e12, bc.m12);
    ll += bernoulli_block_term(params.p22, bc.e22, bc.m22);
    return ll;
}

CoreAssignment EMResult::labels() const {
    CoreAssignment c = CoreAssignment::all_periphery(static_cast<NodeId>(responsibilities.size()));
    for (std::size_t i = 0; i < responsibilities.size(); ++i) c.labels[i] = responsibilities[i] > 0.5 ? 1 : 0;
    return c;
}

namespace {

// Exact EM machinery: per-labeling tallies, computed once.
struct MaskTables {
    std::vector<std::int32_t> n1, e11, e12;
};

MaskTables build_mask_tables(const Graph& g) {
    const NodeId n = g.num_nodes();
    const std::vector<Edge> edges = g.edge_list();
    const std::size_t total = std::size_t{1} << n;
    MaskTables t;
    t.n1.resize(total);
    t.e11.resize(total);
    t.e12.resize(total);
    for (std::size_t mask = 0; mask < total; ++mask) {
        t.n1[mask] = static_cast<std::int32_t>(std::popcount(mask));
        std::int32_t cc = 0, cp = 0;
        for (const auto& [a, b] : edges) {
            const int ca = (mask >> a) & 1, cb = (mask >> b) & 1;
            if (ca && cb)
                ++cc;
            else if (ca != cb)
                ++cp;
        }
        t.e11[mask] = cc;
        t.e12[mask] = cp;
    }
    return t;
}

struct ExactEStep {
    double loglik = 0.0;
    double exp_n1 = 0.0;
    double exp_e11 = 0.0, exp_e12 = 0.0, exp_e22 = 0.0;
    double exp_m11 = 0.0, exp_m12 = 0.0, exp_m22 = 0.0;
    std::vector<double> q;
};

ExactEStep exact_e_step(const Graph& g, const MaskTables& t, const BlockParams& th) {
    const NodeId n = g.num_nodes();
    const std::int64_t m = g.num_edges();
    const std::size_t total = std::size_t{1} << n;
    const double lg = std::log(th.gamma1), lgc = std::log1p(-th.gamma1);
    const double l11 = std::log(th.p11), l11c = std::log1p(-th.p11);
    const double l12 = std::log(th.p12), l12c = std::log1p(-th.p12);
    const double l22 = std::log(th.p22), l22c = std::log1p(-th.p22);

    std::vector<double> logw(total);
    double max_lw = kNegInf;
    for (std::size_t mask = 0; mask < total; ++mask) {
        const std::int64_t n1 = t.n1[mask];
        const std::int64_t m11 = n1 * (n1 - 1) / 2;
        const std::int64_t m12 = n1 * (n - n1);
        const std::int64_t m22 = static_cast<std::int64_t>(n - n1) * (n - n1 - 1) / 2;
        const std::int64_t e11 = t.e11[mask], e12 = t.e12[mask];
        const std::int64_t e22 = m - e11 - e12;
        const double lw = n1 * lg + (n - n1) * lgc + e11 * l11 + (m11 - e11) * l11c + e12 * l12 +
                          (m12 - e12) * l12c + e22 * l22 + (m22 - e22) * l22c;
        logw[mask] = lw;
        max_lw = std::max(max_lw, lw);
    }
    double z = 0.0;
    for (const double lw : logw) z += std::exp(lw - max_lw);

    ExactEStep out;
    out.loglik = max_lw + std::log(z);
    out.q.assign(static_cast<std::size_t>(n), 0.0);
    for (std::size_t mask = 0; mask < total; ++mask) {
        const double w = std::exp(logw[mask] - max_lw) / z;
        if (w == 0.0) continue;
        const std::int64_t n1 = t.n1[mask];
        out.exp_n1 += w * static_cast<double>(n1);
        out.exp_e11 += w * t.e11[mask];
        out.exp_e12 += w * t.e12[mask];
        out.exp_e22 += w * static_cast<double>(m - t.e11[mask] - t.e12[mask]);
        out.exp_m11 += w * static_cast<double>(n1 * (n1 - 1) / 2);
        out.exp_m12 += w * static_cast<double>(n1 * (n - n1));
        out.exp_m22 += w * static_cast<double>(static_cast<std::int64_t>(n - n1) * (n - n1 - 1) / 2);
        for (NodeId v = 0; v < n; ++v) {
            if ((mask >> v) & 1) out.q[static_cast<std::size_t>(v)] += w;
        }
    }
    return out;
}

struct MeanFieldState {
    std::vector<double> q;
    double elbo = 0.0;
};

double mean_field_elbo(const Graph& g, const std::vector<double>& q, const BlockParams& th) {
    const NodeId n = g.num_nodes();
    const double l11 = std::log(th.p11), l11c = std::log1p(-th.p11);
    const double l12 = std::log(th.p12), l12c = std::log1p(-th.p12);
    const double l22 = std::log(th.p22), l22c = std::log1p(-th.p22);
    double s1 = 0.0, s2 = 0.0;
    for (const double qi : q) {
        s1 += qi;
        s2 += qi * qi;
    }
    const double w11 = (s1 * s1 - s2) / 2.0;
    const double w12 = (n - 1) * s1 - 2.0 * w11;
    const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
    const double w22 = pairs - w11 - w12;

    double elbo = w11 * l11c + w12 * l12c + w22 * l22c;
    for (NodeId v = 0; v < n; ++v) {
        const double qv = q[static_cast<std::size_t>(v)];
        for (const NodeId w : g.neighbors(v)) {
            if (w <= v) continue;
            const double qw = q[static_cast<std::size_t>(w)];
            const double r11 = qv * qw;
            const double r12 = qv + qw - 2.0 * qv * qw;
            const double r22 = 1.0 - r11 - r12;
            elbo += r11 * (l11 - l11c) + r12 * (l12 - l12c) + r22 * (l22 - l22c);
        }
        elbo += qv * std::log(th.gamma1) + (1.0 - qv) * std::log1p(-th.gamma1);
        if (qv > 0.0) elbo -= qv * std::log(qv);
        if (qv < 1.0) elbo -= (1.0 - qv) * std::log1p(-qv);
    }
    return elbo;
}

void mean_field_sweeps(const Graph& g, std::vector<double>& q, const BlockParams& th, int sweeps) {
    const NodeId n = g.num_nodes();
    const double l11 = std::log(th.p11), l11c = std::log1p(-th.p11);
    const double l12 = std::log(th.p12), l12c = std::log1p(-th.p12);
    const double l22 = std::log(th.p22), l22c = std::log1p(-th.p22);
    const double lodds_prior = std::log(th.gamma1) - std::log1p(-th.gamma1);
    double s1 = std::accumulate(q.begin(), q.end(), 0.0);
    for (int pass = 0; pass < sweeps; ++pass) {
        double max_delta = 0.0;
        for (NodeId i = 0; i < n; ++i) {
            const double qi_old = q[static_cast<std::size_t>(i)];
            const double q_others = s1 - qi_old;
            const double rest = static_cast<double>(n - 1) - q_others;
            double lo = lodds_prior + q_others * (l11c - l12c) + rest * (l12c - l22c);
            for (const NodeId w : g.neighbors(i)) {
                const double qw = q[static_cast<std::size_t>(w)];
                lo += qw * ((l11 - l11c) - (l12 - l12c)) + (1.0 - qw) * ((l12 - l12c) - (l22 - l22c));
            }
            const double qi = 1.0 / (1.0 + std::exp(-lo));
            q[static_cast<std::size_t>(i)] = qi;
            s1 += qi - qi_old;
            max_delta = std::max(max_delta, std::abs(qi - qi_old));
        }
        if (max_delta < 1e-12) break;
    }
}

}  // namespace

EMResult newman_em(const Graph& g, const BlockParams& init, const EMOptions& opts) {
    const NodeId n = g.num_nodes();
    if (n < 2) throw PreconditionError("EM needs n >= 2");
    const auto in_open = [](double p) { return p > 0.0 && p < 1.0; };
    if (!in_open(init.gamma1) || !in_open(init.p11) || !in_open(init.p12) || !in_open(init.p22))
        throw SymmetricInitError("init parameters must lie strictly inside (0,1)");
    if (init.p11 == init.p22)
        throw SymmetricInitError("p11 == p22 makes the blocks indistinguishable");

    EMResult res;
    res.exact = n <= opts.exact_threshold;
    BlockParams th = init;

    if (res.exact) {
        const MaskTables tables = build_mask_tables(g);
        double prev = kNegInf;
        for (int it = 0; it < opts.max_iter; ++it) {
            const ExactEStep e = exact_e_step(g, tables, th);
            res.loglik_trace.push_back(e.loglik);
            res.responsibilities = e.q;
            res.iterations = it + 1;
            if (std::abs(e.loglik - prev) < opts.tol) {
                res.converged = true;
                break;
            }
            prev = e.loglik;
            th.gamma1 = clamp_rate(e.exp_n1 / static_cast<double>(n));
            if (e.exp_m11 > 0.0) th.p11 = clamp_rate(e.exp_e11 / e.exp_m11);
            if (e.exp_m12 > 0.0) th.p12 = clamp_rate(e.exp_e12 / e.exp_m12);
            if (e.exp_m22 > 0.0) th.p22 = clamp_rate(e.exp_e22 / e.exp_m22);
        }
    } else {
        std::vector<double> q(static_cast<std::size_t>(n), 0.5);
        mean_field_sweeps(g, q, th, opts.mean_field_sweeps);
        double prev = kNegInf;
        for (int it = 0; it < opts.max_iter; ++it) {
            // M-step from the current responsibilities.
            double s1 = 0.0, s2 = 0.0;
            for (const double qi : q) {
                s1 += qi;
                s2 += qi * qi;
            }
            const double w11 = (s1 * s1 - s2) / 2.0;
            const double w12 = (n - 1) * s1 - 2.0 * w11;
            const double pairs = static_cast<double>(n) * (n - 1) / 2.0;
            const double w22 = pairs - w11 - w12;
            double e11 = 0.0, e12 = 0.0;
            for (NodeId v = 0; v < n; ++v) {
                for (const NodeId w : g.neighbors(v)) {
                    if (w <= v) continue;
                    const double r11 = q[static_cast<std::size_t>(v)] * q[static_cast<std::size_t>(w)];
                    e11 += r11;
                    e12 += q[static_cast<std::size_t>(v)] + q[static_cast<std::size_t>(w)] - 2.0 * r11;
                }
            }
            const double e22 = static_cast<double>(g.num_edges()) - e11 - e12;
            th.gamma1 = clamp_rate(s1 / static_cast<double>(n));
            if (w11 > 0.0) th.p11 = clamp_rate(e11 / w11);
            if (w12 > 0.0) th.p12 = clamp_rate(e12 / w12);
            if (w22 > 0.0) th.p22 = clamp_rate(e22 / w22);

            mean_field_sweeps(g, q, th, opts.mean_field_sweeps);
            const double elbo = mean_field_elbo(g, q, th);
            res.loglik_trace.push_back(elbo);
            res.responsibilities = q;
            res.iterations = it + 1;
            if (std::abs(elbo - prev) < opts.tol) {
                res.converged = true;
                break;
            }
            prev = elbo;
        }
    }

    // Identifiability: the denser diagonal block is the core.
    if (th.p11 < th.p22) {
        std::swap(th.p11, th.p22);
        th.gamma1 = 1.0 - th.gamma1;
        for (double& qi : res.responsibilities) qi = 1.0 - qi;
    }
    res.params = th;
    return res;
}

std::vector<double> GibbsChain::core_frequency() const {
    std::vector<double> freq;
    if (label_samples.empty()) return freq;
    freq.assign(label_samples.front().size(), 0.0);
    for (const auto& labels : label_samples) {
        for (std::size_t i = 0; i < labels.size(); ++i) freq[i] += labels[i];
    }
    for (double& f : freq) f /= static_cast<double>(label_samples.size());
    return freq;
}

namespace {

struct LabelState {
    std::vector<std::uint8_t> labels;
    std::vector<NodeId> core_deg;
    std::int64_t n1 = 0;
    std::int64_t e11 = 0, e12 = 0;

    LabelState(const Graph& g, const std::vector<std::uint8_t>& init) : labels(init) {
        const NodeId n = g.num_nodes();
        core_deg.assign(static_cast<std::size_t>(n), 0);
        for (NodeId v = 0; v < n; ++v) {
            n1 += labels[static_cast<std::size_t>(v)];
            NodeId cd = 0;
            for (const NodeId w : g.neighbors(v)) cd += labels[static_cast<std::size_t>(w)];
            core_deg[static_cast<std::size_t>(v)] = cd;
            if (labels[static_cast<std::size_t>(v)]) {
                e11 += cd;  // counted twice, halved below
                e12 += g.degree(v) - cd;
            }
        }
        e11 /= 2;
    }

    void flip(const Graph& g, NodeId v) {
        const NodeId cd = core_deg[static_cast<std::size_t>(v)];
        const NodeId pd = g.degree(v) - cd;
        const std::int8_t delta = labels[static_cast<std::size_t>(v)] ? -1 : 1;
        if (delta > 0) {
            n1 += 1;
            e11 += cd;
            e12 += pd - cd;
        } else {
            n1 -= 1;
            e11 -= cd;
            e12 += cd - pd;
        }
        labels[static_cast<std::size_t>(v)] ^= 1;
        for (const NodeId w : g.neighbors(v)) core_deg[static_cast<std::size_t>(w)] += delta;
    }
};

}  // namespace

GibbsChain gibbs_sampler(const Graph& g, const GibbsOptions& opts, Rng rng) {
    const NodeId n = g.num_nodes();
    if (n < 2) throw PreconditionError("Gibbs sampling needs n >= 2");
    if (opts.n_samples < 1 || opts.burn_in < 0 || opts.thin < 1)
        throw PreconditionError("invalid chain configuration");

    GibbsChain chain;
    chain.prior = opts.prior;
    chain.seed = rng.seed();
    chain.burn_in = opts.burn_in;
    chain.samples.reserve(static_cast<std::size_t>(opts.n_samples));

    std::vector<std::uint8_t> init;
    if (opts.clamp_labels) {
        init = opts.clamp_labels->labels;
    } else if (opts.init_labels) {
        init = opts.init_labels->labels;
    } else {
        init.assign(static_cast<std::size_t>(n), 0);
        Rng ir = rng.child("init-labels");
        for (auto& b : init) b = ir.bernoulli(0.5);
    }
    if (static_cast<NodeId>(init.size()) != n) throw PreconditionError("label vector size mismatch");
    LabelState state(g, init);
    const bool clamped = opts.clamp_labels.has_value();

    Rng draw = rng.child("chain");
    std::int64_t ordered_attempts = 0, ordered_accepts = 0;
    const std::int64_t m = g.num_edges();
    const int total_sweeps = opts.burn_in + opts.n_samples * opts.thin;
    BlockSample rates;
    for (int sweep = 0; sweep < total_sweeps; ++sweep) {
        // Step 1: conjugate rate draws given the labels.
        const std::int64_t n1 = state.n1, n2 = n - state.n1;
        const std::int64_t m11 = n1 * (n1 - 1) / 2;
        const std::int64_t m12 = n1 * n2;
        const std::int64_t m22 = n2 * (n2 - 1) / 2;
        const std::int64_t e11 = state.e11, e12 = state.e12, e22 = m - e11 - e12;
        rates.gamma1 = draw.beta(static_cast<double>(n1) + 1.0, static_cast<double>(n2) + 1.0);
        for (std::int64_t attempt = 0;; ++attempt) {
            if (attempt >= opts.ordered_rejection_cap)
                throw InsufficientSamplesError("ordered-prior rejection cap exceeded");
            ++ordered_attempts;
            rates.p11 = draw.beta(static_cast<double>(e11) + 1.0, static_cast<double>(m11 - e11) + 1.0);
            rates.p12 = draw.beta(static_cast<double>(e12) + 1.0, static_cast<double>(m12 - e12) + 1.0);
            rates.p22 = draw.beta(static_cast<double>(e22) + 1.0, static_cast<double>(m22 - e22) + 1.0);
            if (opts.prior == GibbsPrior::Flat || (rates.p22 <= rates.p12 && rates.p12 <= rates.p11)) {
                ++ordered_accepts;
                break;
            }
        }

        // Steps 2-4: sequential label sweep from the full conditionals.
        if (!clamped) {
            const double lg = std::log(rates.gamma1 / (1.0 - rates.gamma1));
            const double l11 = std::log(rates.p11), l11c = std::log1p(-rates.p11);
            const double l12 = std::log(rates.p12), l12c = std::log1p(-rates.p12);
            const double l22 = std::log(rates.p22), l22c = std::log1p(-rates.p22);
            for (NodeId i = 0; i < n; ++i) {
                const std::int64_t others_core = state.n1 - state.labels[static_cast<std::size_t>(i)];
                const std::int64_t others_periph = (n - 1) - others_core;
                const NodeId m1 = state.core_deg[static_cast<std::size_t>(i)];
                const NodeId m2 = g.degree(i) - m1;
                const double lo = lg + m1 * (l11 - l12) + (others_core - m1) * (l11c - l12c) +
                                  m2 * (l12 - l22) + (others_periph - m2) * (l12c - l22c);
                const double p_core = 1.0 / (1.0 + std::exp(-lo));
                const bool core = draw.uniform01() < p_core;
                if (core != static_cast<bool>(state.labels[static_cast<std::size_t>(i)])) state.flip(g, i);
            }
        }

        if (sweep >= opts.burn_in && (sweep - opts.burn_in) % opts.thin == 0) {
            chain.samples.push_back(rates);
            chain.label_samples.push_back(state.labels);
        }
    }
    chain.ordered_acceptance_rate =
        ordered_attempts > 0 ? static_cast<double>(ordered_accepts) / static_cast<double>(ordered_attempts) : 1.0;
    return chain;
}

LayeredGibbsChain gibbs_layered(const Graph& g, const LayeredGibbsOptions& opts, Rng rng) {
    const NodeId n = g.num_nodes();
    const int K = opts.layers;
    if (n < 2 || K < 1) throw PreconditionError("layered Gibbs needs n >= 2 and K >= 1");
    if (opts.n_samples < 1 || opts.burn_in < 0 || opts.thin < 1)
        throw PreconditionError("invalid chain configuration");

    LayeredGibbsChain chain;
    chain.layers = K;
    chain.seed = rng.seed();
    chain.burn_in = opts.burn_in;

    std::vector<std::uint8_t> labels;
    if (opts.init_labels) {
        labels.assign(opts.init_labels->begin(), opts.init_labels->end());
        if (static_cast<NodeId>(labels.size()) != n) throw PreconditionError("label vector size mismatch");
        for (const std::uint8_t l : labels) {
            if (l >= K) throw PreconditionError("layer label out of range");
        }
    } else {
        labels.assign(static_cast<std::size_t>(n), 0);
        Rng ir = rng.child("init-labels");
        for (auto& l : labels) l = static_cast<std::uint8_t>(ir.uniform_below(static_cast<std::uint64_t>(K)));
    }

    Rng draw = rng.child("chain");
    std::int64_t ordered_attempts = 0, ordered_accepts = 0;
    const int total_sweeps = opts.burn_in + opts.n_samples * opts.thin;
    std::vector<std::int64_t> layer_count(static_cast<std::size_t>(K), 0);
    for (const std::uint8_t l : labels) ++layer_count[l];

    for (int sweep = 0; sweep < total_sweeps; ++sweep) {
        // Pair totals and edge counts per density level j = max(l, m).
        std::vector<std::int64_t> pair_total(static_cast<std::size_t>(K), 0);
        std::vector<std::int64_t> edge_count(static_cast<std::size_t>(K), 0);
        std::int64_t below = 0;
        for (int j = 0; j < K; ++j) {
            const std::int64_t nj = layer_count[static_cast<std::size_t>(j)];
            pair_total[static_cast<std::size_t>(j)] = nj * (nj - 1) / 2 + nj * below;
            below += nj;
        }
        for (NodeId v = 0; v < n; ++v) {
            for (const NodeId w : g.neighbors(v)) {
                if (w <= v) continue;
                ++edge_count[std::max(labels[static_cast<std::size_t>(v)], labels[static_cast<std::size_t>(w)])];
            }
        }

        LayeredSample sample;
        sample.gamma.resize(static_cast<std::size_t>(K));
        double gamma_sum = 0.0;
        for (int j = 0; j < K; ++j) {
            sample.gamma[static_cast<std::size_t>(j)] =
                draw.gamma(static_cast<double>(layer_count[static_cast<std::size_t>(j)]) + 1.0);
            gamma_sum += sample.gamma[static_cast<std::size_t>(j)];
        }
        for (double& gmm : sample.gamma) gmm /= gamma_sum;

        sample.rates.resize(static_cast<std::size_t>(K));
        for (std::int64_t attempt = 0;; ++attempt) {
            if (attempt >= opts.ordered_rejection_cap)
                throw InsufficientSamplesError("ordered-prior rejection cap exceeded");
            ++ordered_attempts;
            bool ordered = true;
            for (int j = 0; j < K; ++j) {
                sample.rates[static_cast<std::size_t>(j)] =
                    draw.beta(static_cast<double>(edge_count[static_cast<std::size_t>(j)]) + 1.0,
                              static_cast<double>(pair_total[static_cast<std::size_t>(j)] -
                                                  edge_count[static_cast<std::size_t>(j)]) +
                                  1.0);
            }
            for (int j = 1; j < K; ++j) {
                if (sample.rates[static_cast<std::size_t>(j)] > sample.rates[static_cast<std::size_t>(j - 1)]) {
                    ordered = false;
                    break;
                }
            }
            if (ordered) {
                ++ordered_accepts;
                break;
            }
        }

        // Label sweep.
        std::vector<double> logp(static_cast<std::size_t>(K)), logpc(static_cast<std::size_t>(K));
        for (int j = 0; j < K; ++j) {
            logp[static_cast<std::size_t>(j)] = std::log(sample.rates[static_cast<std::size_t>(j)]);
            logpc[static_cast<std::size_t>(j)] = std::log1p(-sample.rates[static_cast<std::size_t>(j)]);
        }
        std::vector<std::int64_t> nb(static_cast<std::size_t>(K));
        std::vector<double> logw(static_cast<std::size_t>(K));
        for (NodeId i = 0; i < n; ++i) {
            std::fill(nb.begin(), nb.end(), 0);
            for (const NodeId w : g.neighbors(i)) ++nb[labels[static_cast<std::size_t>(w)]];
            const std::uint8_t old = labels[static_cast<std::size_t>(i)];
            --layer_count[old];
            double max_lw = kNegInf;
            for (int l = 0; l < K; ++l) {
                double lw = std::log(sample.gamma[static_cast<std::size_t>(l)]);
                for (int k = 0; k < K; ++k) {
                    // layer_count currently excludes node i; neighbors never
                    // include i (no self-loops).
                    const std::int64_t cnt = layer_count[static_cast<std::size_t>(k)];
                    const std::int64_t adj = nb[static_cast<std::size_t>(k)];
                    const int level = std::max(l, k);
                    lw += static_cast<double>(adj) * logp[static_cast<std::size_t>(level)] +
                          static_cast<double>(cnt - adj) * logpc[static_cast<std::size_t>(level)];
                }
                logw[static_cast<std::size_t>(l)] = lw;
                max_lw = std::max(max_lw, lw);
            }
            double z = 0.0;
            for (int l = 0; l < K; ++l) z += std::exp(logw[static_cast<std::size_t>(l)] - max_lw);
            const double u = draw.uniform01() * z;
            double cum = 0.0;
            std::uint8_t chosen = static_cast<std::uint8_t>(K - 1);
            for (int l = 0; l < K; ++l) {
                cum += std::exp(logw[static_cast<std::size_t>(l)] - max_lw);
                if (u < cum) {
                    chosen = static_cast<std::uint8_t>(l);
                    break;
                }
            }
            labels[static_cast<std::size_t>(i)] = chosen;
            ++layer_count[chosen];
        }

        if (sweep >= opts.burn_in && (sweep - opts.burn_in) % opts.thin == 0) {
            chain.samples.push_back(sample);
            chain.label_samples.push_back(labels);
        }
    }
    chain.ordered_acceptance_rate =
        ordered_attempts > 0 ? static_cast<double>(ordered_accepts) / static_cast<double>(ordered_attempts) : 1.0;
    return chain;
}

namespace {

// Modal label vector of a chain with its visit frequency.
template <class Chain>
std::pair<std::vector<std::uint8_t>, double> modal_labels(const Chain& chain) {
    if (chain.label_samples.empty())
        throw InsufficientSamplesError("chain carries no label samples");
    std::map<std::vector<std::uint8_t>, std::int64_t> counts;
    for (const auto& labels : chain.label_samples) ++counts[labels];
    const auto best = std::max_element(counts.begin(), counts.end(),
                                       [](const auto& a, const auto& b) { return a.second < b.second; });
    const double freq = static_cast<double>(best->second) / static_cast<double>(chain.label_samples.size());
    if (best->second < 5)
        throw InsufficientSamplesError("modal labeling visited fewer than 5 times; chain too diffuse");
    return {best->first, freq};
}

// log of the Monte Carlo probability that independent Beta posteriors land
// in the ordered region; InsufficientSamples when the event never occurs.
double log_ordered_mass(std::span<const double> a, std::span<const double> b, Rng& rng, int draws) {
    std::int64_t hits = 0;
    std::vector<double> x(a.size());
    for (int d = 0; d < draws; ++d) {
        for (std::size_t j = 0; j < a.size(); ++j) x[j] = rng.beta(a[j], b[j]);
        bool ordered = true;
        for (std::size_t j = 1; j < x.size(); ++j) {
            if (x[j] > x[j - 1]) {
                ordered = false;
                break;
            }
        }
        hits += ordered;
    }
    if (hits == 0) throw InsufficientSamplesError("ordering constraint mass could not be bridged");
    return std::log(static_cast<double>(hits) / static_cast<double>(draws));
}

double lfactorial(int k) { return std::lgamma(static_cast<double>(k) + 1.0); }

}  // namespace

OddsResult posterior_odds(const Graph& g, const GibbsChain& block_chain,
                          const LayeredGibbsChain& layered_chain, Rng rng) {
    constexpr int kBridgeDraws = 8192;
    const NodeId n = g.num_nodes();
    OddsResult res;
    res.method = "chib-modal-labeling with conjugate closed forms; ordering constraints bridged by "
                 "posterior Monte Carlo mass";

    {  // Block model marginal likelihood.
        const auto [labels, freq] = modal_labels(block_chain);
        res.block_modal_frequency = freq;
        const BlockCounts bc = block_counts(g, CoreAssignment{labels});
        const double log_label_prior =
            log_beta_fn(static_cast<double>(bc.n1) + 1.0, static_cast<double>(n - bc.n1) + 1.0);
        double log_rate_integral = log_beta_fn(bc.e11 + 1.0, bc.m11 - bc.e11 + 1.0) +
                                   log_beta_fn(bc.e12 + 1.0, bc.m12 - bc.e12 + 1.0) +
                                   log_beta_fn(bc.e22 + 1.0, bc.m22 - bc.e22 + 1.0);
        if (block_chain.prior == GibbsPrior::Ordered) {
            const double a[3] = {bc.e11 + 1.0, bc.e12 + 1.0, bc.e22 + 1.0};
            const double b[3] = {bc.m11 - bc.e11 + 1.0, bc.m12 - bc.e12 + 1.0, bc.m22 - bc.e22 + 1.0};
            Rng bridge = rng.child("block-bridge");
            log_rate_integral += lfactorial(3) + log_ordered_mass({a, 3}, {b, 3}, bridge, kBridgeDraws);
        }
        res.logml_block = log_label_prior + log_rate_integral - std::log(freq);
    }

    {  // Layered model marginal likelihood.
        const auto [labels, freq] = modal_labels(layered_chain);
        res.layered_modal_frequency = freq;
        const int K = layered_chain.layers;
        std::vector<std::int64_t> layer_count(static_cast<std::size_t>(K), 0);
        for (const std::uint8_t l : labels) ++layer_count[l];
        std::vector<std::int64_t> pair_total(static_cast<std::size_t>(K), 0);
        std::vector<std::int64_t> edge_count(static_cast<std::size_t>(K), 0);
        std::int64_t below = 0;
        for (int j = 0; j < K; ++j) {
            const std::int64_t nj = layer_count[static_cast<std::size_t>(j)];
            pair_total[static_cast<std::size_t>(j)] = nj * (nj - 1) / 2 + nj * below;
            below += nj;
        }
        for (NodeId v = 0; v < n; ++v) {
            for (const NodeId w : g.neighbors(v)) {
                if (w <= v) continue;
                ++edge_count[std::max(labels[static_cast<std::size_t>(v)], labels[static_cast<std::size_t>(w)])];
            }
        }
        double log_label_prior = lfactorial(K - 1) - std::lgamma(static_cast<double>(n + K));
        for (int j = 0; j < K; ++j)
            log_label_prior += lfactorial(static_cast<int>(layer_count[static_cast<std::size_t>(j)]));
        std::vector<double> a(static_cast<std::size_t>(K)), b(static_cast<std::size_t>(K));
        double log_rate_integral = lfactorial(K);
        for (int j = 0; j < K; ++j) {
            a[static_cast<std::size_t>(j)] = static_cast<double>(edge_count[static_cast<std::size_t>(j)]) + 1.0;
            b[static_cast<std::size_t>(j)] = static_cast<double>(pair_total[static_cast<std::size_t>(j)] -
                                                                 edge_count[static_cast<std::size_t>(j)]) +
                                             1.0;
            log_rate_integral += log_beta_fn(a[static_cast<std::size_t>(j)], b[static_cast<std::size_t>(j)]);
        }
        Rng bridge = rng.child("layered-bridge");
        log_rate_integral += log_ordered_mass(a, b, bridge, kBridgeDraws);
        res.logml_layered = log_label_prior + log_rate_integral - std::log(freq);
    }

    res.log_lambda = res.logml_block - res.logml_layered;
    res.lambda = std::exp(res.log_lambda);
    return res;
}

double dcsbm_loglik(const Graph& g, const DCSBMLik& model) {
    const NodeId n = g.num_nodes();
    if (model.labels.size() != n || static_cast<NodeId>(model.theta.size()) != n)
        throw PreconditionError("model size mismatch");
    double tp = 0.0, sp = 0.0, tall = 0.0, sall = 0.0;
    for (NodeId v = 0; v < n; ++v) {
        const double th = model.theta[static_cast<std::size_t>(v)];
        tall += th;
        sall += th * th;
        if (!model.labels.is_core(v)) {
            tp += th;
            sp += th * th;
        }
    }
    const double w_all = (tall * tall - sall) / 2.0;
    const double w_p = (tp * tp - sp) / 2.0;
    const double w_c = w_all - w_p;

    double ll = -model.pc * w_c - model.pp * w_p;
    for (NodeId v = 0; v < n; ++v) {
        for (const NodeId w : g.neighbors(v)) {
            if (w <= v) continue;
            const bool core_pair = model.labels.is_core(v) || model.labels.is_core(w);
            const double rate = model.theta[static_cast<std::size_t>(v)] * model.theta[static_cast<std::size_t>(w)] *
                                (core_pair ? model.pc : model.pp);
            if (rate <= 0.0) return kNegInf;
            ll += std::log(rate);
        }
    }
    return ll;
}

namespace {

// Profile log likelihood of a labeling with the rates solved in closed
// form; the theta-only edge term is constant across labelings.
double dcsbm_profile(double e_c, double w_c, double e_p, double w_p) {
    double out = 0.0;
    if (e_c > 0.0) {
        if (w_c <= 0.0) return kNegInf;
        out += e_c * std::log(e_c / w_c) - e_c;
    }
    if (e_p > 0.0) {
        if (w_p <= 0.0) return kNegInf;
        out += e_p * std::log(e_p / w_p) - e_p;
    }
    return out;
}

}  // namespace

DCSBMFit dcsbm_greedy_fit(const Graph& g, Rng rng, int restarts) {
    const NodeId n = g.num_nodes();
    const std::int64_t m = g.num_edges();
    DCSBMFit fit;
    fit.model.labels = CoreAssignment::all_periphery(n);
    fit.model.theta.assign(static_cast<std::size_t>(n), 0.0);
    if (m == 0) {
        fit.loglik = 0.0;
        return fit;
    }
    const double mean_deg = 2.0 * static_cast<double>(m) / static_cast<double>(n);
    std::vector<double> theta(static_cast<std::size_t>(n));
    for (NodeId v = 0; v < n; ++v) theta[static_cast<std::size_t>(v)] = g.degree(v) / mean_deg;

    double tall = 0.0, sall = 0.0;
    for (const double th : theta) {
        tall += th;
        sall += th * th;
    }
    const double w_all = (tall * tall - sall) / 2.0;

    double best_profile = kNegInf;
    CoreAssignment best_labels = CoreAssignment::all_periphery(n);
    int used = 0;
    for (int r = 0; r < std::max(1, restarts); ++r) {
        ++used;
        CoreAssignment labels = CoreAssignment::all_periphery(n);
        if (r == 0) {
            // Degree-split start; random restarts cover the rest.
            std::vector<NodeId> order(static_cast<std::size_t>(n));
            std::iota(order.begin(), order.end(), 0);
            std::stable_sort(order.begin(), order.end(),
                             [&](NodeId x, NodeId y) { return g.degree(x) > g.degree(y); });
            const NodeId k = std::max<NodeId>(1, n / 4);
            for (NodeId i = 0; i < k; ++i) labels.labels[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = 1;
        } else {
            Rng child = rng.child("dcsbm-restart", static_cast<std::uint64_t>(r));
            for (auto& b : labels.labels) b = child.bernoulli(0.5);
        }

        // Incremental state over the periphery side.
        std::vector<NodeId> core_deg(static_cast<std::size_t>(n), 0);
        double tp = 0.0, sp = 0.0;
        std::int64_t e_p = 0;
        for (NodeId v = 0; v < n; ++v) {
            NodeId cd = 0;
            for (const NodeId w : g.neighbors(v)) cd += labels.labels[static_cast<std::size_t>(w)];
            core_deg[static_cast<std::size_t>(v)] = cd;
            if (!labels.is_core(v)) {
                tp += theta[static_cast<std::size_t>(v)];
                sp += theta[static_cast<std::size_t>(v)] * theta[static_cast<std::size_t>(v)];
                e_p += g.degree(v) - cd;
            }
        }
        e_p /= 2;

        const auto profile_at = [&](double tp_x, double sp_x, std::int64_t ep_x) {
            const double w_p = (tp_x * tp_x - sp_x) / 2.0;
            return dcsbm_profile(static_cast<double>(m - ep_x), w_all - w_p, static_cast<double>(ep_x), w_p);
        };
        double current = profile_at(tp, sp, e_p);
        for (;;) {
            NodeId best_flip = -1;
            double best_val = current;
            for (NodeId v = 0; v < n; ++v) {
                const double th = theta[static_cast<std::size_t>(v)];
                const NodeId pd = g.degree(v) - core_deg[static_cast<std::size_t>(v)];
                double tp_x = tp, sp_x = sp;
                std::int64_t ep_x = e_p;
                if (labels.is_core(v)) {
                    tp_x += th;
                    sp_x += th * th;
                    ep_x += pd;
                } else {
                    tp_x -= th;
                    sp_x -= th * th;
                    ep_x -= pd;
                }
                const double val = profile_at(tp_x, sp_x, ep_x);
                if (val > best_val) {
                    best_val = val;
                    best_flip = v;
                }
            }
            if (best_flip < 0) break;
            const double th = theta[static_cast<std::size_t>(best_flip)];
            const NodeId pd = g.degree(best_flip) - core_deg[static_cast<std::size_t>(best_flip)];
            const std::int8_t delta = labels.is_core(best_flip) ? 1 : -1;  // sign for periphery side
            if (delta > 0) {
                tp += th;
                sp += th * th;
                e_p += pd;
            } else {
                tp -= th;
                sp -= th * th;
                e_p -= pd;
            }
            labels.labels[static_cast<std::size_t>(best_flip)] ^= 1;
            const std::int8_t core_delta = labels.is_core(best_flip) ? 1 : -1;
            for (const NodeId w : g.neighbors(best_flip)) core_deg[static_cast<std::size_t>(w)] += core_delta;
            current = best_val;
        }
        if (current > best_profile) {
            best_profile = current;
            best_labels = labels;
        }
    }

    // Final closed-form rates at the winning labeling.
    double tp = 0.0, sp = 0.0;
    std::int64_t e_p = 0;
    for (NodeId v = 0; v < n; ++v) {
        if (!best_labels.is_core(v)) {
            tp += theta[static_cast<std::size_t>(v)];
            sp += theta[static_cast<std::size_t>(v)] * theta[static_cast<std::size_t>(v)];
            for (const NodeId w : g.neighbors(v)) {
                if (w > v && !best_labels.is_core(w)) ++e_p;
            }
        }
    }
    const double w_p = (tp * tp - sp) / 2.0;
    const double w_c = w_all - w_p;
    fit.model.labels = best_labels;
    fit.model.theta = theta;
    fit.model.pc = w_c > 0.0 ? static_cast<double>(m - e_p) / w_c : 0.0;
    fit.model.pp = w_p > 0.0 ? static_cast<double>(e_p) / w_p : 0.0;
    fit.loglik = dcsbm_loglik(g, fit.model);
    fit.restarts_used = used;
    return fit;
}

}  // namespace cpkit
