#include "cpkit/result_json.hpp"

#include <cmath>
#include <ostream>

namespace cpkit {

namespace {
constexpr const char* kVersion = "0.1.0";
}

Json finite_or_marker(double v) {
    if (std::isfinite(v)) return v;
    if (std::isnan(v)) return Json{{"nan", true}};
    return Json{{"inf", v > 0 ? 1 : -1}};
}

Json to_json(const RunManifest& manifest) {
    Json j{{"tool", "cpkit"},
           {"version", kVersion},
           {"subcommand", manifest.subcommand},
           {"params", manifest.params},
           {"seed", manifest.seed}};
    if (!manifest.input_path.empty()) {
        j["input"] = Json{{"path", manifest.input_path}, {"fnv1a64", manifest.input_hash}};
    }
    return j;
}

Json labels_json(const Graph& g, const CoreAssignment& c) {
    Json nodes = Json::array();
    Json labels = Json::array();
    Json core = Json::array();
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
        nodes.push_back(g.name_of(v));
        labels.push_back(static_cast<int>(c.labels[static_cast<std::size_t>(v)]));
        if (c.is_core(v)) core.push_back(g.name_of(v));
    }
    return Json{{"nodes", nodes}, {"labels", labels}, {"core", core}, {"K", c.core_size()}};
}

Json to_json(const TestResult& result, const Graph& g) {
    Json null_j{{"kind", to_string(result.null.kind)},
                {"B", result.null.replicates},
                {"seed", result.null.seed}};
    if (result.null.kind == NullKind::RewirePreserveDegrees) {
        null_j["swap_count"] = result.null.swap_count > 0 ? result.null.swap_count : 10 * g.num_edges();
    }
    Json j{{"statistic", finite_or_marker(result.statistic)},
           {"p_value", result.p_value},
           {"B", result.replicates},
           {"null", null_j},
           {"seed", result.seed},
           {"labels", labels_json(g, result.observed_labels)}};
    if (!result.replicate_statistics.empty()) {
        Json reps = Json::array();
        for (const double s : result.replicate_statistics) reps.push_back(finite_or_marker(s));
        j["replicate_statistics"] = reps;
    }
    return j;
}

Json to_json(const ZScoreResult& result) {
    Json j{{"z", finite_or_marker(result.z)},
           {"observed_centralization", result.observed},
           {"null_mean", result.null_mean},
           {"null_sd", result.null_sd},
           {"zero_variance", result.zero_variance},
           {"B", static_cast<int>(result.replicate_values.size())},
           {"seed", result.seed}};
    if (!result.note.empty()) j["note"] = result.note;
    return j;
}

Json to_json(const SurpriseResult& result) {
    return Json{{"p_value", result.p_value},
                {"population_pairs", result.population},
                {"success_pairs", result.successes},
                {"draws", result.draws},
                {"observed_successes", result.observed}};
}

Json to_json(const EMResult& result, const Graph& g) {
    Json resp = Json::array();
    for (const double q : result.responsibilities) resp.push_back(q);
    return Json{{"gamma1", result.params.gamma1},
                {"p11", result.params.p11},
                {"p12", result.params.p12},
                {"p22", result.params.p22},
                {"responsibilities", resp},
                {"loglik", result.loglik_trace.empty() ? Json() : finite_or_marker(result.loglik_trace.back())},
                {"objective", result.exact ? "loglik" : "elbo"},
                {"iterations", result.iterations},
                {"converged", result.converged},
                {"labels", labels_json(g, result.labels())}};
}

Json to_json(const DCSBMFit& fit, const Graph& g) {
    Json theta = Json::array();
    for (const double t : fit.model.theta) theta.push_back(t);
    return Json{{"pc", fit.model.pc},
                {"pp", fit.model.pp},
                {"theta", theta},
                {"loglik", finite_or_marker(fit.loglik)},
                {"restarts", fit.restarts_used},
                {"labels", labels_json(g, fit.model.labels)}};
}

Json to_json(const OddsResult& result) {
    return Json{{"lambda", finite_or_marker(result.lambda)},
                {"log_lambda", finite_or_marker(result.log_lambda)},
                {"logml_block", finite_or_marker(result.logml_block)},
                {"logml_layered", finite_or_marker(result.logml_layered)},
                {"block_modal_frequency", result.block_modal_frequency},
                {"layered_modal_frequency", result.layered_modal_frequency},
                {"method", result.method}};
}

namespace {

template <class Chain>
Json chain_common(const Chain& chain) {
    return Json{{"retained", static_cast<int>(chain.samples.size())},
                {"burn_in", chain.burn_in},
                {"seed", chain.seed},
                {"ordered_acceptance_rate", chain.ordered_acceptance_rate}};
}

}  // namespace

Json chain_summary_json(const GibbsChain& chain) {
    Json j = chain_common(chain);
    j["prior"] = chain.prior == GibbsPrior::Ordered ? "ordered" : "flat";
    double g1 = 0.0, p11 = 0.0, p12 = 0.0, p22 = 0.0;
    for (const auto& s : chain.samples) {
        g1 += s.gamma1;
        p11 += s.p11;
        p12 += s.p12;
        p22 += s.p22;
    }
    const double denom = std::max<std::size_t>(1, chain.samples.size());
    j["posterior_mean"] =
        Json{{"gamma1", g1 / denom}, {"p11", p11 / denom}, {"p12", p12 / denom}, {"p22", p22 / denom}};
    const std::vector<double> freq = chain.core_frequency();
    Json fj = Json::array();
    for (const double f : freq) fj.push_back(f);
    j["core_frequency"] = fj;
    return j;
}

Json chain_summary_json(const LayeredGibbsChain& chain) {
    Json j = chain_common(chain);
    j["prior"] = "layered-ordered";
    j["layers"] = chain.layers;
    if (!chain.samples.empty()) {
        std::vector<double> rates(static_cast<std::size_t>(chain.layers), 0.0);
        std::vector<double> gamma(static_cast<std::size_t>(chain.layers), 0.0);
        for (const auto& s : chain.samples) {
            for (int k = 0; k < chain.layers; ++k) {
                rates[static_cast<std::size_t>(k)] += s.rates[static_cast<std::size_t>(k)];
                gamma[static_cast<std::size_t>(k)] += s.gamma[static_cast<std::size_t>(k)];
            }
        }
        Json rj = Json::array(), gj = Json::array();
        for (int k = 0; k < chain.layers; ++k) {
            rj.push_back(rates[static_cast<std::size_t>(k)] / static_cast<double>(chain.samples.size()));
            gj.push_back(gamma[static_cast<std::size_t>(k)] / static_cast<double>(chain.samples.size()));
        }
        j["posterior_mean"] = Json{{"rates", rj}, {"gamma", gj}};
    }
    return j;
}

void write_chain_jsonl(const GibbsChain& chain, std::ostream& out) {
    for (std::size_t s = 0; s < chain.samples.size(); ++s) {
        const auto& sample = chain.samples[s];
        Json j{{"gamma1", sample.gamma1}, {"p11", sample.p11}, {"p12", sample.p12}, {"p22", sample.p22}};
        if (s < chain.label_samples.size()) {
            Json labels = Json::array();
            for (const std::uint8_t b : chain.label_samples[s]) labels.push_back(static_cast<int>(b));
            j["c"] = labels;
        }
        out << j.dump() << '\n';
    }
}

void write_chain_jsonl(const LayeredGibbsChain& chain, std::ostream& out) {
    for (std::size_t s = 0; s < chain.samples.size(); ++s) {
        const auto& sample = chain.samples[s];
        Json rates = Json::array(), gamma = Json::array();
        for (const double r : sample.rates) rates.push_back(r);
        for (const double g : sample.gamma) gamma.push_back(g);
        Json j{{"rates", rates}, {"gamma", gamma}};
        if (s < chain.label_samples.size()) {
            Json labels = Json::array();
            for (const std::uint8_t b : chain.label_samples[s]) labels.push_back(static_cast<int>(b));
            j["c"] = labels;
        }
        out << j.dump() << '\n';
    }
}

}  // namespace cpkit
