#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"

#include "cpkit/core_assignment.hpp"
#include "cpkit/graph.hpp"
#include "cpkit/hypothesis.hpp"
#include "cpkit/infer.hpp"
#include "cpkit/metrics.hpp"

namespace cpkit {

using Json = nlohmann::json;

// Run manifest: everything needed to byte-reproduce the run. Volatile
// information (wall clock) is deliberately excluded and logged to stderr by
// the CLI instead.
struct RunManifest {
    std::string subcommand;
    std::string input_path;   // empty for generate
    std::string input_hash;   // FNV-1a of the raw bytes
    Json params = Json::object();
    std::uint64_t seed = 0;
};

Json to_json(const RunManifest& manifest);

// Labels with original node names: {"nodes": [...], "labels": [...],
// "core": [...], "K": k}.
Json labels_json(const Graph& g, const CoreAssignment& c);

Json to_json(const TestResult& result, const Graph& g);
Json to_json(const ZScoreResult& result);
Json to_json(const SurpriseResult& result);
Json to_json(const EMResult& result, const Graph& g);
Json to_json(const DCSBMFit& fit, const Graph& g);
Json to_json(const OddsResult& result);

Json chain_summary_json(const GibbsChain& chain);
Json chain_summary_json(const LayeredGibbsChain& chain);

// One retained sample per line (JSON-lines) for external diagnostics.
void write_chain_jsonl(const GibbsChain& chain, std::ostream& out);
void write_chain_jsonl(const LayeredGibbsChain& chain, std::ostream& out);

// Non-finite doubles are not representable in JSON; they serialize as
// {"inf": sign} markers through this helper.
Json finite_or_marker(double v);

}  // namespace cpkit
