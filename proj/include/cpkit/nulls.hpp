#pragma once

#include <cstdint>
#include <string>

#include "cpkit/graph.hpp"
#include "cpkit/rng.hpp"

namespace cpkit {

enum class NullKind { RewirePreserveM, RewirePreserveDegrees, ParametricEr };

std::string to_string(NullKind kind);

// Null-model replicate descriptor carried into every TestResult.
struct NullSpec {
    NullKind kind = NullKind::RewirePreserveM;
    int replicates = 199;               // B
    std::uint64_t seed = 0;
    std::int64_t swap_count = 0;        // degree-preserving only; 0 -> 10*m default
};

// Uniform simple graph with the same n and m (m distinct pairs sampled
// without replacement); degrees are generally not preserved.
Graph rewire_preserve_m(const Graph& g, Rng& rng);

// Double-edge-swap randomization; the degree sequence is preserved exactly.
// `n_swaps` swap attempts are made (invalid proposals rejected).
Graph rewire_preserve_degrees(const Graph& g, std::int64_t n_swaps, Rng& rng);

// Erdos-Renyi draw with p = m / C(n,2) estimated from g.
Graph parametric_er(const Graph& g, Rng& rng);

// Applies the spec'd null (child RNG per replicate index is the caller's
// job; this draws replicate-independent from the passed rng).
Graph draw_null_replicate(const Graph& g, const NullSpec& null, Rng& rng);

}  // namespace cpkit
