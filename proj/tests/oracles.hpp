#pragma once

// Independent reference implementations used only to freeze or cross-check
// expected test values. Everything here is written the slow, obvious way and
// shares no code path with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "cpkit/core_assignment.hpp"
#include "cpkit/graph.hpp"

namespace oracles {

using cpkit::CoreAssignment;
using cpkit::Graph;
using cpkit::NodeId;

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// All-pairs shortest paths, Floyd-Warshall on a dense matrix.
inline std::vector<std::vector<int>> floyd_warshall(const Graph& g) {
    const int n = g.num_nodes();
    std::vector<std::vector<int>> d(n, std::vector<int>(n, kInf));
    for (int i = 0; i < n; ++i) d[i][i] = 0;
    for (NodeId v = 0; v < n; ++v) {
        for (const NodeId w : g.neighbors(v)) d[v][w] = 1;
    }
    for (int k = 0; k < n; ++k) {
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
            }
        }
    }
    return d;
}

// Iterative deletion k-core, the naive way.
inline std::vector<NodeId> naive_k_core(const Graph& g, int k) {
    const int n = g.num_nodes();
    std::vector<bool> alive(n, true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (NodeId v = 0; v < n; ++v) {
            if (!alive[v]) continue;
            int deg = 0;
            for (const NodeId w : g.neighbors(v)) deg += alive[w] ? 1 : 0;
            if (deg < k) {
                alive[v] = false;
                changed = true;
            }
        }
    }
    std::vector<NodeId> out;
    for (NodeId v = 0; v < n; ++v) {
        if (alive[v]) out.push_back(v);
    }
    return out;
}

// Pearson correlation between the adjacency and ideal-pattern indicator over
// all unordered pairs, via a flat loop.
inline double pearson_rho(const Graph& g, const CoreAssignment& c) {
    const int n = g.num_nodes();
    std::vector<double> a, d;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            a.push_back(g.has_edge(i, j) ? 1.0 : 0.0);
            d.push_back(c.is_core(i) || c.is_core(j) ? 1.0 : 0.0);
        }
    }
    const double len = static_cast<double>(a.size());
    double ma = 0.0, md = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        ma += a[t];
        md += d[t];
    }
    ma /= len;
    md /= len;
    double sad = 0.0, saa = 0.0, sdd = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t) {
        sad += (a[t] - ma) * (d[t] - md);
        saa += (a[t] - ma) * (a[t] - ma);
        sdd += (d[t] - md) * (d[t] - md);
    }
    return sad / std::sqrt(saa * sdd);
}

// Brusco Z by direct pair enumeration.
inline std::int64_t brusco_direct(const Graph& g, const CoreAssignment& c) {
    std::int64_t z = 0;
    for (NodeId i = 0; i < g.num_nodes(); ++i) {
        for (NodeId j = i + 1; j < g.num_nodes(); ++j) {
            const bool edge = g.has_edge(i, j);
            if (c.is_core(i) && c.is_core(j) && edge) ++z;
            if (!c.is_core(i) && !c.is_core(j) && !edge) ++z;
        }
    }
    return z;
}

// Direct density-contrast objective by pair enumeration.
inline double cucuringu_direct(const Graph& g, const CoreAssignment& c, double beta, double gamma) {
    const int n = g.num_nodes();
    std::int64_t mcc = 0, mcp = 0, mpp = 0, k = 0;
    for (NodeId v = 0; v < n; ++v) k += c.is_core(v) ? 1 : 0;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (!g.has_edge(i, j)) continue;
            const int cores = (c.is_core(i) ? 1 : 0) + (c.is_core(j) ? 1 : 0);
            if (cores == 2)
                ++mcc;
            else if (cores == 1)
                ++mcp;
            else
                ++mpp;
        }
    }
    const double ncc = static_cast<double>(k) * (k - 1) / 2.0;
    const double ncp = static_cast<double>(k) * (n - k);
    const double npp = static_cast<double>(n - k) * (n - k - 1) / 2.0;
    return mcc / ncc + mcp / ncp - mpp / npp - gamma * std::abs(static_cast<double>(k) / n - beta);
}

// Exhaustive maximization of an arbitrary labeling score over all 2^n
// assignments with kmin <= K <= kmax. Ties resolve to the first (lowest
// mask) optimum. Returns (best mask, best value).
inline std::pair<std::uint32_t, double> exhaustive_best(
    const Graph& g, int kmin, int kmax,
    const std::function<double(const CoreAssignment&)>& score) {
    const int n = g.num_nodes();
    std::uint32_t best_mask = 0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        const int k = std::popcount(mask);
        if (k < kmin || k > kmax) continue;
        CoreAssignment c = CoreAssignment::all_periphery(n);
        for (int v = 0; v < n; ++v) c.labels[v] = (mask >> v) & 1;
        const double val = score(c);
        if (val > best) {
            best = val;
            best_mask = mask;
        }
    }
    return {best_mask, best};
}

inline CoreAssignment mask_to_assignment(int n, std::uint32_t mask) {
    CoreAssignment c = CoreAssignment::all_periphery(n);
    for (int v = 0; v < n; ++v) c.labels[v] = (mask >> v) & 1;
    return c;
}

// Exact first four raw moments of Beta(a, b).
struct BetaMoments {
    double mean, var, mu4;
};

inline BetaMoments beta_moments(double a, double b) {
    const auto raw = [&](int k) {
        double out = 1.0;
        for (int r = 0; r < k; ++r) out *= (a + r) / (a + b + r);
        return out;
    };
    const double m1 = raw(1), m2 = raw(2), m3 = raw(3), m4 = raw(4);
    BetaMoments mo;
    mo.mean = m1;
    mo.var = m2 - m1 * m1;
    mo.mu4 = m4 - 4 * m1 * m3 + 6 * m1 * m1 * m2 - 3 * m1 * m1 * m1 * m1;
    return mo;
}

}  // namespace oracles
