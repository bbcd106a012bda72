#include "cpkit/generate.hpp"

#include <algorithm>
#include <cmath>

#include "cpkit/errors.hpp"

namespace cpkit {

namespace {

// One uniform per pair, lexicographic order; the probability callback must
// be free of side effects.
template <class ProbFn>
Graph sample_pairwise(NodeId n, Rng& rng, ProbFn&& prob) {
    std::vector<Edge> edges;
    for (NodeId i = 0; i < n; ++i) {
        for (NodeId j = i + 1; j < n; ++j) {
            if (rng.uniform01() < prob(i, j)) edges.emplace_back(i, j);
        }
    }
    return Graph::from_edges(n, edges);
}

void check_probability(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) throw InvalidProbabilityError(std::string(what) + " out of [0,1]");
}

// Largest two values of a range (second may equal first for length >= 2).
std::pair<double, double> top_two(std::span<const double> xs) {
    double a = -1.0, b = -1.0;
    for (const double x : xs) {
        if (x > a) {
            b = a;
            a = x;
        } else if (x > b) {
            b = x;
        }
    }
    return {a, b};
}

}  // namespace

Graph generate_er(NodeId n, double p, Rng rng) {
    check_probability(p, "edge probability");
    return sample_pairwise(n, rng, [p](NodeId, NodeId) { return p; });
}

Graph generate_chung_lu(std::span<const double> theta, Rng rng) {
    for (const double t : theta) {
        if (!(t >= 0.0)) throw InvalidProbabilityError("weights must be non-negative");
    }
    if (theta.size() >= 2) {
        const auto [a, b] = top_two(theta);
        if (a * b > 1.0 + 1e-12)
            throw InvalidProbabilityError("weight product exceeds 1 for some pair");
    }
    return sample_pairwise(static_cast<NodeId>(theta.size()), rng,
                           [&theta](NodeId i, NodeId j) { return theta[i] * theta[j]; });
}

PlantedGraph generate_sbm2(NodeId n1, NodeId n2, const BlockParams& params, bool require_cp, Rng rng) {
    if (n1 < 0 || n2 < 0 || n1 + n2 < 1) throw PreconditionError("invalid block sizes");
    check_probability(params.p11, "p11");
    check_probability(params.p12, "p12");
    check_probability(params.p22, "p22");
    if (require_cp && !params.cp_ordered())
        throw OrderingViolationError("core-periphery ordering p11 >= p12 >= p22 violated");
    const NodeId n = n1 + n2;
    Graph g = sample_pairwise(n, rng, [&](NodeId i, NodeId j) {
        const int blocks = (i < n1 ? 1 : 0) + (j < n1 ? 1 : 0);
        return blocks == 2 ? params.p11 : blocks == 1 ? params.p12 : params.p22;
    });
    CoreAssignment planted = CoreAssignment::all_periphery(n);
    for (NodeId v = 0; v < n1; ++v) planted.labels[static_cast<std::size_t>(v)] = 1;
    return {std::move(g), std::move(planted)};
}

Graph generate_dcsbm(std::span<const double> theta, std::span<const int> labels,
                     const std::vector<std::vector<double>>& omega, Rng rng) {
    const NodeId n = static_cast<NodeId>(theta.size());
    if (labels.size() != theta.size()) throw PreconditionError("labels/theta size mismatch");
    const int blocks = static_cast<int>(omega.size());
    for (const auto& row : omega) {
        if (static_cast<int>(row.size()) != blocks) throw PreconditionError("omega must be square");
    }
    // Bound check per block pair using the two largest weights involved.
    std::vector<std::vector<double>> best(static_cast<std::size_t>(blocks));
    for (NodeId v = 0; v < n; ++v) {
        const int b = labels[static_cast<std::size_t>(v)];
        if (b < 0 || b >= blocks) throw PreconditionError("label out of range of omega");
        if (!(theta[static_cast<std::size_t>(v)] >= 0.0))
            throw InvalidProbabilityError("weights must be non-negative");
        best[static_cast<std::size_t>(b)].push_back(theta[static_cast<std::size_t>(v)]);
    }
    for (auto& xs : best) {
        std::sort(xs.begin(), xs.end(), std::greater<>());
        xs.resize(std::min<std::size_t>(xs.size(), 2));
    }
    for (int a = 0; a < blocks; ++a) {
        for (int b = a; b < blocks; ++b) {
            double hi = 0.0;
            if (a == b) {
                if (best[static_cast<std::size_t>(a)].size() >= 2)
                    hi = best[static_cast<std::size_t>(a)][0] * best[static_cast<std::size_t>(a)][1];
            } else if (!best[static_cast<std::size_t>(a)].empty() && !best[static_cast<std::size_t>(b)].empty()) {
                hi = best[static_cast<std::size_t>(a)][0] * best[static_cast<std::size_t>(b)][0];
            }
            if (hi * omega[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] > 1.0 + 1e-12)
                throw InvalidProbabilityError("theta_i * omega * theta_j exceeds 1 for some pair");
        }
    }
    return sample_pairwise(n, rng, [&](NodeId i, NodeId j) {
        return theta[i] * omega[static_cast<std::size_t>(labels[i])][static_cast<std::size_t>(labels[j])] * theta[j];
    });
}

Graph generate_sociability(std::span<const double> theta, Rng rng) {
    for (const double t : theta) {
        if (!(t >= 0.0)) throw InvalidProbabilityError("sociability must be non-negative");
    }
    return sample_pairwise(static_cast<NodeId>(theta.size()), rng, [&theta](NodeId i, NodeId j) {
        return 1.0 - std::exp(-2.0 * theta[i] * theta[j]);
    });
}

Graph generate_logistic(std::span<const double> theta, const std::vector<double>* kernel, Rng rng) {
    const NodeId n = static_cast<NodeId>(theta.size());
    if (kernel) {
        if (kernel->size() != theta.size() * theta.size())
            throw InvalidKernelError("kernel must be an n*n matrix");
        for (const double k : *kernel) {
            if (!(k > 0.0)) throw InvalidKernelError("kernel entries must be positive");
        }
    }
    return sample_pairwise(n, rng, [&](NodeId i, NodeId j) {
        const double e = std::exp(theta[i] + theta[j]);
        const double k = kernel ? (*kernel)[static_cast<std::size_t>(i) * theta.size() + static_cast<std::size_t>(j)] : 1.0;
        return e / (k + e);
    });
}

Graph generate_hybrid(const HybridParams& params, Rng rng) {
    const NodeId n = static_cast<NodeId>(params.community.size());
    if (params.coreness.size() != params.community.size())
        throw PreconditionError("community/coreness size mismatch");
    if (!(params.scale >= 0.0) || !(params.baseline >= 0.0) || params.scale + params.baseline > 1.0 + 1e-12)
        throw InvalidProbabilityError("need a, b >= 0 with a + b <= 1");
    for (const double c : params.coreness) {
        if (!(c >= 0.0 && c <= 1.0)) throw InvalidProbabilityError("coreness out of [0,1]");
    }
    return sample_pairwise(n, rng, [&](NodeId i, NodeId j) {
        const double ci = params.coreness[static_cast<std::size_t>(i)];
        const double cj = params.coreness[static_cast<std::size_t>(j)];
        const double same = params.community[static_cast<std::size_t>(i)] == params.community[static_cast<std::size_t>(j)] ? 1.0 : 0.0;
        return params.scale * same * (ci + cj - ci * cj) + params.baseline;
    });
}

}  // namespace cpkit
