#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cpkit/graph.hpp"

namespace cpkit {

// Binary core/periphery labeling; 1 = core. The object every detector
// returns.
struct CoreAssignment {
    std::vector<std::uint8_t> labels;

    NodeId size() const { return static_cast<NodeId>(labels.size()); }

    NodeId core_size() const {
        NodeId k = 0;
        for (const std::uint8_t b : labels) k += b;
        return k;
    }

    bool is_core(NodeId v) const { return labels[static_cast<std::size_t>(v)] != 0; }

    std::vector<NodeId> core_nodes() const {
        std::vector<NodeId> out;
        for (NodeId v = 0; v < size(); ++v) {
            if (labels[static_cast<std::size_t>(v)]) out.push_back(v);
        }
        return out;
    }

    static CoreAssignment all_periphery(NodeId n) {
        return CoreAssignment{std::vector<std::uint8_t>(static_cast<std::size_t>(n), 0)};
    }

    static CoreAssignment from_core_set(NodeId n, std::span<const NodeId> core) {
        CoreAssignment c = all_periphery(n);
        for (const NodeId v : core) c.labels[static_cast<std::size_t>(v)] = 1;
        return c;
    }

    bool operator==(const CoreAssignment&) const = default;
};

}  // namespace cpkit
