#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "cpkit/graph.hpp"

namespace cpkit {

struct LoadResult {
    Graph graph;
    BuildStats stats;
};

// Edge-list format: one edge per line, two whitespace- or comma-separated
// tokens; '#' starts a comment line; node labels are arbitrary strings,
// densified to 0..n-1 in first-seen order (mapping kept as node names).
// Self-loops and duplicate edges are dropped (counted in stats).
// Throws ParseError (with line number) on malformed lines or when the input
// contains no edges at all.
LoadResult load_edge_list(std::istream& in, const std::string& origin = "<stream>");
LoadResult load_edge_list_file(const std::string& path);

// Writes edges as "<name_i> <name_j>" with i < j in dense-index order.
void save_edge_list(const Graph& g, std::ostream& out);
void save_edge_list_file(const Graph& g, const std::string& path);

// FNV-1a over raw file bytes, hex-encoded; recorded in run manifests.
std::string file_hash_hex(const std::string& path);

}  // namespace cpkit
