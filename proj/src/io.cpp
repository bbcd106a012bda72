#include "cpkit/io.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "cpkit/errors.hpp"

namespace cpkit {

LoadResult load_edge_list(std::istream& in, const std::string& origin) {
    std::unordered_map<std::string, NodeId> ids;
    std::vector<std::string> names;
    std::vector<Edge> edges;

    const auto intern = [&](const std::string& tok) {
        const auto [it, inserted] = ids.emplace(tok, static_cast<NodeId>(names.size()));
        if (inserted) names.push_back(tok);
        return it->second;
    };

    std::string line;
    std::int64_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        for (char& c : line) {
            if (c == ',' || c == '\t' || c == '\r') c = ' ';
        }
        std::istringstream ls(line);
        std::string a, b, extra;
        if (!(ls >> a)) continue;           // blank line
        if (a.front() == '#') continue;     // comment
        if (!(ls >> b) || (ls >> extra)) {
            throw ParseError(origin + ":" + std::to_string(line_no) +
                             ": expected two tokens per edge line");
        }
        edges.emplace_back(intern(a), intern(b));
    }
    if (edges.empty()) {
        throw ParseError(origin + ": no edges found");
    }

    LoadResult out;
    out.graph = Graph::from_edges(static_cast<NodeId>(names.size()), edges, &out.stats);
    out.graph.set_node_names(std::move(names));
    return out;
}

LoadResult load_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError(path + ": cannot open file");
    return load_edge_list(in, path);
}

void save_edge_list(const Graph& g, std::ostream& out) {
    for (const auto& [a, b] : g.edge_list()) {
        out << g.name_of(a) << ' ' << g.name_of(b) << '\n';
    }
}

void save_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw ParseError(path + ": cannot open file for writing");
    save_edge_list(g, out);
}

std::string file_hash_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path + ": cannot open file");
    std::uint64_t h = 0xcbf29ce484222325ULL;
    char buf[4096];
    while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
        for (std::streamsize i = 0; i < in.gcount(); ++i) {
            h ^= static_cast<std::uint8_t>(buf[i]);
            h *= 0x100000001b3ULL;
        }
        if (!in) break;
    }
    char hex[17];
    std::snprintf(hex, sizeof(hex), "%016llx", static_cast<unsigned long long>(h));
    return std::string(hex);
}

}  // namespace cpkit
