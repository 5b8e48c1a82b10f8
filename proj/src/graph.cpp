#include "socnet/graph.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "socnet/errors.hpp"

namespace socnet {

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    if (n < 0) throw DataError("graph node count must be non-negative");
    Graph g;
    g.n_ = n;
    g.edges_.reserve(edges.size());
    for (auto [u, v] : edges) {
        if (u < 0 || v < 0 || u >= n || v >= n)
            throw DataError("edge endpoint out of range: (" + std::to_string(u) + ", " + std::to_string(v) + ")");
        if (u == v)
            throw DataError("self-loop rejected at node " + std::to_string(u));
        if (u > v) std::swap(u, v);
        g.edges_.emplace_back(u, v);
    }
    std::sort(g.edges_.begin(), g.edges_.end());
    g.edges_.erase(std::unique(g.edges_.begin(), g.edges_.end()), g.edges_.end());
    g.adj_.assign(static_cast<std::size_t>(n), {});
    for (auto [u, v] : g.edges_) {
        g.adj_[static_cast<std::size_t>(u)].push_back(v);
        g.adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    for (auto& nbrs : g.adj_) std::sort(nbrs.begin(), nbrs.end());
    return g;
}

bool Graph::has_edge(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
    const auto& a = adj_[static_cast<std::size_t>(u)];
    const auto& b = adj_[static_cast<std::size_t>(v)];
    const auto& probe = a.size() <= b.size() ? a : b;
    int target = a.size() <= b.size() ? v : u;
    return std::binary_search(probe.begin(), probe.end(), target);
}

namespace {

struct ParsedLine {
    std::vector<std::string> tokens;
    int lineno;
};

// Non-comment, non-blank lines tokenized on whitespace. A "# nodes: K"
// directive, when present, is returned through node_directive.
std::vector<ParsedLine> read_lines(const std::string& path, std::int64_t* node_directive) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open edge list: " + path);
    std::vector<ParsedLine> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            std::istringstream hs(line.substr(first + 1));
            std::string word;
            if (node_directive && hs >> word && word == "nodes:") {
                std::int64_t k;
                if (hs >> k && k >= 0) *node_directive = k;
            }
            continue;
        }
        ParsedLine pl;
        pl.lineno = lineno;
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) pl.tokens.push_back(tok);
        out.push_back(std::move(pl));
    }
    return out;
}

std::int64_t parse_label(const std::string& tok, const std::string& path, int lineno) {
    try {
        std::size_t pos = 0;
        std::int64_t v = std::stoll(tok, &pos);
        if (pos != tok.size() || v < 0) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw DataError(path + ":" + std::to_string(lineno) + ": bad node label '" + tok + "'");
    }
}

LoadedGraph densify(std::vector<std::pair<std::int64_t, std::int64_t>> raw, std::int64_t node_directive,
                    const std::string& path) {
    LoadedGraph out;
    std::vector<std::pair<int, int>> dense;
    dense.reserve(raw.size());
    if (node_directive >= 0) {
        // labels are taken verbatim so persona ids survive a round-trip
        for (auto [u, v] : raw) {
            if (u >= node_directive || v >= node_directive)
                throw DataError(path + ": label exceeds declared node count " + std::to_string(node_directive));
            dense.emplace_back(static_cast<int>(u), static_cast<int>(v));
        }
        out.original_label.resize(static_cast<std::size_t>(node_directive));
        for (std::int64_t i = 0; i < node_directive; ++i)
            out.original_label[static_cast<std::size_t>(i)] = i;
        out.graph = Graph::from_edges(static_cast<int>(node_directive), dense);
        return out;
    }
    std::map<std::int64_t, int> remap; // sorted label order
    for (auto [u, v] : raw) {
        remap.emplace(u, 0);
        remap.emplace(v, 0);
    }
    out.original_label.reserve(remap.size());
    int next = 0;
    for (auto& [label, id] : remap) {
        id = next++;
        out.original_label.push_back(label);
    }
    for (auto [u, v] : raw) dense.emplace_back(remap[u], remap[v]);
    out.graph = Graph::from_edges(next, dense);
    return out;
}

} // namespace

LoadedGraph load_edge_list(const std::string& path) {
    std::int64_t node_directive = -1;
    auto lines = read_lines(path, &node_directive);
    std::vector<std::pair<std::int64_t, std::int64_t>> raw;
    raw.reserve(lines.size());
    for (const auto& pl : lines) {
        if (pl.tokens.size() != 2)
            throw DataError(path + ":" + std::to_string(pl.lineno) + ": expected 2 tokens, got " +
                            std::to_string(pl.tokens.size()));
        std::int64_t u = parse_label(pl.tokens[0], path, pl.lineno);
        std::int64_t v = parse_label(pl.tokens[1], path, pl.lineno);
        if (u == v)
            throw DataError(path + ":" + std::to_string(pl.lineno) + ": self-loop on node " + std::to_string(u));
        raw.emplace_back(u, v);
    }
    return densify(std::move(raw), node_directive, path);
}

WeightedEdgeList load_weighted_edge_list(const std::string& path) {
    auto lines = read_lines(path, nullptr);
    WeightedEdgeList out;
    out.reserve(lines.size());
    for (const auto& pl : lines) {
        if (pl.tokens.size() != 3)
            throw DataError(path + ":" + std::to_string(pl.lineno) + ": expected 3 tokens, got " +
                            std::to_string(pl.tokens.size()));
        WeightedEdge e;
        e.u = parse_label(pl.tokens[0], path, pl.lineno);
        e.v = parse_label(pl.tokens[1], path, pl.lineno);
        try {
            std::size_t pos = 0;
            e.w = std::stod(pl.tokens[2], &pos);
            if (pos != pl.tokens[2].size()) throw std::invalid_argument(pl.tokens[2]);
        } catch (const std::exception&) {
            throw DataError(path + ":" + std::to_string(pl.lineno) + ": bad weight '" + pl.tokens[2] + "'");
        }
        out.push_back(e);
    }
    return out;
}

LoadedGraph threshold_positive(const WeightedEdgeList& list) {
    std::vector<std::pair<std::int64_t, std::int64_t>> raw;
    raw.reserve(list.size());
    for (const auto& e : list) {
        if (e.w <= 0.0) continue;
        if (e.u == e.v)
            throw DataError("positive-weight self-loop on node " + std::to_string(e.u));
        raw.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    }
    return densify(std::move(raw), -1, "<weighted edge list>");
}

void save_edge_list(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write edge list: " + path);
    out << "# nodes: " << g.node_count() << "\n";
    for (auto [u, v] : g.edges()) out << u << " " << v << "\n";
    if (!out) throw DataError("write failed: " + path);
}

} // namespace socnet
