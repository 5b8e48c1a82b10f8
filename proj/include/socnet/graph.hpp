#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace socnet {

/// Simple undirected graph over dense node ids 0..N-1.
/// No self-loops, no parallel edges. Immutable once built.
class Graph {
public:
    Graph() = default;

    /// Build from an edge list over nodes [0, n). Duplicate and reversed
    /// duplicates collapse to one edge; self-loops are rejected.
    static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    /// Canonical edge list: u < v, sorted lexicographically.
    const std::vector<std::pair<int, int>>& edges() const { return edges_; }

    const std::vector<int>& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
    int degree(int v) const { return static_cast<int>(adj_[static_cast<std::size_t>(v)].size()); }
    bool has_edge(int u, int v) const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adj_; // sorted neighbor lists
};

/// Weighted edge records as read from file, kept verbatim.
struct WeightedEdge {
    std::int64_t u;
    std::int64_t v;
    double w;
};

using WeightedEdgeList = std::vector<WeightedEdge>;

/// Result of ingesting an edge-list file: dense graph plus the original
/// node labels (original_label[i] is the file label of node i).
struct LoadedGraph {
    Graph graph;
    std::vector<std::int64_t> original_label;
};

/// Parse a plain two-column edge list. Lines starting with '#' and blank
/// lines are ignored. An optional "# nodes: K" directive fixes the node
/// count, in which case labels must already be dense in [0, K). Without it,
/// labels are remapped to dense ids in sorted label order.
LoadedGraph load_edge_list(const std::string& path);

/// Parse a three-column weighted edge list (u v w), records kept verbatim.
WeightedEdgeList load_weighted_edge_list(const std::string& path);

/// Keep edges with strictly positive weight, collapse duplicates, and remap
/// the surviving endpoints to dense ids.
LoadedGraph threshold_positive(const WeightedEdgeList& list);

/// Write the canonical edge list: "# nodes: N" then "u v" per edge, u < v,
/// sorted, newline-terminated. load_edge_list round-trips this format.
void save_edge_list(const Graph& g, const std::string& path);

} // namespace socnet
