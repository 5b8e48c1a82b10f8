#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>
#include <vector>

#include "socnet/errors.hpp"
#include "socnet/metrics.hpp"
#include "socnet/rng.hpp"

namespace socnet {

namespace {

// Working graph for the aggregation phases. adj[i][j] holds the edge weight;
// self[i] holds twice the collapsed internal weight so that strengths and
// total weight stay consistent across levels.
struct LevelGraph {
    std::vector<std::unordered_map<int, double>> adj;
    std::vector<double> self;
    std::vector<double> strength; // sum of incident weights + self
    double m2 = 0.0;              // total strength

    int size() const { return static_cast<int>(adj.size()); }

    void finalize() {
        strength.assign(adj.size(), 0.0);
        m2 = 0.0;
        for (std::size_t i = 0; i < adj.size(); ++i) {
            double s = self[i];
            for (const auto& [j, w] : adj[i]) s += w;
            strength[i] = s;
            m2 += s;
        }
    }
};

// One pass of local moving. Returns true when any node changed community.
bool local_moving(const LevelGraph& g, std::vector<int>& community, Rng& rng) {
    const int n = g.size();
    std::vector<double> comm_strength(n, 0.0);
    for (int i = 0; i < n; ++i) comm_strength[community[i]] += g.strength[i];

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    rng.shuffle(order);

    bool improved_any = false;
    bool moved = true;
    int guard = 0;
    while (moved && guard++ < 200) {
        moved = false;
        for (int idx = 0; idx < n; ++idx) {
            int i = order[idx];
            int old_c = community[i];
            comm_strength[old_c] -= g.strength[i];

            // weight from i into each neighboring community
            std::unordered_map<int, double> into;
            into[old_c] += 0.0;
            for (const auto& [j, w] : g.adj[i]) into[community[j]] += w;

            int best_c = old_c;
            double best_gain = into[old_c] - g.strength[i] * comm_strength[old_c] / g.m2;
            for (const auto& [c, w] : into) {
                if (c == old_c) continue;
                double gain = w - g.strength[i] * comm_strength[c] / g.m2;
                if (gain > best_gain + 1e-12 || (std::fabs(gain - best_gain) <= 1e-12 && c < best_c)) {
                    best_gain = gain;
                    best_c = c;
                }
            }
            community[i] = best_c;
            comm_strength[best_c] += g.strength[i];
            if (best_c != old_c) {
                moved = true;
                improved_any = true;
            }
        }
    }
    return improved_any;
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<int>& community, std::vector<int>& renumber) {
    renumber.assign(community.size(), -1);
    int next = 0;
    for (std::size_t i = 0; i < community.size(); ++i) { // first-appearance order

        if (renumber[community[i]] == -1) renumber[community[i]] = next++;
    }
    LevelGraph out;
    out.adj.assign(next, {});
    out.self.assign(next, 0.0);
    for (int i = 0; i < g.size(); ++i) {
        int ci = renumber[community[i]];
        out.self[ci] += g.self[i];
        for (const auto& [j, w] : g.adj[i]) {
            int cj = renumber[community[j]];
            if (ci == cj)
                out.self[ci] += w; // both directions accumulate: 2x internal
            else
                out.adj[ci][cj] += w;
        }
    }
    out.finalize();
    return out;
}

} // namespace

LouvainResult louvain(const Graph& g, std::uint64_t seed) {
    if (g.edge_count() == 0) throw DataError("louvain undefined for edgeless graph");
    Rng rng(derive_seed(seed, 0x10ca1));

    LevelGraph level;
    level.adj.assign(static_cast<std::size_t>(g.node_count()), {});
    level.self.assign(static_cast<std::size_t>(g.node_count()), 0.0);
    for (auto [u, v] : g.edges()) {
        level.adj[static_cast<std::size_t>(u)][v] = 1.0;
        level.adj[static_cast<std::size_t>(v)][u] = 1.0;
    }
    level.finalize();

    // membership of original nodes in the current level's nodes
    std::vector<int> node_of(static_cast<std::size_t>(g.node_count()));
    std::iota(node_of.begin(), node_of.end(), 0);

    for (int depth = 0; depth < 64; ++depth) {
        std::vector<int> community(static_cast<std::size_t>(level.size()));
        std::iota(community.begin(), community.end(), 0);
        if (!local_moving(level, community, rng)) break;
        std::vector<int> renumber;
        level = aggregate(level, community, renumber);
        for (auto& v : node_of) v = renumber[community[static_cast<std::size_t>(v)]];
        if (level.size() <= 1) break;
    }

    LouvainResult result;
    result.community = node_of;
    result.q = modularity(g, result.community);
    if (result.q < 0.0) { // never report worse than the trivial partition
        std::fill(result.community.begin(), result.community.end(), 0);
        result.q = modularity(g, result.community);
    }
    return result;
}

} // namespace socnet
