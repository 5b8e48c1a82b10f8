#pragma once

// Random labeled-graph instances shared by the metric and homophily tests
// and the acceptance suite. Every instance carries the same data in both
// the oracle form (adjacency matrix) and the library form (Graph).

#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "socnet/graph.hpp"
#include "socnet/rng.hpp"

namespace testinst {

struct Instance {
    oracle::Inst inst;
    socnet::Graph graph;
    std::vector<std::string> labels;
    std::vector<int> ages;
};

inline Instance make_random(socnet::Rng& rng) {
    Instance out;
    int n = 2 + static_cast<int>(rng.next_below(11)); // 2..12
    int groups = 2 + static_cast<int>(rng.next_below(3)); // 2..4
    const double edge_ps[] = {0.15, 0.3, 0.6};
    double p = edge_ps[rng.next_below(3)];
    out.inst = oracle::Inst::empty(n);
    std::vector<std::pair<int, int>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (rng.next_bernoulli(p)) {
                edges.emplace_back(u, v);
                out.inst.add_edge(u, v);
            }
    out.graph = socnet::Graph::from_edges(n, edges);
    out.labels.resize(n);
    out.ages.resize(n);
    for (int i = 0; i < n; ++i) {
        out.labels[i] = "G" + std::to_string(rng.next_below(static_cast<std::uint64_t>(groups)));
        out.ages[i] = 18 + static_cast<int>(rng.next_below(63));
        out.inst.label[i] = out.labels[i];
        out.inst.age[i] = out.ages[i];
    }
    return out;
}

} // namespace testinst
