#include "socnet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <fstream>

#include "socnet/errors.hpp"

namespace socnet {

double density(const Graph& g) {
    if (g.node_count() < 2) throw DataError("density undefined for fewer than 2 nodes");
    return 2.0 * g.edge_count() / (static_cast<double>(g.node_count()) * (g.node_count() - 1));
}

double avg_clustering(const Graph& g) {
    if (g.node_count() < 1) throw DataError("clustering undefined for empty graph");
    double total = 0.0;
    for (int v = 0; v < g.node_count(); ++v) {
        const auto& nbrs = g.neighbors(v);
        int d = static_cast<int>(nbrs.size());
        if (d < 2) continue;
        int links = 0;
        for (std::size_t a = 0; a < nbrs.size(); ++a)
            for (std::size_t b = a + 1; b < nbrs.size(); ++b)
                if (g.has_edge(nbrs[a], nbrs[b])) ++links;
        total += 2.0 * links / (static_cast<double>(d) * (d - 1));
    }
    return total / g.node_count();
}

std::vector<int> largest_component(const Graph& g) {
    std::vector<int> seen(static_cast<std::size_t>(g.node_count()), 0);
    std::vector<int> best;
    for (int start = 0; start < g.node_count(); ++start) {
        if (seen[static_cast<std::size_t>(start)]) continue;
        std::vector<int> comp;
        std::deque<int> queue{start};
        seen[static_cast<std::size_t>(start)] = 1;
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            comp.push_back(v);
            for (int w : g.neighbors(v))
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    queue.push_back(w);
                }
        }
        // strict inequality keeps the earliest (smallest min-id) on ties
        if (comp.size() > best.size()) best = std::move(comp);
    }
    std::sort(best.begin(), best.end());
    return best;
}

double lcc_fraction(const Graph& g) {
    if (g.node_count() < 1) throw DataError("lcc fraction undefined for empty graph");
    return static_cast<double>(largest_component(g).size()) / g.node_count();
}

double avg_shortest_path_norm(const Graph& g) {
    auto lcc = largest_component(g);
    int m = static_cast<int>(lcc.size());
    if (m < 2) throw DataError("average shortest path undefined: largest component has fewer than 2 nodes");
    std::vector<int> in_lcc(static_cast<std::size_t>(g.node_count()), 0);
    for (int v : lcc) in_lcc[static_cast<std::size_t>(v)] = 1;
    double total = 0.0;
    std::vector<int> dist(static_cast<std::size_t>(g.node_count()));
    for (int src : lcc) {
        std::fill(dist.begin(), dist.end(), -1);
        dist[static_cast<std::size_t>(src)] = 0;
        std::deque<int> queue{src};
        while (!queue.empty()) {
            int v = queue.front();
            queue.pop_front();
            for (int w : g.neighbors(v))
                if (in_lcc[static_cast<std::size_t>(w)] && dist[static_cast<std::size_t>(w)] < 0) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(v)] + 1;
                    queue.push_back(w);
                }
        }
        for (int v : lcc)
            if (v > src) total += dist[static_cast<std::size_t>(v)];
    }
    double pairs = static_cast<double>(m) * (m - 1) / 2.0;
    return (total / pairs) / std::log(static_cast<double>(m));
}

double modularity(const Graph& g, const std::vector<int>& community) {
    if (g.edge_count() == 0) throw DataError("modularity undefined for edgeless graph");
    if (static_cast<int>(community.size()) != g.node_count())
        throw DataError("community assignment size mismatch");
    int cmax = 0;
    for (int c : community) cmax = std::max(cmax, c);
    std::vector<double> internal2(static_cast<std::size_t>(cmax) + 1, 0.0); // ordered internal pairs
    std::vector<double> deg_sum(static_cast<std::size_t>(cmax) + 1, 0.0);
    for (auto [u, v] : g.edges())
        if (community[static_cast<std::size_t>(u)] == community[static_cast<std::size_t>(v)])
            internal2[static_cast<std::size_t>(community[static_cast<std::size_t>(u)])] += 2.0;
    for (int v = 0; v < g.node_count(); ++v)
        deg_sum[static_cast<std::size_t>(community[static_cast<std::size_t>(v)])] += g.degree(v);
    double m2 = 2.0 * g.edge_count();
    double q = 0.0;
    for (std::size_t c = 0; c < internal2.size(); ++c)
        q += internal2[c] / m2 - (deg_sum[c] / m2) * (deg_sum[c] / m2);
    return q;
}

double gini(const std::vector<double>& values) {
    if (values.empty()) throw DataError("gini undefined for empty input");
    for (double v : values)
        if (v < 0.0) throw DataError("gini requires non-negative values");
    double mean = 0.0;
    for (double v : values) mean += v;
    mean /= values.size();
    if (mean == 0.0) return 0.0;
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end());
    // sum_ij |x_i - x_j| via prefix sums over the sorted vector
    double abs_sum = 0.0, prefix = 0.0;
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        abs_sum += 2.0 * (static_cast<double>(i) * sorted[i] - prefix);
        prefix += sorted[i];
    }
    double n = static_cast<double>(sorted.size());
    return abs_sum / (2.0 * n * n * mean);
}

std::vector<double> normalized_degrees(const Graph& g) {
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(g.node_count()));
    for (int v = 0; v < g.node_count(); ++v)
        out.push_back(static_cast<double>(g.degree(v)) / g.node_count());
    return out;
}

DegreeHistogram pooled_degree_histogram(const std::vector<Graph>& graphs) {
    DegreeHistogram h;
    long long total = 0;
    for (const auto& g : graphs) {
        for (double nd : normalized_degrees(g)) {
            int bin = std::min(19, static_cast<int>(nd * 20.0));
            h.mass[static_cast<std::size_t>(bin)] += 1.0;
            ++total;
        }
    }
    if (total > 0)
        for (auto& m : h.mass) m /= static_cast<double>(total);
    return h;
}

void write_histogram_csv(const DegreeHistogram& h, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write histogram: " + path);
    char buf[64];
    for (int b = 0; b < 20; ++b) {
        std::snprintf(buf, sizeof buf, "%.2f,%.17g\n", b * 0.05, h.mass[static_cast<std::size_t>(b)]);
        out << buf;
    }
}

MetricVector metric_vector(const Graph& g, std::uint64_t seed) {
    MetricVector m;
    m.density = density(g);
    m.avg_clustering = avg_clustering(g);
    m.lcc_fraction = lcc_fraction(g);
    m.avg_sp_norm = avg_shortest_path_norm(g);
    m.modularity = louvain(g, seed).q;
    std::vector<double> degs;
    degs.reserve(static_cast<std::size_t>(g.node_count()));
    for (int v = 0; v < g.node_count(); ++v) degs.push_back(g.degree(v));
    m.degree_gini = gini(degs);
    return m;
}

} // namespace socnet
