#include "socnet/baselines.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "socnet/errors.hpp"
#include "socnet/metrics.hpp"
#include "socnet/rng.hpp"

namespace socnet {

Graph erdos_renyi(int n, double p, std::uint64_t seed) {
    if (n < 1) throw DataError("graph needs at least one node");
    if (p < 0.0 || p > 1.0) throw DataError("edge probability out of [0,1]");
    Rng rng(derive_seed(seed, 0xe2));
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.next_bernoulli(p)) edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

Graph barabasi_albert(int n, int m, std::uint64_t seed) {
    if (m < 1 || m >= n) throw DataError("preferential attachment needs 1 <= m < n");
    Rng rng(derive_seed(seed, 0xba));
    std::vector<std::pair<int, int>> edges;
    std::vector<int> urn; // each node appears once per unit of degree
    for (int j = 0; j < m; ++j) {
        edges.emplace_back(j, m);
        urn.push_back(j);
        urn.push_back(m);
    }
    for (int v = m + 1; v < n; ++v) {
        std::set<int> targets;
        while (static_cast<int>(targets.size()) < m)
            targets.insert(urn[static_cast<std::size_t>(rng.next_below(urn.size()))]);
        for (int t : targets) {
            edges.emplace_back(t, v);
            urn.push_back(t);
            urn.push_back(v);
        }
    }
    return Graph::from_edges(n, edges);
}

Graph watts_strogatz(int n, int k, double p, std::uint64_t seed) {
    if (k < 2 || k % 2 != 0 || k >= n) throw DataError("ring lattice needs even k with 2 <= k < n");
    if (p < 0.0 || p > 1.0) throw DataError("rewiring probability out of [0,1]");
    Rng rng(derive_seed(seed, 0x35));
    std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
    auto link = [&](int a, int b) {
        adj[static_cast<std::size_t>(a)].insert(b);
        adj[static_cast<std::size_t>(b)].insert(a);
    };
    auto unlink = [&](int a, int b) {
        adj[static_cast<std::size_t>(a)].erase(b);
        adj[static_cast<std::size_t>(b)].erase(a);
    };
    for (int d = 1; d <= k / 2; ++d)
        for (int i = 0; i < n; ++i) link(i, (i + d) % n);
    for (int d = 1; d <= k / 2; ++d)
        for (int i = 0; i < n; ++i) {
            if (!rng.next_bernoulli(p)) continue;
            if (static_cast<int>(adj[static_cast<std::size_t>(i)].size()) >= n - 1) continue;
            int w;
            do {
                w = static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)));
            } while (w == i || adj[static_cast<std::size_t>(i)].count(w));
            unlink(i, (i + d) % n);
            link(i, w);
        }
    std::vector<std::pair<int, int>> edges;
    for (int i = 0; i < n; ++i)
        for (int j : adj[static_cast<std::size_t>(i)])
            if (i < j) edges.emplace_back(i, j);
    return Graph::from_edges(n, edges);
}

double fit_er_p(const std::vector<double>& ref_densities) {
    if (ref_densities.empty()) throw DataError("no reference densities to fit");
    double sum = 0.0;
    for (double d : ref_densities) sum += d;
    return sum / static_cast<double>(ref_densities.size());
}

int fit_ba_m(int n, double ref_density) {
    if (n < 2) throw DataError("graph too small to fit");
    int best_m = 1;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int m = 1; m < n; ++m) {
        double density = 2.0 * m * (n - m) / (static_cast<double>(n) * (n - 1));
        double gap = std::fabs(density - ref_density);
        if (gap < best_gap) {
            best_gap = gap;
            best_m = m;
        }
    }
    return best_m;
}

WsFit fit_ws(int n, double ref_density, double ref_clustering, int trials_per_p, std::uint64_t seed) {
    if (n < 4) throw DataError("graph too small to fit");
    if (trials_per_p < 1) throw DataError("need at least one trial per sweep point");
    WsFit fit;
    double best_gap = std::numeric_limits<double>::infinity();
    for (int k = 2; k < n; k += 2) {
        double gap = std::fabs(static_cast<double>(k) / (n - 1) - ref_density);
        if (gap < best_gap) {
            best_gap = gap;
            fit.k = k;
        }
    }
    best_gap = std::numeric_limits<double>::infinity();
    for (int step = 1; step <= 50; ++step) {
        double p = step / 100.0;
        double mean = 0.0;
        for (int t = 0; t < trials_per_p; ++t) {
            auto g = watts_strogatz(n, fit.k, p, derive_seed(seed, static_cast<std::uint64_t>(step) * 1000 + t));
            mean += avg_clustering(g);
        }
        mean /= trials_per_p;
        double gap = std::fabs(mean - ref_clustering);
        if (gap < best_gap) {
            best_gap = gap;
            fit.p = p;
            fit.mean_clustering = mean;
        }
    }
    return fit;
}

} // namespace socnet
