#pragma once

// Brute-force reference evaluators used only by tests. Each routine
// translates the defining formula directly over an adjacency matrix,
// independent of the library's data structures and algorithms. Values are
// compared against the production implementations at tight tolerances, so
// keep these dumb and obvious.

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace oracle {

struct Inst {
    int n = 0;
    std::vector<std::vector<int>> A; // dense 0/1 symmetric, zero diagonal
    std::vector<std::string> label;  // group label per node (one variable)
    std::vector<int> age;            // years per node

    static Inst empty(int n) {
        Inst g;
        g.n = n;
        g.A.assign(n, std::vector<int>(n, 0));
        g.age.assign(n, 0);
        g.label.assign(n, "");
        return g;
    }
    void add_edge(int u, int v) { A[u][v] = A[v][u] = 1; }
    int edge_count() const {
        int e = 0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) e += A[i][j];
        return e;
    }
    int degree(int i) const {
        int d = 0;
        for (int j = 0; j < n; ++j) d += A[i][j];
        return d;
    }
};

inline std::optional<double> density(const Inst& g) {
    if (g.n < 2) return std::nullopt;
    return 2.0 * g.edge_count() / (static_cast<double>(g.n) * (g.n - 1));
}

inline std::optional<double> avg_clustering(const Inst& g) {
    if (g.n < 1) return std::nullopt;
    double total = 0.0;
    for (int i = 0; i < g.n; ++i) {
        int d = g.degree(i);
        if (d < 2) continue;
        int links = 0;
        for (int u = 0; u < g.n; ++u)
            for (int v = u + 1; v < g.n; ++v)
                if (g.A[i][u] && g.A[i][v] && g.A[u][v]) ++links;
        total += 2.0 * links / (static_cast<double>(d) * (d - 1));
    }
    return total / g.n;
}

// Connected components by label propagation; avoids the BFS used in the
// library. Returns component index per node.
inline std::vector<int> components(const Inst& g) {
    std::vector<int> comp(g.n);
    for (int i = 0; i < g.n; ++i) comp[i] = i;
    bool changed = true;
    while (changed) {
        changed = false;
        for (int i = 0; i < g.n; ++i)
            for (int j = 0; j < g.n; ++j)
                if (g.A[i][j] && comp[j] > comp[i]) {
                    comp[j] = comp[i];
                    changed = true;
                }
    }
    return comp;
}

// Largest component; ties broken toward the smallest contained node id.
inline std::vector<int> largest_component_nodes(const Inst& g) {
    auto comp = components(g);
    std::map<int, std::vector<int>> groups;
    for (int i = 0; i < g.n; ++i) groups[comp[i]].push_back(i);
    std::vector<int> best;
    for (auto& [root, nodes] : groups) {
        if (nodes.size() > best.size()) best = nodes; // map order = min-id order
    }
    return best;
}

inline std::optional<double> lcc_fraction(const Inst& g) {
    if (g.n < 1) return std::nullopt;
    return static_cast<double>(largest_component_nodes(g).size()) / g.n;
}

inline std::optional<double> avg_sp_norm(const Inst& g) {
    auto lcc = largest_component_nodes(g);
    int m = static_cast<int>(lcc.size());
    if (m < 2) return std::nullopt;
    // Floyd-Warshall over the induced subgraph
    const double inf = 1e18;
    std::vector<std::vector<double>> d(m, std::vector<double>(m, inf));
    for (int a = 0; a < m; ++a) d[a][a] = 0.0;
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            if (g.A[lcc[a]][lcc[b]]) d[a][b] = 1.0;
    for (int k = 0; k < m; ++k)
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b)
                if (d[a][k] + d[k][b] < d[a][b]) d[a][b] = d[a][k] + d[k][b];
    double total = 0.0;
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) total += d[a][b];
    double mean = total / (m * (m - 1) / 2.0);
    return mean / std::log(static_cast<double>(m));
}

// Q = (1/2E) sum_ij (A_ij - N_i N_j / 2E) [c_i = c_j], ordered pairs with i=j.
inline std::optional<double> modularity(const Inst& g, const std::vector<int>& c) {
    double m2 = 2.0 * g.edge_count();
    if (m2 <= 0.0) return std::nullopt;
    double q = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (c[i] == c[j]) q += g.A[i][j] - g.degree(i) * static_cast<double>(g.degree(j)) / m2;
    return q / m2;
}

inline std::optional<double> gini(const std::vector<double>& x) {
    if (x.empty()) return std::nullopt;
    double mean = 0.0;
    for (double v : x) mean += v;
    mean /= x.size();
    if (mean == 0.0) return 0.0;
    double sum = 0.0;
    for (double a : x)
        for (double b : x) sum += std::fabs(a - b);
    return sum / (2.0 * x.size() * x.size() * mean);
}

// --- homophily measures -----------------------------------------------

inline std::map<std::string, int> group_sizes(const Inst& g) {
    std::map<std::string, int> sz;
    for (const auto& l : g.label) ++sz[l];
    return sz;
}

inline std::optional<double> cross_group_ratio(const Inst& g) {
    int e = g.edge_count();
    if (e == 0 || g.n < 2) return std::nullopt;
    auto sz = group_sizes(g);
    if (sz.size() < 2) return std::nullopt;
    double obs = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (i != j && g.A[i][j] && g.label[i] != g.label[j]) obs += 1.0;
    obs /= 2.0 * e;
    double exp = 0.0;
    for (const auto& [ga, na] : sz)
        for (const auto& [gb, nb] : sz)
            if (ga != gb) exp += static_cast<double>(na) * nb;
    exp /= static_cast<double>(g.n) * (g.n - 1);
    if (exp == 0.0) return std::nullopt;
    return obs / exp;
}

inline std::optional<double> same_group_ratio(const Inst& g) {
    int e = g.edge_count();
    if (e == 0 || g.n < 2) return std::nullopt;
    auto sz = group_sizes(g);
    double obs = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (i != j && g.A[i][j] && g.label[i] == g.label[j]) obs += 1.0;
    obs /= 2.0 * e;
    double exp = 0.0;
    for (const auto& [grp, ng] : sz) exp += static_cast<double>(ng) * (ng - 1);
    exp /= static_cast<double>(g.n) * (g.n - 1);
    if (exp == 0.0) return std::nullopt;
    return obs / exp;
}

inline std::optional<double> pairwise_ratio(const Inst& g, const std::string& a, const std::string& b) {
    int e = g.edge_count();
    if (e == 0 || g.n < 2) return std::nullopt;
    auto sz = group_sizes(g);
    double na = sz.count(a) ? sz[a] : 0;
    double nb = sz.count(b) ? sz[b] : 0;
    double exp = na * (nb - (a == b ? 1.0 : 0.0)) / (static_cast<double>(g.n) * (g.n - 1));
    if (exp <= 0.0) return std::nullopt;
    double obs = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j)
            if (i != j && g.A[i][j] && g.label[i] == a && g.label[j] == b) obs += 1.0;
    obs /= 2.0 * e;
    return obs / exp;
}

inline std::optional<double> age_ratio(const Inst& g) {
    int e = g.edge_count();
    if (e == 0 || g.n < 2) return std::nullopt;
    double obs = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j)
            if (g.A[i][j]) obs += std::abs(g.age[i] - g.age[j]);
    obs /= e;
    double exp = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = i + 1; j < g.n; ++j) exp += std::abs(g.age[i] - g.age[j]);
    exp /= g.n * (g.n - 1) / 2.0;
    if (exp == 0.0) return std::nullopt;
    return obs / exp;
}

// Isolation index with conservative label c_lab and liberal label l_lab.
// share_c(j): fraction of j's C/L-labeled neighbors that are C.
// exposure(i): mean share_c over i's C/L-labeled neighbors with a defined
// share. Isolation = mean exposure over C nodes - mean exposure over L nodes.
inline std::optional<double> isolation(const Inst& g, const std::string& c_lab, const std::string& l_lab) {
    std::vector<std::optional<double>> share(g.n);
    for (int j = 0; j < g.n; ++j) {
        double c = 0.0, l = 0.0;
        for (int k = 0; k < g.n; ++k)
            if (g.A[j][k]) {
                if (g.label[k] == c_lab) c += 1.0;
                if (g.label[k] == l_lab) l += 1.0;
            }
        if (c + l > 0.0) share[j] = c / (c + l);
    }
    double csum = 0.0, lsum = 0.0;
    int ccount = 0, lcount = 0;
    for (int i = 0; i < g.n; ++i) {
        if (g.label[i] != c_lab && g.label[i] != l_lab) continue;
        double tot = 0.0;
        int cnt = 0;
        for (int j = 0; j < g.n; ++j)
            if (g.A[i][j] && (g.label[j] == c_lab || g.label[j] == l_lab) && share[j]) {
                tot += *share[j];
                ++cnt;
            }
        if (cnt == 0) continue;
        if (g.label[i] == c_lab) {
            csum += tot / cnt;
            ++ccount;
        } else {
            lsum += tot / cnt;
            ++lcount;
        }
    }
    if (ccount == 0 || lcount == 0) return std::nullopt;
    return csum / ccount - lsum / lcount;
}

// Mean posterior polarization with a Beta(1,1) prior. alpha counts
// left-labeled neighbors, beta right-labeled ones.
inline std::optional<double> polarization(const Inst& g, const std::string& left, const std::string& right) {
    double total = 0.0;
    int count = 0;
    for (int i = 0; i < g.n; ++i) {
        if (g.label[i] != left && g.label[i] != right) continue;
        double a = 1.0, b = 1.0;
        for (int j = 0; j < g.n; ++j)
            if (g.A[i][j]) {
                if (g.label[j] == left) a += 1.0;
                if (g.label[j] == right) b += 1.0;
            }
        total += 2.0 * std::fabs(0.5 - a / (a + b));
        ++count;
    }
    if (count == 0) return std::nullopt;
    return total / count;
}

inline std::optional<double> gs_diversity(const Inst& g, int i) {
    std::map<std::string, double> counts;
    double deg = 0.0;
    for (int j = 0; j < g.n; ++j)
        if (g.A[i][j]) {
            counts[g.label[j]] += 1.0;
            deg += 1.0;
        }
    if (deg == 0.0) return std::nullopt;
    double sum = 0.0;
    for (const auto& [grp, c] : counts) sum += (c / deg) * (c / deg);
    return 1.0 - sum;
}

inline std::optional<double> democrat_lean(const Inst& g, int i, const std::string& dem, const std::string& rep) {
    double d = 0.0, r = 0.0;
    for (int j = 0; j < g.n; ++j)
        if (g.A[i][j]) {
            if (g.label[j] == dem) d += 1.0;
            if (g.label[j] == rep) r += 1.0;
        }
    if (d + r == 0.0) return std::nullopt;
    return d / (d + r);
}

} // namespace oracle
