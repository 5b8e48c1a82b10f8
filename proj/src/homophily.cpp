#include "socnet/homophily.hpp"

#include <algorithm>
#include <cmath>

#include "socnet/errors.hpp"
#include "socnet/metrics.hpp"

namespace socnet {

std::string age_bucket(int age) {
    if (age < 30) return "Under 30";
    if (age < 60) return "30-59";
    return "60+";
}

LabeledGraph make_labeled_graph(const Graph& g, const PersonaSet& set) {
    if (g.node_count() != set.size())
        throw DataError("graph has " + std::to_string(g.node_count()) + " nodes but persona set has " +
                        std::to_string(set.size()));
    LabeledGraph lg;
    lg.graph = g;
    for (Variable v : set.active) {
        auto& col = lg.labels[variable_name(v)];
        col.reserve(set.personas.size());
        for (const auto& p : set.personas)
            col.push_back(v == Variable::Age ? age_bucket(p.age) : p.value(v));
    }
    if (set.is_active(Variable::Age)) {
        lg.ages.reserve(set.personas.size());
        for (const auto& p : set.personas) lg.ages.push_back(p.age);
    }
    return lg;
}

namespace {

const std::vector<std::string>& column(const LabeledGraph& lg, const std::string& variable) {
    auto it = lg.labels.find(variable);
    if (it == lg.labels.end()) throw DataError("no labels for variable '" + variable + "'");
    if (static_cast<int>(it->second.size()) != lg.graph.node_count())
        throw DataError("label column size mismatch for '" + variable + "'");
    return it->second;
}

std::map<std::string, int> sizes_of(const std::vector<std::string>& col) {
    std::map<std::string, int> sz;
    for (const auto& l : col) ++sz[l];
    return sz;
}

void require_edges(const LabeledGraph& lg) {
    if (lg.graph.node_count() < 2) throw DataError("measure undefined for fewer than 2 nodes");
    if (lg.graph.edge_count() == 0) throw DataError("measure undefined for edgeless graph");
}

} // namespace

double cross_group_ratio(const LabeledGraph& lg, const std::string& variable) {
    require_edges(lg);
    const auto& col = column(lg, variable);
    auto sz = sizes_of(col);
    if (sz.size() < 2) throw DataError("cross-group ratio undefined with a single group");
    double n = lg.graph.node_count();
    long long cross = 0;
    for (auto [u, v] : lg.graph.edges())
        if (col[static_cast<std::size_t>(u)] != col[static_cast<std::size_t>(v)]) ++cross;
    double obs = static_cast<double>(cross) / lg.graph.edge_count();
    double cross_cells = n * (n - 1);
    for (const auto& [grp, ng] : sz) cross_cells -= static_cast<double>(ng) * (ng - 1);
    double exp = cross_cells / (n * (n - 1));
    return obs / exp;
}

double same_group_ratio(const LabeledGraph& lg, const std::string& variable) {
    require_edges(lg);
    const auto& col = column(lg, variable);
    auto sz = sizes_of(col);
    double n = lg.graph.node_count();
    double same_cells = 0.0;
    for (const auto& [grp, ng] : sz) same_cells += static_cast<double>(ng) * (ng - 1);
    if (same_cells == 0.0) throw DataError("same-group ratio undefined: all groups are singletons");
    long long same = 0;
    for (auto [u, v] : lg.graph.edges())
        if (col[static_cast<std::size_t>(u)] == col[static_cast<std::size_t>(v)]) ++same;
    double obs = static_cast<double>(same) / lg.graph.edge_count();
    return obs / (same_cells / (n * (n - 1)));
}

PairwiseMatrix pairwise_group_ratios(const LabeledGraph& lg, const std::string& variable, int min_group_size) {
    require_edges(lg);
    const auto& col = column(lg, variable);
    auto sz = sizes_of(col);
    PairwiseMatrix out;
    for (const auto& [grp, ng] : sz)
        if (ng >= min_group_size) out.groups.push_back(grp);
    std::size_t k = out.groups.size();
    out.ratio.assign(k, std::vector<double>(k, 0.0));
    if (k == 0) return out;
    std::map<std::string, std::size_t> index;
    for (std::size_t i = 0; i < k; ++i) index[out.groups[i]] = i;

    std::vector<std::vector<double>> obs(k, std::vector<double>(k, 0.0));
    double m2 = 2.0 * lg.graph.edge_count();
    for (auto [u, v] : lg.graph.edges()) {
        auto a = index.find(col[static_cast<std::size_t>(u)]);
        auto b = index.find(col[static_cast<std::size_t>(v)]);
        if (a == index.end() || b == index.end()) continue;
        obs[a->second][b->second] += 1.0 / m2; // ordered pairs: count both directions
        obs[b->second][a->second] += 1.0 / m2;
    }
    double n = lg.graph.node_count();
    for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) {
            double na = sz[out.groups[a]];
            double nb = sz[out.groups[b]] - (a == b ? 1.0 : 0.0);
            double exp = na * nb / (n * (n - 1));
            out.ratio[a][b] = obs[a][b] / exp;
        }
    return out;
}

double age_homophily_ratio(const LabeledGraph& lg) {
    require_edges(lg);
    if (lg.ages.empty() || static_cast<int>(lg.ages.size()) != lg.graph.node_count())
        throw DataError("age ratio requires ages for every node");
    double edge_sum = 0.0;
    for (auto [u, v] : lg.graph.edges())
        edge_sum += std::abs(lg.ages[static_cast<std::size_t>(u)] - lg.ages[static_cast<std::size_t>(v)]);
    double obs = edge_sum / lg.graph.edge_count();
    double all_sum = 0.0;
    int n = lg.graph.node_count();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            all_sum += std::abs(lg.ages[static_cast<std::size_t>(i)] - lg.ages[static_cast<std::size_t>(j)]);
    double exp = all_sum / (static_cast<double>(n) * (n - 1) / 2.0);
    if (exp == 0.0) throw DataError("age ratio undefined: identical ages");
    return obs / exp;
}

namespace {

// Per-node counts of conservative / liberal neighbors.
struct PoleCounts {
    std::vector<double> con;
    std::vector<double> lib;
};

PoleCounts pole_counts(const LabeledGraph& lg, const std::vector<std::string>& col,
                       const PoliticalMapping& mapping) {
    PoleCounts pc;
    pc.con.assign(static_cast<std::size_t>(lg.graph.node_count()), 0.0);
    pc.lib.assign(static_cast<std::size_t>(lg.graph.node_count()), 0.0);
    for (auto [u, v] : lg.graph.edges()) {
        const auto& lu = col[static_cast<std::size_t>(u)];
        const auto& lv = col[static_cast<std::size_t>(v)];
        if (lv == mapping.conservative_group) pc.con[static_cast<std::size_t>(u)] += 1.0;
        if (lv == mapping.liberal_group) pc.lib[static_cast<std::size_t>(u)] += 1.0;
        if (lu == mapping.conservative_group) pc.con[static_cast<std::size_t>(v)] += 1.0;
        if (lu == mapping.liberal_group) pc.lib[static_cast<std::size_t>(v)] += 1.0;
    }
    return pc;
}

} // namespace

double isolation_index(const LabeledGraph& lg, const std::string& variable, const PoliticalMapping& mapping) {
    const auto& col = column(lg, variable);
    auto pc = pole_counts(lg, col, mapping);
    int n = lg.graph.node_count();
    std::vector<double> share(static_cast<std::size_t>(n), -1.0); // -1 marks undefined
    for (int j = 0; j < n; ++j) {
        double tot = pc.con[static_cast<std::size_t>(j)] + pc.lib[static_cast<std::size_t>(j)];
        if (tot > 0.0) share[static_cast<std::size_t>(j)] = pc.con[static_cast<std::size_t>(j)] / tot;
    }
    double con_sum = 0.0, lib_sum = 0.0;
    int con_n = 0, lib_n = 0;
    for (int i = 0; i < n; ++i) {
        const auto& li = col[static_cast<std::size_t>(i)];
        bool is_con = li == mapping.conservative_group;
        bool is_lib = li == mapping.liberal_group;
        if (!is_con && !is_lib) continue;
        double total = 0.0;
        int count = 0;
        for (int j : lg.graph.neighbors(i)) {
            const auto& lj = col[static_cast<std::size_t>(j)];
            if (lj != mapping.conservative_group && lj != mapping.liberal_group) continue;
            if (share[static_cast<std::size_t>(j)] < 0.0) continue;
            total += share[static_cast<std::size_t>(j)];
            ++count;
        }
        if (count == 0) continue;
        if (is_con) {
            con_sum += total / count;
            ++con_n;
        } else {
            lib_sum += total / count;
            ++lib_n;
        }
    }
    if (con_n == 0 || lib_n == 0)
        throw DataError("isolation index undefined: a pole has no node with defined exposure");
    return con_sum / con_n - lib_sum / lib_n;
}

double polarization_mean(const LabeledGraph& lg, const std::string& variable, const PoliticalMapping& mapping) {
    const auto& col = column(lg, variable);
    auto pc = pole_counts(lg, col, mapping);
    double total = 0.0;
    int count = 0;
    for (int i = 0; i < lg.graph.node_count(); ++i) {
        const auto& li = col[static_cast<std::size_t>(i)];
        if (li != mapping.conservative_group && li != mapping.liberal_group) continue;
        double a = 1.0 + pc.lib[static_cast<std::size_t>(i)];
        double b = 1.0 + pc.con[static_cast<std::size_t>(i)];
        total += 2.0 * std::fabs(0.5 - a / (a + b));
        ++count;
    }
    if (count == 0) throw DataError("polarization undefined: no pole-labeled nodes");
    return total / count;
}

double gs_diversity(const LabeledGraph& lg, const std::string& variable, int node) {
    const auto& col = column(lg, variable);
    const auto& nbrs = lg.graph.neighbors(node);
    if (nbrs.empty()) throw DataError("diversity undefined for isolated node " + std::to_string(node));
    std::map<std::string, double> counts;
    for (int j : nbrs) counts[col[static_cast<std::size_t>(j)]] += 1.0;
    double sum = 0.0;
    for (const auto& [grp, c] : counts) {
        double p = c / nbrs.size();
        sum += p * p;
    }
    return 1.0 - sum;
}

double democrat_lean(const LabeledGraph& lg, const std::string& variable, int node,
                     const PoliticalMapping& mapping) {
    const auto& col = column(lg, variable);
    double d = 0.0, r = 0.0;
    for (int j : lg.graph.neighbors(node)) {
        const auto& lj = col[static_cast<std::size_t>(j)];
        if (lj == mapping.liberal_group) d += 1.0;
        if (lj == mapping.conservative_group) r += 1.0;
    }
    if (d + r == 0.0)
        throw DataError("lean undefined: node " + std::to_string(node) + " has no pole-labeled neighbor");
    return d / (d + r);
}

std::vector<GroupDegreeStats> group_degree_stats(const LabeledGraph& lg, const std::string& variable,
                                                 int min_group_size) {
    const auto& col = column(lg, variable);
    auto sz = sizes_of(col);
    std::vector<GroupDegreeStats> out;
    for (const auto& [grp, ng] : sz) {
        if (ng < min_group_size) continue;
        GroupDegreeStats s;
        s.group = grp;
        s.count = ng;
        std::vector<double> degs;
        double gs_total = 0.0;
        int gs_count = 0;
        for (int i = 0; i < lg.graph.node_count(); ++i) {
            if (col[static_cast<std::size_t>(i)] != grp) continue;
            degs.push_back(lg.graph.degree(i));
            if (lg.graph.degree(i) > 0) {
                gs_total += gs_diversity(lg, variable, i);
                ++gs_count;
            }
        }
        double mean_deg = 0.0;
        for (double d : degs) mean_deg += d;
        mean_deg /= degs.size();
        s.mean_norm_degree = mean_deg / lg.graph.node_count();
        s.degree_gini = gini(degs);
        if (gs_count > 0) s.mean_gs = gs_total / gs_count;
        out.push_back(std::move(s));
    }
    return out;
}

namespace {

template <typename F>
std::optional<double> try_measure(F&& f) {
    try {
        return f();
    } catch (const DataError&) {
        return std::nullopt;
    }
}

} // namespace

HomophilyReport homophily_report(const LabeledGraph& lg, int min_group_size, const PoliticalMapping& mapping) {
    HomophilyReport rep;
    for (const auto& [variable, col] : lg.labels) {
        rep.cross_ratio[variable] = try_measure([&] { return cross_group_ratio(lg, variable); });
        rep.same_ratio[variable] = try_measure([&] { return same_group_ratio(lg, variable); });
        if (lg.graph.edge_count() > 0) rep.pairwise[variable] = pairwise_group_ratios(lg, variable, min_group_size);
        rep.degree_stats[variable] = group_degree_stats(lg, variable, min_group_size);
    }
    if (!lg.ages.empty()) rep.age_ratio = try_measure([&] { return age_homophily_ratio(lg); });
    if (lg.has_variable("political")) {
        rep.isolation = try_measure([&] { return isolation_index(lg, "political", mapping); });
        rep.polarization = try_measure([&] { return polarization_mean(lg, "political", mapping); });
        rep.democrat_lean_per_node.resize(static_cast<std::size_t>(lg.graph.node_count()));
        for (int i = 0; i < lg.graph.node_count(); ++i)
            rep.democrat_lean_per_node[static_cast<std::size_t>(i)] =
                try_measure([&] { return democrat_lean(lg, "political", i, mapping); });
    }
    return rep;
}

} // namespace socnet
