#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "socnet/graph.hpp"
#include "socnet/persona.hpp"

namespace socnet {

/// A graph whose nodes carry group labels per demographic variable. Ages are
/// kept both raw (for the age-gap ratio) and bucketed as a label.
struct LabeledGraph {
    Graph graph;
    std::map<std::string, std::vector<std::string>> labels; // variable -> per-node group
    std::vector<int> ages;                                  // empty when age is inactive

    bool has_variable(const std::string& v) const { return labels.count(v) > 0; }
};

/// "Under 30", "30-59", or "60+".
std::string age_bucket(int age);

/// Node i of the graph is labeled by persona i. Requires matching sizes.
/// Age becomes both `ages` and a bucketed "age" label.
LabeledGraph make_labeled_graph(const Graph& g, const PersonaSet& personas);

/// Observed cross-group edge proportion over its expectation under uniform
/// mixing. Proportions are over ordered pairs: obs = cross edges / E,
/// exp = sum_{g != g'} N_g N_g' / (N (N-1)). Throws DataError when E = 0,
/// N < 2, or fewer than two groups are present.
double cross_group_ratio(const LabeledGraph& lg, const std::string& variable);

/// Same-group counterpart: exp = sum_g N_g (N_g - 1) / (N (N-1)). Throws
/// when that expectation is zero (all groups singletons) or E = 0.
double same_group_ratio(const LabeledGraph& lg, const std::string& variable);

/// Ratios for every ordered group pair (A, B) among groups with at least
/// min_group_size members: obs_AB / exp_AB with
/// exp_AB = N_A (N_B - [A = B]) / (N (N-1)), edge sums over 2E.
struct PairwiseMatrix {
    std::vector<std::string> groups;
    std::vector<std::vector<double>> ratio;
};
PairwiseMatrix pairwise_group_ratios(const LabeledGraph& lg, const std::string& variable,
                                     int min_group_size = 10);

/// Mean |age_i - age_j| over edges divided by the same mean over all node
/// pairs. Throws when E = 0 or the all-pairs mean is zero.
double age_homophily_ratio(const LabeledGraph& lg);

/// Names of the two groups treated as the poles of the political axis.
/// Nodes with any other label are left out of the binary measures.
struct PoliticalMapping {
    std::string conservative_group = "Republican";
    std::string liberal_group = "Democrat";
};

/// Two-hop exposure gap. share_c(j) is the conservative fraction of j's
/// pole-labeled neighbors; a node's exposure is the mean share_c over its
/// pole-labeled neighbors with a defined share; the index is the mean
/// exposure of conservative nodes minus that of liberal nodes. Throws when
/// either side has no node with defined exposure.
double isolation_index(const LabeledGraph& lg, const std::string& variable, const PoliticalMapping& mapping);

/// Mean over pole-labeled nodes of 2|0.5 - a/(a+b)| where a = 1 + liberal
/// neighbors and b = 1 + conservative neighbors (Beta(1,1) prior). Isolated
/// nodes contribute 0. Throws when no pole-labeled node exists.
double polarization_mean(const LabeledGraph& lg, const std::string& variable, const PoliticalMapping& mapping);

/// 1 - sum_g p_g^2 over the group proportions of the node's neighbors.
/// Throws for isolated nodes.
double gs_diversity(const LabeledGraph& lg, const std::string& variable, int node);

/// Liberal share of the node's pole-labeled neighbors. Throws when the node
/// has none.
double democrat_lean(const LabeledGraph& lg, const std::string& variable, int node,
                     const PoliticalMapping& mapping);

struct GroupDegreeStats {
    std::string group;
    int count = 0;
    double mean_norm_degree = 0.0; // mean degree / N
    double degree_gini = 0.0;
    std::optional<double> mean_gs; // over members with >= 1 neighbor
};

/// Per group with at least min_group_size members, in vocabulary-free
/// (sorted) group order.
std::vector<GroupDegreeStats> group_degree_stats(const LabeledGraph& lg, const std::string& variable,
                                                 int min_group_size = 10);

/// Everything above for one labeled graph; undefined measures become nullopt
/// instead of throwing.
struct HomophilyReport {
    std::map<std::string, std::optional<double>> cross_ratio;
    std::map<std::string, std::optional<double>> same_ratio;
    std::map<std::string, PairwiseMatrix> pairwise;
    std::optional<double> age_ratio;
    std::optional<double> isolation;
    std::optional<double> polarization;
    std::map<std::string, std::vector<GroupDegreeStats>> degree_stats;
    std::vector<std::optional<double>> democrat_lean_per_node;
};

HomophilyReport homophily_report(const LabeledGraph& lg, int min_group_size = 10,
                                 const PoliticalMapping& mapping = {});

} // namespace socnet
