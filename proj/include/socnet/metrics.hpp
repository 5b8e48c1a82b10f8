#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "socnet/graph.hpp"

namespace socnet {

/// Scalar structural summary of one network.
struct MetricVector {
    double density = 0.0;
    double avg_clustering = 0.0;
    double lcc_fraction = 0.0;
    double avg_sp_norm = 0.0; // mean shortest path in the LCC / ln(N_lcc)
    double modularity = 0.0;  // Louvain partition quality
    double degree_gini = 0.0;
};

/// 2E / N(N-1). Throws DataError for N < 2.
double density(const Graph& g);

/// Mean local clustering; nodes of degree < 2 contribute 0. Throws for N < 1.
double avg_clustering(const Graph& g);

/// Nodes of the largest connected component (ties toward the component
/// containing the smallest node id), ascending ids.
std::vector<int> largest_component(const Graph& g);

double lcc_fraction(const Graph& g);

/// Mean shortest-path length over unordered pairs in the LCC, divided by
/// ln(N_lcc). Throws DataError when the LCC has fewer than 2 nodes.
double avg_shortest_path_norm(const Graph& g);

struct LouvainResult {
    std::vector<int> community; // community index per node
    double q = 0.0;
};

/// Modularity at resolution 1 of a given node partition:
/// Q = (1/2E) sum_ij (A_ij - N_i N_j / 2E) [c_i = c_j], ordered pairs.
/// Throws DataError when E = 0.
double modularity(const Graph& g, const std::vector<int>& community);

/// Seeded Louvain community detection (resolution 1). Node visiting order is
/// shuffled per pass from the seed; ties prefer the smaller community id.
/// The returned Q is never below the single-community value of 0.
LouvainResult louvain(const Graph& g, std::uint64_t seed);

/// Gini coefficient: sum_ij |x_i - x_j| / (2 n^2 mean). All-zero input
/// yields 0 by convention. Throws DataError on empty input or negatives.
double gini(const std::vector<double>& values);

/// Degrees divided by the node count, ascending node id.
std::vector<double> normalized_degrees(const Graph& g);

/// Histogram over [0, 1) in 20 fixed bins of width 0.05, pooled over all
/// nodes of all graphs. Masses sum to 1 when any node exists.
struct DegreeHistogram {
    std::array<double, 20> mass{};
};

DegreeHistogram pooled_degree_histogram(const std::vector<Graph>& graphs);

/// CSV rows "bin_start,mass", exactly 20 rows, no header.
void write_histogram_csv(const DegreeHistogram& h, const std::string& path);

/// All scalar metrics of one graph. The seed feeds Louvain.
MetricVector metric_vector(const Graph& g, std::uint64_t seed);

} // namespace socnet
