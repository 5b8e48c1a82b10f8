#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "socnet/metrics.hpp"

namespace socnet {

/// |mean(real) - mean(gen)| in units of the real sample's population
/// standard deviation. Zero spread with equal means is 0; with unequal
/// means it is infinity.
double normalized_mean_diff(const std::vector<double>& real_values, const std::vector<double>& gen_values);

/// Two-sample Kolmogorov-Smirnov statistic: the largest gap between the two
/// empirical CDFs.
double ks_statistic(const std::vector<double>& a, const std::vector<double>& b);

struct ComparisonColumn {
    std::string name;
    double mean_diff = 0.0;
    double ks = 0.0;
    bool fitted = false; // parameter was tuned against the real side
};

/// One row pair of a real-versus-generated table. The mean-diff average
/// skips fitted columns (they match by construction); the KS average keeps
/// every column.
struct ComparisonTable {
    std::vector<ComparisonColumn> columns;
    double mean_diff_avg = 0.0;
    double ks_avg = 0.0;
};

double mean_diff_row_average(const std::vector<ComparisonColumn>& columns);
double ks_row_average(const std::vector<ComparisonColumn>& columns);

/// Build the table over the six graph metrics, plus a pooled-degree column
/// when both sides supply normalized degrees. `fitted` names columns by
/// metric key ("density", "avg_clustering", ...).
ComparisonTable summarize(const std::vector<MetricVector>& real_metrics,
                          const std::vector<MetricVector>& gen_metrics, const std::set<std::string>& fitted,
                          const std::vector<double>* real_degrees = nullptr,
                          const std::vector<double>* gen_degrees = nullptr);

/// Aligned text rendering; fitted columns are marked with '+'.
std::string comparison_text(const ComparisonTable& table);

void write_comparison_json(const ComparisonTable& table, const std::string& path);

} // namespace socnet
