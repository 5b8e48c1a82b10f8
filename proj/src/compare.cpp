#include "socnet/compare.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>

#include <json.hpp>

#include "socnet/errors.hpp"

namespace socnet {

using nlohmann::json;

namespace {

double mean_of(const std::vector<double>& v) {
    double sum = 0.0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
}

struct MetricKey {
    const char* name;
    double MetricVector::* field;
};

constexpr MetricKey kMetricKeys[] = {
    {"density", &MetricVector::density},
    {"avg_clustering", &MetricVector::avg_clustering},
    {"lcc_fraction", &MetricVector::lcc_fraction},
    {"avg_sp_norm", &MetricVector::avg_sp_norm},
    {"modularity", &MetricVector::modularity},
    {"degree_gini", &MetricVector::degree_gini},
};

} // namespace

double normalized_mean_diff(const std::vector<double>& real_values, const std::vector<double>& gen_values) {
    if (real_values.empty() || gen_values.empty()) throw DataError("cannot compare empty samples");
    double mean_r = mean_of(real_values);
    double var = 0.0;
    for (double x : real_values) var += (x - mean_r) * (x - mean_r);
    double sigma = std::sqrt(var / static_cast<double>(real_values.size()));
    double gap = std::fabs(mean_r - mean_of(gen_values));
    if (sigma == 0.0) return gap == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
    return gap / sigma;
}

double ks_statistic(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.empty() || b.empty()) throw DataError("cannot compare empty samples");
    std::vector<double> sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    double best = 0.0;
    std::size_t i = 0, j = 0;
    while (i < sa.size() && j < sb.size()) {
        double x = std::min(sa[i], sb[j]);
        while (i < sa.size() && sa[i] <= x) ++i;
        while (j < sb.size() && sb[j] <= x) ++j;
        double fa = static_cast<double>(i) / static_cast<double>(sa.size());
        double fb = static_cast<double>(j) / static_cast<double>(sb.size());
        best = std::max(best, std::fabs(fa - fb));
    }
    return best;
}

double mean_diff_row_average(const std::vector<ComparisonColumn>& columns) {
    double sum = 0.0;
    int kept = 0;
    for (const auto& c : columns)
        if (!c.fitted) {
            sum += c.mean_diff;
            ++kept;
        }
    if (kept == 0) throw DataError("every column is fitted; nothing to average");
    return sum / kept;
}

double ks_row_average(const std::vector<ComparisonColumn>& columns) {
    if (columns.empty()) throw DataError("empty comparison table");
    double sum = 0.0;
    for (const auto& c : columns) sum += c.ks;
    return sum / static_cast<double>(columns.size());
}

ComparisonTable summarize(const std::vector<MetricVector>& real_metrics,
                          const std::vector<MetricVector>& gen_metrics, const std::set<std::string>& fitted,
                          const std::vector<double>* real_degrees, const std::vector<double>* gen_degrees) {
    if (real_metrics.empty() || gen_metrics.empty()) throw DataError("cannot compare empty metric sets");
    ComparisonTable table;
    for (const auto& key : kMetricKeys) {
        std::vector<double> rv, gv;
        for (const auto& m : real_metrics) rv.push_back(m.*key.field);
        for (const auto& m : gen_metrics) gv.push_back(m.*key.field);
        ComparisonColumn col;
        col.name = key.name;
        col.mean_diff = normalized_mean_diff(rv, gv);
        col.ks = ks_statistic(rv, gv);
        col.fitted = fitted.count(key.name) > 0;
        table.columns.push_back(std::move(col));
    }
    if (real_degrees && gen_degrees) {
        ComparisonColumn col;
        col.name = "degree";
        col.mean_diff = normalized_mean_diff(*real_degrees, *gen_degrees);
        col.ks = ks_statistic(*real_degrees, *gen_degrees);
        col.fitted = fitted.count("degree") > 0;
        table.columns.push_back(std::move(col));
    }
    table.mean_diff_avg = mean_diff_row_average(table.columns);
    table.ks_avg = ks_row_average(table.columns);
    return table;
}

std::string comparison_text(const ComparisonTable& table) {
    auto cell = [](double v) {
        char buf[32];
        if (std::isinf(v))
            std::snprintf(buf, sizeof buf, "%10s", "inf");
        else
            std::snprintf(buf, sizeof buf, "%10.3f", v);
        return std::string(buf);
    };
    std::string head = "metric     ", diff = "mean diff  ", ks = "KS stat    ";
    for (const auto& c : table.columns) {
        std::string name = c.name + (c.fitted ? "+" : "");
        char buf[32];
        std::snprintf(buf, sizeof buf, "%16s", name.c_str());
        head += buf;
        diff += "      " + cell(c.mean_diff);
        ks += "      " + cell(c.ks);
    }
    std::string out = head + "\n" + diff + "\n" + ks + "\n";
    char avg[128];
    std::snprintf(avg, sizeof avg, "row averages: mean diff %.3f (unfitted columns), KS %.3f (all columns)\n",
                  table.mean_diff_avg, table.ks_avg);
    out += avg;
    if (std::any_of(table.columns.begin(), table.columns.end(), [](const auto& c) { return c.fitted; }))
        out += "+ parameter fitted to the real networks; excluded from the mean diff average\n";
    return out;
}

void write_comparison_json(const ComparisonTable& table, const std::string& path) {
    json j;
    j["columns"] = json::array();
    for (const auto& c : table.columns) {
        json col{{"name", c.name}, {"fitted", c.fitted}};
        col["mean_diff"] = std::isinf(c.mean_diff) ? json(nullptr) : json(c.mean_diff);
        col["ks"] = c.ks;
        j["columns"].push_back(std::move(col));
    }
    j["mean_diff_avg"] = std::isinf(table.mean_diff_avg) ? json(nullptr) : json(table.mean_diff_avg);
    j["ks_avg"] = table.ks_avg;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write comparison: " + path);
    out << j.dump(1) << "\n";
}

} // namespace socnet
