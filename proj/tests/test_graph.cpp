#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "socnet/errors.hpp"
#include "socnet/graph.hpp"
#include "socnet/rng.hpp"

using namespace socnet;

namespace {

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    auto p = std::filesystem::temp_directory_path() / name;
    std::ofstream out(p, std::ios::binary);
    out << content;
    return p;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

} // namespace

TEST_CASE("plain edge list loads with dense ids") {
    auto p = write_temp("g_plain.edges", "0 1\n1 2\n");
    auto lg = load_edge_list(p.string());
    CHECK(lg.graph.node_count() == 3);
    CHECK(lg.graph.edge_count() == 2);
    CHECK(lg.graph.has_edge(0, 1));
    CHECK(lg.graph.has_edge(1, 2));
    CHECK_FALSE(lg.graph.has_edge(0, 2));
}

TEST_CASE("comments and blank lines are ignored") {
    auto p = write_temp("g_comments.edges", "# a comment\n\n0 1\n\n# another\n1 2\n");
    auto lg = load_edge_list(p.string());
    CHECK(lg.graph.node_count() == 3);
    CHECK(lg.graph.edge_count() == 2);
}

TEST_CASE("duplicate and reversed duplicate edges collapse") {
    auto p = write_temp("g_dup.edges", "0 1\n1 0\n0 1\n");
    auto lg = load_edge_list(p.string());
    CHECK(lg.graph.edge_count() == 1);
    CHECK(lg.graph.edges() == std::vector<std::pair<int, int>>{{0, 1}});
}

TEST_CASE("self-loop in plain format is rejected") {
    auto p = write_temp("g_loop.edges", "0 1\n2 2\n");
    CHECK_THROWS_AS(load_edge_list(p.string()), DataError);
}

TEST_CASE("non-dense labels remap in sorted order") {
    auto p = write_temp("g_sparse.edges", "10 40\n40 7\n");
    auto lg = load_edge_list(p.string());
    CHECK(lg.graph.node_count() == 3);
    CHECK(lg.original_label == std::vector<std::int64_t>{7, 10, 40});
    // 7->0, 10->1, 40->2
    CHECK(lg.graph.has_edge(1, 2));
    CHECK(lg.graph.has_edge(0, 2));
}

TEST_CASE("nodes directive preserves ids and isolated nodes") {
    auto p = write_temp("g_directive.edges", "# nodes: 5\n0 3\n");
    auto lg = load_edge_list(p.string());
    CHECK(lg.graph.node_count() == 5);
    CHECK(lg.graph.edge_count() == 1);
    CHECK(lg.graph.degree(4) == 0);
    auto bad = write_temp("g_directive_bad.edges", "# nodes: 3\n0 3\n");
    CHECK_THROWS_AS(load_edge_list(bad.string()), DataError);
}

TEST_CASE("malformed lines are rejected") {
    CHECK_THROWS_AS(load_edge_list(write_temp("g_bad1.edges", "0 1 2\n").string()), DataError);
    CHECK_THROWS_AS(load_edge_list(write_temp("g_bad2.edges", "0\n").string()), DataError);
    CHECK_THROWS_AS(load_edge_list(write_temp("g_bad3.edges", "0 x\n").string()), DataError);
    CHECK_THROWS_AS(load_edge_list(write_temp("g_bad4.edges", "-1 2\n").string()), DataError);
}

TEST_CASE("weighted threshold keeps strictly positive weights") {
    auto p = write_temp("g_w.edges", "0 1 1.0\n1 0 2.0\n1 2 0.0\n2 3 -4\n3 4 0.5\n");
    auto wl = load_weighted_edge_list(p.string());
    CHECK(wl.size() == 5);
    auto lg = threshold_positive(wl);
    // kept: (0,1) twice collapsed, (3,4); node 2 only touches dropped edges
    CHECK(lg.graph.node_count() == 4);
    CHECK(lg.graph.edge_count() == 2);
    CHECK(lg.original_label == std::vector<std::int64_t>{0, 1, 3, 4});
}

TEST_CASE("threshold rejects positive self-loops") {
    WeightedEdgeList wl{{2, 2, 1.0}};
    CHECK_THROWS_AS(threshold_positive(wl), DataError);
    WeightedEdgeList dropped{{2, 2, -1.0}, {0, 1, 1.0}};
    CHECK(threshold_positive(dropped).graph.edge_count() == 1);
}

TEST_CASE("degrees on a path graph") {
    auto g = Graph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(g.degree(0) == 1);
    CHECK(g.degree(1) == 2);
    CHECK(g.degree(2) == 2);
    CHECK(g.degree(3) == 1);
}

TEST_CASE("from_edges validates endpoints") {
    CHECK_THROWS_AS(Graph::from_edges(2, {{0, 2}}), DataError);
    CHECK_THROWS_AS(Graph::from_edges(2, {{1, 1}}), DataError);
}

TEST_CASE("bundled karate club network") {
    auto lg = load_edge_list(std::string(SOCNET_DATA_DIR) + "/refs/karate.edges");
    CHECK(lg.graph.node_count() == 34);
    CHECK(lg.graph.edge_count() == 78);
    int maxdeg = 0;
    for (int v = 0; v < lg.graph.node_count(); ++v) maxdeg = std::max(maxdeg, lg.graph.degree(v));
    CHECK(maxdeg == 17);
}

TEST_CASE("save then load round-trips bit-exactly") {
    Rng rng(20240817);
    for (int trial = 0; trial < 25; ++trial) {
        int n = 2 + static_cast<int>(rng.next_below(20));
        std::vector<std::pair<int, int>> edges;
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v)
                if (rng.next_bernoulli(0.2)) edges.emplace_back(u, v);
        auto g = Graph::from_edges(n, edges);
        auto p1 = std::filesystem::temp_directory_path() / "g_rt1.edges";
        auto p2 = std::filesystem::temp_directory_path() / "g_rt2.edges";
        save_edge_list(g, p1.string());
        auto lg = load_edge_list(p1.string());
        CHECK(lg.graph.node_count() == n);
        CHECK(lg.graph.edges() == g.edges());
        save_edge_list(lg.graph, p2.string());
        CHECK(slurp(p1) == slurp(p2));
    }
}
