#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "socnet/baselines.hpp"
#include "socnet/errors.hpp"
#include "socnet/metrics.hpp"

using namespace socnet;

TEST_CASE("random graphs are deterministic in the seed") {
    auto a = erdos_renyi(30, 0.3, 5);
    auto b = erdos_renyi(30, 0.3, 5);
    CHECK(a.edges() == b.edges());
    CHECK(erdos_renyi(30, 0.3, 6).edges() != a.edges());

    CHECK(barabasi_albert(40, 3, 9).edges() == barabasi_albert(40, 3, 9).edges());
    CHECK(watts_strogatz(40, 6, 0.2, 9).edges() == watts_strogatz(40, 6, 0.2, 9).edges());
}

TEST_CASE("edge probability drives the random graph edge count") {
    CHECK(erdos_renyi(20, 0.0, 1).edge_count() == 0);
    CHECK(erdos_renyi(20, 1.0, 1).edge_count() == 190);

    // 2000 draws of Binomial(1225, 0.2): the mean lands within ~4 sigma
    double total = 0.0;
    for (int s = 0; s < 2000; ++s) total += erdos_renyi(50, 0.2, s).edge_count();
    double mean = total / 2000.0;
    double sd_of_mean = std::sqrt(1225 * 0.2 * 0.8 / 2000.0);
    CHECK(std::fabs(mean - 245.0) < 4.5 * sd_of_mean);
}

TEST_CASE("preferential attachment always yields m*(n-m) edges") {
    for (std::uint64_t s = 0; s < 200; ++s) {
        auto g = barabasi_albert(50, 5, s);
        REQUIRE(g.edge_count() == 225);
    }
    CHECK(barabasi_albert(10, 2, 3).edge_count() == 16);
    CHECK(barabasi_albert(6, 5, 1).edge_count() == 5); // pure star, no growth stage

    // every node keeps at least the m edges it joined with
    auto g = barabasi_albert(80, 4, 11);
    for (int v = 4; v < 80; ++v) CHECK(g.degree(v) >= 4);

    CHECK_THROWS_AS(barabasi_albert(5, 0, 1), DataError);
    CHECK_THROWS_AS(barabasi_albert(5, 5, 1), DataError);
}

TEST_CASE("preferential attachment produces right-skewed degrees") {
    std::vector<double> degrees;
    double max_degree = 0;
    for (std::uint64_t s = 0; s < 300; ++s) {
        auto g = barabasi_albert(100, 3, s);
        for (int v = 0; v < 100; ++v) {
            degrees.push_back(g.degree(v));
            max_degree = std::max(max_degree, static_cast<double>(g.degree(v)));
        }
    }
    std::nth_element(degrees.begin(), degrees.begin() + degrees.size() / 2, degrees.end());
    double median = degrees[degrees.size() / 2];
    CHECK(max_degree > 4 * median); // hubs dwarf the typical node
}

TEST_CASE("small-world graphs always keep n*k/2 edges") {
    for (double p : {0.0, 0.15, 1.0})
        for (std::uint64_t s = 0; s < 100; ++s)
            REQUIRE(watts_strogatz(50, 10, p, s).edge_count() == 250);
    CHECK_THROWS_AS(watts_strogatz(50, 7, 0.1, 1), DataError);
    CHECK_THROWS_AS(watts_strogatz(50, 50, 0.1, 1), DataError);
    CHECK_THROWS_AS(watts_strogatz(50, 10, 1.5, 1), DataError);
}

TEST_CASE("ring lattice clustering matches the closed form") {
    // 3(k-2) / (4(k-1)), independent of n
    auto lattice_value = [](int k) { return 3.0 * (k - 2) / (4.0 * (k - 1)); };
    CHECK(avg_clustering(watts_strogatz(50, 10, 0.0, 1)) == doctest::Approx(lattice_value(10)).epsilon(1e-12));
    CHECK(avg_clustering(watts_strogatz(50, 10, 0.0, 1)) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(avg_clustering(watts_strogatz(30, 6, 0.0, 2)) == doctest::Approx(lattice_value(6)).epsilon(1e-12));
    CHECK(avg_clustering(watts_strogatz(41, 4, 0.0, 3)) == doctest::Approx(lattice_value(4)).epsilon(1e-12));

    // at p = 0 every node has exactly k neighbors
    auto g = watts_strogatz(24, 8, 0.0, 4);
    for (int v = 0; v < 24; ++v) CHECK(g.degree(v) == 8);
}

TEST_CASE("full rewiring destroys lattice clustering") {
    double mean = 0.0;
    for (std::uint64_t s = 0; s < 30; ++s) mean += avg_clustering(watts_strogatz(50, 10, 1.0, s));
    mean /= 30.0;
    CHECK(mean < 0.25);
    CHECK(mean > 0.0);
}

TEST_CASE("random graph fit is the mean reference density") {
    // eight reference friendship networks: density = 2E / (N(N-1))
    std::vector<std::pair<int, int>> refs{{31, 63},  {36, 91},  {34, 78},  {67, 142},
                                          {39, 158}, {39, 223}, {31, 218}, {70, 274}};
    std::vector<double> densities;
    for (auto [n, e] : refs) densities.push_back(2.0 * e / (static_cast<double>(n) * (n - 1)));
    double p = fit_er_p(densities);
    CHECK(p == doctest::Approx(0.1974545).epsilon(1e-6));
    CHECK_THROWS_AS(fit_er_p({}), DataError);
}

TEST_CASE("preferential attachment fit picks the closest expected density") {
    CHECK(fit_ba_m(50, 0.1974545) == 5);           // 225/1225 beats 264/1225
    CHECK(fit_ba_m(5, 0.6) == 2);                  // exact match
    CHECK(fit_ba_m(4, 0.5) == 1);                  // m=1 and m=3 tie, smaller wins
    CHECK(fit_ba_m(50, 0.0) == 1);
    CHECK(fit_ba_m(50, 1.0) == 25);                // peak of m(n-m)
}

TEST_CASE("small-world fit matches density via k and clustering via p") {
    // k = 10 gives lattice density 10/49, the closest even value to the
    // reference 0.1974545
    WsFit low = fit_ws(24, 10.0 / 23.0, 0.55, 6, 17);
    CHECK(low.k == 10);
    CHECK(low.p >= 0.01);
    CHECK(low.p <= 0.15); // near-lattice clustering wants little rewiring

    WsFit high = fit_ws(24, 10.0 / 23.0, 0.12, 6, 17);
    CHECK(high.k == 10);
    CHECK(high.p >= 0.25); // deep rewiring needed to shed clustering
    CHECK(std::fabs(high.mean_clustering - 0.12) <= std::fabs(low.mean_clustering - 0.12));

    CHECK(fit_ws(50, 0.1974545, 0.5, 2, 1).k == 10);
}
