#pragma once

#include <cstdint>
#include <vector>

#include "socnet/graph.hpp"

namespace socnet {

/// G(n, p): every unordered pair is an independent coin.
Graph erdos_renyi(int n, double p, std::uint64_t seed);

/// Preferential attachment. Starts from a star on m+1 nodes, then each new
/// node attaches to m distinct existing nodes, chosen by degree. Always
/// produces exactly m * (n - m) edges.
Graph barabasi_albert(int n, int m, std::uint64_t seed);

/// Small-world ring lattice (k/2 neighbors each side, k even) with each
/// lattice edge rewired to a uniform non-neighbor with probability p.
/// Rewiring that has no eligible endpoint is skipped, so the edge count is
/// always n * k / 2. At p = 0 the average clustering is exactly
/// 3(k-2) / (4(k-1)).
Graph watts_strogatz(int n, int k, double p, std::uint64_t seed);

/// Mean of the reference densities: the G(n, p) maximum-likelihood choice.
double fit_er_p(const std::vector<double>& ref_densities);

/// The m whose expected density 2m(n-m) / (n(n-1)) is closest to the
/// reference; ties go to the smaller m.
int fit_ba_m(int n, double ref_density);

struct WsFit {
    int k = 0;
    double p = 0.0;
    double mean_clustering = 0.0; // at the chosen (k, p)
};

/// Pick the even k whose lattice density k/(n-1) is closest to the
/// reference (ties to smaller k), then sweep p over 0.01..0.50 in steps of
/// 0.01 and keep the p whose mean clustering over trials_per_p sampled
/// graphs is closest to the reference (ties to smaller p).
WsFit fit_ws(int n, double ref_density, double ref_clustering, int trials_per_p = 30, std::uint64_t seed = 0);

} // namespace socnet
