#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "tov/kernel.hpp"

namespace tov {

// ---------------------------------------------------------------------------
// Averaging chain driven by fair coin flips: the next state is the midpoint
// of the current state and the shock. Handled exactly on dyadic grids.
// ---------------------------------------------------------------------------

inline constexpr int kMaxDyadicDepth = 20;

// Distribution supported on the dyadic grid k / 2^depth in [0, 1].
struct DyadicDistribution {
    int depth = 0;
    // (offset k, weight), sorted by offset.
    std::vector<std::pair<std::int64_t, double>> atoms;

    double mass() const;
};

// Exact law of the averaging chain after t steps from x0 = num / 2^log2_den:
// uniform on the 2^t points x0 / 2^t + k / 2^t. Throws DepthExceeded when
// log2_den + t exceeds the depth cap, BadParams when x0 is outside [0, 1].
DyadicDistribution bernoulli_exact_distribution(std::int64_t num, int log2_den,
                                                int t);

// The depth cap for the gamma computation is lower: it materializes the union
// support as a dense chain poset of 2^t + 1 elements.
inline constexpr int kMaxBernoulliGammaDepth = 14;

// Exact total ordered variation between the t-step laws from 0 and 1,
// computed on the induced chain poset. Equals 2^(-t).
double bernoulli_gamma(int t);

// Ordered mass of the antithetic one-step coupling of the laws from 1 and 0,
// by exact enumeration of the shock. Equals 1/2, which lower-bounds the
// ordered Dobrushin coefficient of the averaging chain.
double bernoulli_coupling_sigma_bound();

// Exact enumeration for the comonotone (shared-shock) variant; its ordered
// mass is 0, showing the antithetic choice matters.
double bernoulli_comonotone_ordered_mass();

// ---------------------------------------------------------------------------
// Grid-discretized models
// ---------------------------------------------------------------------------

// Kernel on a finite grid of a real interval together with its provenance.
struct GridModel {
    std::vector<double> grid;
    MarkovKernel kernel;
    std::string name;
    std::map<std::string, double> params;
    // Probability mass of one shock cell: the discretization slack that
    // minorization bounds must absorb.
    double shock_cell_mass = 0.0;
};

// Lognormal shock discretized into equal-probability quantile cells
// (midpoint rule).
struct LognormalShock {
    double log_mean = 0.0;
    double log_sd = 1.0;
    int cells = 256;
};

// Inventory chain: stock depletes by a random demand, truncated at zero, and
// is restocked to capacity K when empty. Discretized on a uniform grid with
// the identity order (the chain is not order-monotone in the usual order).
// Mass lands on the nearest grid point at or below the image, which keeps
// the restocking minorization exact: every row places at least
// P{W >= K} on state zero.
GridModel inventory_model(double capacity, int grid_size,
                          const LognormalShock& shock = {});

// Chain-lattice kernel satisfying a one-step splitting condition: with
// probability s1 every state jumps to the bottom, with probability s2 to the
// top, otherwise a lazy upward step. Monotone by construction and
// sigma(P) >= s1 * s2.
GridModel splitting_lattice_model(int n, double s1, double s2);

// Standard normal CDF and its inverse (bisection, deterministic).
double normal_cdf(double x);
double normal_quantile(double p);

}  // namespace tov
