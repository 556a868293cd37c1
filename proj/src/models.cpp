#include "tov/models.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tov/errors.hpp"

namespace tov {

double DyadicDistribution::mass() const {
    double s = 0.0;
    for (const auto& [k, w] : atoms) s += w;
    return s;
}

DyadicDistribution bernoulli_exact_distribution(std::int64_t num, int log2_den,
                                                int t) {
    if (log2_den < 0 || t < 0) throw BadParams("negative depth");
    if (log2_den + t > kMaxDyadicDepth)
        throw DepthExceeded("dyadic depth " + std::to_string(log2_den + t) +
                            " exceeds cap " + std::to_string(kMaxDyadicDepth));
    const std::int64_t den = std::int64_t{1} << log2_den;
    if (num < 0 || num > den) throw BadParams("start point outside [0, 1]");

    // After t steps the state is x0 / 2^t plus an independent uniform dyadic
    // offset: each shock string contributes k / 2^t for a distinct k.
    DyadicDistribution dist;
    dist.depth = log2_den + t;
    const std::int64_t count = std::int64_t{1} << t;
    const double w = 1.0 / static_cast<double>(count);
    dist.atoms.reserve(static_cast<std::size_t>(count));
    for (std::int64_t k = 0; k < count; ++k)
        dist.atoms.emplace_back(num + k * den, w);
    return dist;
}

double bernoulli_gamma(int t) {
    if (t < 0) throw BadParams("negative horizon");
    if (t > kMaxBernoulliGammaDepth)
        throw DepthExceeded("gamma horizon " + std::to_string(t) + " exceeds cap " +
                            std::to_string(kMaxBernoulliGammaDepth));
    const DyadicDistribution from0 = bernoulli_exact_distribution(0, 0, t);
    const DyadicDistribution from1 = bernoulli_exact_distribution(1, 0, t);

    // Union support is the full grid {0, ..., 2^t} / 2^t; weights are exact
    // dyadics, so every sum below is exact in double arithmetic.
    const std::int64_t points = (std::int64_t{1} << t) + 1;
    const PosetPtr chain = make_chain(static_cast<int>(points));
    std::vector<double> w0(static_cast<std::size_t>(points), 0.0);
    std::vector<double> w1(static_cast<std::size_t>(points), 0.0);
    for (const auto& [k, w] : from0.atoms) w0[static_cast<std::size_t>(k)] = w;
    for (const auto& [k, w] : from1.atoms) w1[static_cast<std::size_t>(k)] = w;

    return gamma_distance(Measure(chain, std::move(w0)),
                          Measure(chain, std::move(w1)));
}

double bernoulli_coupling_sigma_bound() {
    // Antithetic shocks: from 1 the chain sees W, from 0 it sees 1 - W.
    double ordered = 0.0;
    for (int w = 0; w <= 1; ++w) {
        const double x = (1.0 + w) / 2.0;
        const double y = (1.0 - w) / 2.0;
        if (x <= y) ordered += 0.5;
    }
    return ordered;
}

double bernoulli_comonotone_ordered_mass() {
    double ordered = 0.0;
    for (int w = 0; w <= 1; ++w) {
        const double x = (1.0 + w) / 2.0;
        const double y = (0.0 + w) / 2.0;
        if (x <= y) ordered += 0.5;
    }
    return ordered;
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0)) throw BadParams("quantile level outside (0, 1)");
    double lo = -40.0, hi = 40.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (normal_cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

GridModel inventory_model(double capacity, int grid_size,
                          const LognormalShock& shock) {
    if (!(capacity > 0.0)) throw BadParams("capacity must be positive");
    if (grid_size < 2) throw BadParams("grid needs at least two points");
    if (shock.cells < 1 || !(shock.log_sd > 0.0)) throw BadParams("bad shock parameters");

    const int g = grid_size;
    const double step = capacity / (g - 1);
    std::vector<double> grid(g);
    std::vector<std::string> labels(g);
    for (int i = 0; i < g; ++i) {
        grid[i] = step * i;
        labels[i] = "x" + std::to_string(i);
    }

    std::vector<double> shocks(shock.cells);
    for (int q = 0; q < shock.cells; ++q) {
        const double level = (q + 0.5) / shock.cells;
        shocks[q] = std::exp(shock.log_mean + shock.log_sd * normal_quantile(level));
    }
    const double cell = 1.0 / shock.cells;

    const PosetPtr poset = make_antichain(g);
    std::vector<std::vector<double>> rows(g, std::vector<double>(g, 0.0));
    for (int i = 0; i < g; ++i) {
        // An empty inventory is restocked to capacity before demand hits.
        const double source = (i == 0) ? capacity : grid[i];
        for (double w : shocks) {
            const double image = std::max(source - w, 0.0);
            int target = static_cast<int>(std::floor(image / step));
            target = std::clamp(target, 0, g - 1);
            rows[i][target] += cell;
        }
    }

    GridModel model{std::move(grid), MarkovKernel(poset, std::move(rows)),
                    "inventory",
                    {{"capacity", capacity},
                     {"grid_size", static_cast<double>(g)},
                     {"shock_cells", static_cast<double>(shock.cells)},
                     {"shock_log_mean", shock.log_mean},
                     {"shock_log_sd", shock.log_sd}},
                    cell};
    return model;
}

GridModel splitting_lattice_model(int n, double s1, double s2) {
    if (n < 2) throw BadParams("lattice needs at least two states");
    if (!(s1 > 0.0 && s1 < 1.0 && s2 > 0.0 && s2 < 1.0) || s1 + s2 > 1.0)
        throw BadParams("split probabilities must lie in (0,1) with s1 + s2 <= 1");

    const double rest = 1.0 - s1 - s2;
    const PosetPtr poset = make_chain(n);
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        rows[i][0] += s1;
        rows[i][n - 1] += s2;
        // Lazy upward walk, reflecting at the top. A mixture of the four
        // monotone maps const-bottom, const-top, identity, shift-up.
        rows[i][i] += rest * 0.5;
        rows[i][std::min(i + 1, n - 1)] += rest * 0.5;
    }

    std::vector<double> grid(n);
    for (int i = 0; i < n; ++i) grid[i] = i;
    GridModel model{std::move(grid), MarkovKernel(poset, std::move(rows)),
                    "splitting",
                    {{"n", static_cast<double>(n)}, {"s1", s1}, {"s2", s2}},
                    0.0};
    return model;
}

}  // namespace tov
