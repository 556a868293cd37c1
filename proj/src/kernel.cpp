#include "tov/kernel.hpp"

#include <cmath>
#include <string>

#include "tov/errors.hpp"
#include "tov/random_instances.hpp"
#include "tov/rng.hpp"

namespace tov {

namespace {
constexpr double kSigmaCutoff = 1e-6;
constexpr double kFixedPointStep = 1e-10;
constexpr double kResidualBound = 1e-8;
constexpr double kCheckTol = 1e-9;
constexpr int kMaxFixedPointIters = 200000;
}  // namespace

MarkovKernel::MarkovKernel(PosetPtr poset, std::vector<std::vector<double>> rows)
    : poset_(std::move(poset)), rows_(std::move(rows)) {
    if (!poset_) throw DimMismatch("kernel requires a poset");
    n_ = poset_->size();
    if (static_cast<int>(rows_.size()) != n_)
        throw DimMismatch("kernel has " + std::to_string(rows_.size()) +
                          " rows for a poset of size " + std::to_string(n_));
    for (int i = 0; i < n_; ++i) {
        auto& r = rows_[i];
        if (static_cast<int>(r.size()) != n_)
            throw DimMismatch("kernel row " + std::to_string(i) + " has wrong length");
        double sum = 0.0;
        for (double& x : r) {
            if (std::isnan(x) || x < -1e-9)
                throw BadParams("negative kernel entry in row " + std::to_string(i));
            if (x < 0.0) x = 0.0;
            sum += x;
        }
        if (std::abs(sum - 1.0) > kMassTol)
            throw MassMismatch("kernel row " + std::to_string(i) + " sums to " +
                               std::to_string(sum));
        if (sum != 1.0)
            for (double& x : r) x /= sum;
    }
}

MarkovKernel MarkovKernel::identity(PosetPtr poset) {
    const int n = poset->size();
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) rows[i][i] = 1.0;
    return MarkovKernel(std::move(poset), std::move(rows));
}

Measure MarkovKernel::row(int i) const {
    if (i < 0 || i >= n_) throw IndexError("kernel row out of range");
    return Measure(poset_, rows_[i]);
}

Measure apply(const Measure& mu, const MarkovKernel& p) {
    if (mu.poset() != p.poset() && !mu.poset()->same_order_as(*p.poset()))
        throw DimMismatch("measure and kernel posets differ");
    const int n = p.size();
    std::vector<double> out(n, 0.0);
    for (int i = 0; i < n; ++i) {
        const double w = mu[i];
        if (w == 0.0) continue;
        for (int j = 0; j < n; ++j) out[j] += w * p.at(i, j);
    }
    return Measure(mu.poset(), std::move(out));
}

MarkovKernel compose(const MarkovKernel& p, int m) {
    if (m < 1) throw BadParams("kernel power must be at least 1");
    const int n = p.size();
    std::vector<std::vector<double>> acc = p.rows();
    for (int step = 1; step < m; ++step) {
        std::vector<std::vector<double>> next(n, std::vector<double>(n, 0.0));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k) {
                const double w = acc[i][k];
                if (w == 0.0) continue;
                for (int j = 0; j < n; ++j) next[i][j] += w * p.at(k, j);
            }
        acc = std::move(next);
    }
    return MarkovKernel(p.poset(), std::move(acc));
}

Measure joint_distribution(const Measure& mu, const MarkovKernel& p,
                           std::size_t limit) {
    if (mu.poset() != p.poset() && !mu.poset()->same_order_as(*p.poset()))
        throw DimMismatch("measure and kernel posets differ");
    const int n = p.size();
    const PosetPtr product = make_product_poset(mu.poset(), mu.poset(), limit);
    std::vector<double> w(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            w[static_cast<std::size_t>(i) * n + j] = mu[i] * p.at(i, j);
    return Measure(product, std::move(w));
}

bool is_monotone(const MarkovKernel& p) {
    const Poset& poset = *p.poset();
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j)
            if (i != j && poset.leq(i, j) &&
                !stochastically_dominated(p.row(i), p.row(j)))
                return false;
    return true;
}

double dobrushin_coefficient(const MarkovKernel& p) {
    double sigma = 1.0;
    for (int x = 0; x < p.size(); ++x)
        for (int y = 0; y < p.size(); ++y) {
            if (x == y) continue;
            sigma = std::min(sigma, ordered_affinity(p.row(x), p.row(y)));
        }
    return std::max(0.0, sigma);
}

namespace {

CheckReport run_pair_check(const MarkovKernel& p, int trials, std::uint64_t seed,
                           double factor, const char* what) {
    if (!is_monotone(p)) throw NotMonotone("kernel is not monotone");
    Rng rng(seed);
    CheckReport report;
    report.trials = trials;
    report.max_slack = -1.0;
    for (int t = 0; t < trials; ++t) {
        const Measure mu = random_probability(rng, p.poset());
        const Measure nu = random_probability(rng, p.poset());
        const double before = gamma_distance(mu, nu);
        const double after = gamma_distance(apply(mu, p), apply(nu, p));
        const double rhs = factor * before;
        if (after > rhs + kCheckTol)
            throw AssertionFailure(std::string(what) + " violated at trial " +
                                   std::to_string(t) + ": " + std::to_string(after) +
                                   " > " + std::to_string(rhs));
        if (rhs > 1e-12)
            report.max_ratio = std::max(report.max_ratio, after / rhs);
        report.max_slack = std::max(report.max_slack, after - rhs);
    }
    return report;
}

}  // namespace

CheckReport contraction_check(const MarkovKernel& p, int trials, std::uint64_t seed) {
    const double sigma = dobrushin_coefficient(p);
    return run_pair_check(p, trials, seed, 1.0 - sigma, "gamma contraction");
}

CheckReport nonexpansiveness_check(const MarkovKernel& p, int trials,
                                   std::uint64_t seed) {
    return run_pair_check(p, trials, seed, 1.0, "gamma nonexpansiveness");
}

CheckReport sigma_measure_pairs_check(const MarkovKernel& p, int trials,
                                      std::uint64_t seed) {
    if (!is_monotone(p)) throw NotMonotone("kernel is not monotone");
    const double sigma = dobrushin_coefficient(p);
    Rng rng(seed);
    CheckReport report;
    report.trials = trials;
    report.max_slack = -1.0;
    for (int t = 0; t < trials; ++t) {
        const Measure mu = random_probability(rng, p.poset());
        const Measure nu = random_probability(rng, p.poset());
        const double a = ordered_affinity(apply(mu, p), apply(nu, p));
        if (a < sigma - kCheckTol)
            throw AssertionFailure("measure-pair affinity " + std::to_string(a) +
                                   " fell below the Dirac infimum " +
                                   std::to_string(sigma));
        report.max_slack = std::max(report.max_slack, sigma - a);
    }
    return report;
}

StabilityCertificate certify_stationary(const MarkovKernel& p, int m_max) {
    if (m_max < 1) throw BadParams("power cap must be at least 1");
    if (!is_monotone(p)) throw NotMonotone("kernel is not monotone");

    int m = 0;
    double sigma_m = 0.0;
    MarkovKernel pm = p;
    for (int k = 1; k <= m_max; ++k) {
        if (k > 1) pm = compose(p, k);
        const double s = dobrushin_coefficient(pm);
        if (s > kSigmaCutoff) {
            m = k;
            sigma_m = s;
            break;
        }
    }
    if (m == 0)
        throw NoCertificate("no power up to " + std::to_string(m_max) +
                            " has a positive ordered Dobrushin coefficient");

    Measure mu = Measure::uniform(p.poset());
    for (int iter = 0; iter < kMaxFixedPointIters; ++iter) {
        Measure next = apply(mu, pm);
        const double step = gamma_distance(next, mu);
        mu = std::move(next);
        if (step < kFixedPointStep) {
            const double residual = gamma_distance(apply(mu, p), mu);
            if (residual <= kResidualBound)
                return {m, sigma_m, 1.0 - sigma_m, mu, residual};
        }
    }
    throw NoCertificate("fixed-point iteration did not converge");
}

}  // namespace tov
