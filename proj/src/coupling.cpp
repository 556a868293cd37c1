#include "tov/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "tov/errors.hpp"
#include "tov/rng.hpp"

namespace tov {

namespace {

constexpr double kResidualFloor = 1e-12;

// Shared construction used for both the dense Coupling and the sparse rows of
// CoupledKernel: optimal flow on ordered pairs, independent residuals scaled
// by 1/(1-a). When the moved mass is within kResidualFloor of the whole, the
// flow is renormalized instead so the support stays inside the order graph.
std::map<std::pair<int, int>, double> order_maximal_entries(const Measure& mu,
                                                            const Measure& nu) {
    const Measure pm = require_probability(mu);
    const Measure pn = require_probability(nu);
    const TransportPlan plan = order_transport(pm, pn);
    const double a = plan.moved_mass;

    std::map<std::pair<int, int>, double> entries;
    if (1.0 - a <= kResidualFloor) {
        for (const auto& [x, y, w] : plan.pair_flows)
            entries[{x, y}] += w / a;
        return entries;
    }

    for (const auto& [x, y, w] : plan.pair_flows) entries[{x, y}] += w;
    const Measure mu_res = pm.minus(plan.mu_part);
    const Measure nu_res = pn.minus(plan.nu_part);
    const double scale = 1.0 / (1.0 - a);
    for (int i = 0; i < pm.size(); ++i) {
        if (mu_res[i] <= 0.0) continue;
        for (int j = 0; j < pn.size(); ++j) {
            if (nu_res[j] <= 0.0) continue;
            entries[{i, j}] += mu_res[i] * nu_res[j] * scale;
        }
    }
    return entries;
}

}  // namespace

Coupling::Coupling(Measure mu, Measure nu, std::vector<double> joint)
    : mu_(std::move(mu)), nu_(std::move(nu)), n_(mu_.size()), joint_(std::move(joint)) {}

Coupling Coupling::from_matrix(Measure mu, Measure nu, std::vector<double> joint) {
    require_same_poset(mu, nu);
    const int n = mu.size();
    if (joint.size() != static_cast<std::size_t>(n) * n)
        throw DimMismatch("joint matrix has wrong size");
    for (double& w : joint) {
        if (std::isnan(w) || w < -1e-9)
            throw BadParams("negative joint weight " + std::to_string(w));
        if (w < 0.0) w = 0.0;
    }
    for (int i = 0; i < n; ++i) {
        double row_sum = 0.0;
        double col_sum = 0.0;
        for (int j = 0; j < n; ++j) {
            row_sum += joint[static_cast<std::size_t>(i) * n + j];
            col_sum += joint[static_cast<std::size_t>(j) * n + i];
        }
        if (std::abs(row_sum - mu[i]) > kMassTol)
            throw BadParams("row " + std::to_string(i) + " marginal off by " +
                            std::to_string(row_sum - mu[i]));
        if (std::abs(col_sum - nu[i]) > kMassTol)
            throw BadParams("column " + std::to_string(i) + " marginal off by " +
                            std::to_string(col_sum - nu[i]));
    }
    return Coupling(std::move(mu), std::move(nu), std::move(joint));
}

double Coupling::diagonal_mass() const {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += at(i, i);
    return s;
}

double Coupling::ordered_mass() const {
    const Poset& p = *poset();
    double s = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (p.leq(i, j)) s += at(i, j);
    return s;
}

Coupling maximal_coupling(const Measure& mu, const Measure& nu) {
    const Measure pm = require_probability(mu);
    const Measure pn = require_probability(nu);
    const int n = pm.size();
    const Measure common = inf_measure(pm, pn);
    const double a = common.mass();

    std::vector<double> joint(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i) joint[static_cast<std::size_t>(i) * n + i] = common[i];
    if (1.0 - a > kResidualFloor) {
        const Measure mu_res = pm.minus(common);
        const Measure nu_res = pn.minus(common);
        const double scale = 1.0 / (1.0 - a);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                joint[static_cast<std::size_t>(i) * n + j] +=
                    mu_res[i] * nu_res[j] * scale;
    }
    return Coupling::from_matrix(pm, pn, std::move(joint));
}

Coupling order_maximal_coupling(const Measure& mu, const Measure& nu) {
    const Measure pm = require_probability(mu);
    const Measure pn = require_probability(nu);
    const int n = pm.size();
    std::vector<double> joint(static_cast<std::size_t>(n) * n, 0.0);
    for (const auto& [pos, w] : order_maximal_entries(pm, pn))
        joint[static_cast<std::size_t>(pos.first) * n + pos.second] += w;
    return Coupling::from_matrix(pm, pn, std::move(joint));
}

Coupling nachbin_strassen_coupling(const Measure& mu, const Measure& nu) {
    const Measure pm = require_probability(mu);
    const Measure pn = require_probability(nu);
    if (!stochastically_dominated(pm, pn))
        throw NotDominated("first measure is not stochastically dominated");
    return order_maximal_coupling(pm, pn);
}

CoupledKernel::CoupledKernel(MarkovKernel p) : kernel_(std::move(p)) {
    if (!is_monotone(kernel_))
        throw NotMonotone("coupled kernel requires a monotone base kernel");
    rows_.resize(static_cast<std::size_t>(pair_count()));
}

const CoupledRow& CoupledKernel::row(int pair_idx) const {
    if (pair_idx < 0 || pair_idx >= pair_count())
        throw IndexError("pair index out of range");
    auto& slot = rows_[static_cast<std::size_t>(pair_idx)];
    if (!slot) {
        const auto [x, y] = pair_state(pair_idx);
        const int n = base_size();
        auto built = std::make_unique<CoupledRow>();
        double total = 0.0;
        for (const auto& [pos, w] : order_maximal_entries(kernel_.row(x), kernel_.row(y))) {
            if (w <= 0.0) continue;
            built->entries.emplace_back(pos.first * n + pos.second, w);
            total += w;
            built->cdf.push_back(total);
        }
        if (std::abs(total - 1.0) > kMassTol)
            throw AssertionFailure("coupled row mass " + std::to_string(total));
        slot = std::move(built);
    }
    return *slot;
}

int CoupledKernel::step(int pair_idx, double u) const {
    const CoupledRow& r = row(pair_idx);
    const auto it = std::upper_bound(r.cdf.begin(), r.cdf.end(), u);
    const std::size_t k = std::min(static_cast<std::size_t>(it - r.cdf.begin()),
                                   r.entries.size() - 1);
    return r.entries[k].first;
}

CoupledKernel absorbing_coupled_kernel(const MarkovKernel& p) {
    return CoupledKernel(p);
}

CoupledChainStats simulate_coupled_chain(const CoupledKernel& m, int x0, int y0,
                                         int horizon, std::size_t replications,
                                         std::uint64_t seed) {
    const int n = m.base_size();
    if (x0 < 0 || x0 >= n || y0 < 0 || y0 >= n)
        throw IndexError("start state out of range");
    if (horizon < 0) throw BadParams("negative horizon");

    const Poset& poset = *m.base_poset();
    // first_*[r] = first time the coordinates are ordered; horizon+1 if never.
    std::vector<std::size_t> count_first_leq(static_cast<std::size_t>(horizon) + 2, 0);
    std::vector<std::size_t> count_first_geq(static_cast<std::size_t>(horizon) + 2, 0);

    for (std::size_t r = 0; r < replications; ++r) {
        Rng rng(mix_seed(seed, r));
        int idx = m.pair_index(x0, y0);
        int first_leq = poset.leq(x0, y0) ? 0 : horizon + 1;
        int first_geq = poset.leq(y0, x0) ? 0 : horizon + 1;
        for (int t = 1; t <= horizon; ++t) {
            if (first_leq <= horizon && first_geq <= horizon) break;
            idx = m.step(idx, rng.uniform01());
            const auto [x, y] = m.pair_state(idx);
            if (first_leq > horizon && poset.leq(x, y)) first_leq = t;
            if (first_geq > horizon && poset.leq(y, x)) first_geq = t;
        }
        ++count_first_leq[static_cast<std::size_t>(first_leq)];
        ++count_first_geq[static_cast<std::size_t>(first_geq)];
    }

    CoupledChainStats stats;
    stats.horizon = horizon;
    stats.replications = replications;
    const double R = static_cast<double>(replications);
    std::size_t tail_leq = replications;
    std::size_t tail_geq = replications;
    for (int t = 0; t <= horizon; ++t) {
        tail_leq -= count_first_leq[static_cast<std::size_t>(t)];
        tail_geq -= count_first_geq[static_cast<std::size_t>(t)];
        const double p1 = static_cast<double>(tail_leq) / R;
        const double p2 = static_cast<double>(tail_geq) / R;
        stats.p_never_leq.push_back(p1);
        stats.p_never_geq.push_back(p2);
        stats.se_leq.push_back(std::sqrt(p1 * (1.0 - p1) / R));
        stats.se_geq.push_back(std::sqrt(p2 * (1.0 - p2) / R));
    }
    return stats;
}

}  // namespace tov
