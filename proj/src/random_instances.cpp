#include "tov/random_instances.hpp"

#include <string>

#include "tov/errors.hpp"

namespace tov {

namespace {

std::vector<std::string> index_labels(int n, const std::string& prefix) {
    std::vector<std::string> labels;
    for (int i = 0; i < n; ++i) labels.push_back(prefix + std::to_string(i));
    return labels;
}

}  // namespace

PosetPtr random_poset(Rng& rng, int max_n) {
    const int n = rng.uniform_int(1, max_n);
    const double density_choices[] = {0.0, 0.15, 0.3, 0.6};
    const double p = density_choices[rng.uniform_int(0, 3)];
    std::vector<std::pair<int, int>> covers;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (rng.bernoulli(p)) covers.emplace_back(i, j);
    return make_poset(index_labels(n, "e"), std::move(covers));
}

PosetPtr random_poset_with_bottom(Rng& rng, int max_n) {
    const PosetPtr base = random_poset(rng, std::max(1, max_n - 1));
    const int n = base->size() + 1;
    std::vector<std::pair<int, int>> covers;
    for (auto [a, b] : base->cover_arcs()) covers.emplace_back(a + 1, b + 1);
    for (int i = 1; i < n; ++i) covers.emplace_back(0, i);
    return make_poset(index_labels(n, "e"), std::move(covers));
}

Measure random_probability(Rng& rng, const PosetPtr& poset) {
    const int n = poset->size();
    if (rng.bernoulli(0.15)) return Measure::dirac(poset, rng.uniform_int(0, n - 1));
    std::vector<double> w(n, 0.0);
    double total = 0.0;
    while (total <= 0.0) {
        total = 0.0;
        for (int i = 0; i < n; ++i) {
            w[i] = rng.bernoulli(0.25) ? 0.0 : rng.exponential();
            total += w[i];
        }
    }
    for (double& x : w) x /= total;
    return Measure(poset, std::move(w));
}

Measure random_measure(Rng& rng, const PosetPtr& poset, double mass) {
    return random_probability(rng, poset).scaled(mass);
}

std::vector<int> random_monotone_map(Rng& rng, const Poset& poset) {
    const int n = poset.size();
    for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<int> f(n, -1);
        bool ok = true;
        for (int e : poset.topological_order()) {
            // Feasible images: upper bounds of the images of all strict
            // predecessors.
            Bitset feasible(static_cast<std::size_t>(n), true);
            for (int p = 0; p < n && ok; ++p)
                if (p != e && poset.leq(p, e)) feasible &= poset.up_row(f[p]);
            const auto options = feasible.elements();
            if (options.empty()) {
                ok = false;
                break;
            }
            f[e] = options[static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<int>(options.size()) - 1))];
        }
        if (ok) return f;
    }
    // Constant maps are always monotone.
    return std::vector<int>(n, rng.uniform_int(0, n - 1));
}

MarkovKernel random_monotone_kernel(Rng& rng, const PosetPtr& poset, int num_maps) {
    const int n = poset->size();
    std::vector<double> weight(num_maps);
    double total = 0.0;
    for (double& w : weight) {
        w = rng.exponential() + 1e-3;
        total += w;
    }
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (int k = 0; k < num_maps; ++k) {
        const std::vector<int> f = random_monotone_map(rng, *poset);
        for (int i = 0; i < n; ++i) rows[i][f[i]] += weight[k] / total;
    }
    return MarkovKernel(poset, std::move(rows));
}

MarkovKernel random_doeblin_kernel(Rng& rng, int n, double eps) {
    if (n < 1 || eps < 0.0 || eps > 1.0) throw BadParams("bad Doeblin parameters");
    const PosetPtr poset = make_antichain(n);
    const Measure psi = random_probability(rng, poset);
    std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) {
        const Measure q = random_probability(rng, poset);
        for (int j = 0; j < n; ++j) rows[i][j] = (1.0 - eps) * q[j] + eps * psi[j];
    }
    return MarkovKernel(poset, std::move(rows));
}

Measure random_dominated_by(Rng& rng, const Measure& mu) {
    const Poset& p = *mu.poset();
    std::vector<double> w(mu.size(), 0.0);
    for (int i = 0; i < mu.size(); ++i) {
        if (mu[i] <= 0.0) continue;
        const auto below = p.down_row(i).elements();
        const int target = below[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(below.size()) - 1))];
        w[target] += mu[i];
    }
    return Measure(mu.poset(), std::move(w));
}

Measure random_dominating(Rng& rng, const Measure& mu) {
    const Poset& p = *mu.poset();
    std::vector<double> w(mu.size(), 0.0);
    for (int i = 0; i < mu.size(); ++i) {
        if (mu[i] <= 0.0) continue;
        const auto above = p.up_row(i).elements();
        const int target = above[static_cast<std::size_t>(
            rng.uniform_int(0, static_cast<int>(above.size()) - 1))];
        w[target] += mu[i];
    }
    return Measure(mu.poset(), std::move(w));
}

}  // namespace tov
