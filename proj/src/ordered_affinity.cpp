#include "tov/ordered_affinity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "tov/errors.hpp"
#include "tov/maxflow.hpp"

namespace tov {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kFlowDust = 1e-14;

// Transport network over the order graph. Node layout: x-copies 0..n-1,
// y-copies n..2n-1, source 2n, sink 2n+1. Order arcs are routed through the
// poset's cover arcs (y_a -> y_b), so the arc count stays near-linear on
// chains instead of quadratic.
struct TransportSolve {
    int n = 0;
    std::vector<int> src_arc;   // -1 if mu_i == 0
    std::vector<int> pass_arc;  // x_i -> y_i, -1 if mu_i == 0
    std::vector<int> sink_arc;  // -1 if nu_j == 0
    std::vector<std::pair<int, int>> cover_arc;  // (arc index, head element)
    FlowNetwork net{2, 0, 1};
    FlowResult flow;

    double mu_mass = 0.0;

    TransportSolve(const Measure& mu, const Measure& nu) {
        require_same_poset(mu, nu);
        const Poset& p = *mu.poset();
        n = p.size();
        const int s = 2 * n;
        const int t = 2 * n + 1;
        net = FlowNetwork(2 * n + 2, s, t);
        src_arc.assign(n, -1);
        pass_arc.assign(n, -1);
        sink_arc.assign(n, -1);
        for (int i = 0; i < n; ++i) {
            mu_mass += mu[i];
            if (mu[i] > 0.0) {
                src_arc[i] = net.add_arc(s, i, mu[i]);
                pass_arc[i] = net.add_arc(i, n + i, kInf);
            }
        }
        for (auto [a, b] : p.cover_arcs())
            cover_arc.emplace_back(net.add_arc(n + a, n + b, kInf), b);
        for (int j = 0; j < n; ++j)
            if (nu[j] > 0.0) sink_arc[j] = net.add_arc(n + j, t, nu[j]);
        flow = max_flow(net);
    }

    // The increasing closure of the source-side x-copies in the min cut
    // attains the up-set supremum.
    ElementSet witness(const Poset& p) const {
        ElementSet reached_x(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            if (flow.min_cut.get(i)) reached_x.set(i);
        return increase_closure(p, reached_x);
    }

    double sup_value() const { return std::max(0.0, mu_mass - flow.value); }

    Measure moved_mu(const Measure& mu) const {
        std::vector<double> w(n, 0.0);
        for (int i = 0; i < n; ++i)
            if (src_arc[i] >= 0) w[i] = flow.arc_flow[src_arc[i]];
        return Measure(mu.poset(), std::move(w));
    }

    Measure moved_nu(const Measure& nu) const {
        std::vector<double> w(n, 0.0);
        for (int j = 0; j < n; ++j)
            if (sink_arc[j] >= 0) w[j] = flow.arc_flow[sink_arc[j]];
        return Measure(nu.poset(), std::move(w));
    }

    // Path decomposition of the optimal flow into ordered pairs (x, y).
    // Deterministic: sources ascending, sink arcs preferred, cover arcs in
    // insertion order.
    std::vector<std::tuple<int, int, double>> decompose() const {
        std::vector<double> rem = flow.arc_flow;
        std::vector<std::vector<std::pair<int, int>>> out_cover(n);
        for (auto [arc, head] : cover_arc) {
            const int tail = net.arcs()[arc].from - n;
            out_cover[tail].emplace_back(arc, head);
        }

        std::vector<std::tuple<int, int, double>> pairs;
        for (int i = 0; i < n; ++i) {
            if (pass_arc[i] < 0) continue;
            while (rem[pass_arc[i]] > kFlowDust) {
                std::vector<int> path{pass_arc[i]};
                int cur = i;
                while (sink_arc[cur] < 0 || rem[sink_arc[cur]] <= kFlowDust) {
                    bool advanced = false;
                    for (auto [arc, head] : out_cover[cur]) {
                        if (rem[arc] > kFlowDust) {
                            path.push_back(arc);
                            cur = head;
                            advanced = true;
                            break;
                        }
                    }
                    if (!advanced) break;  // only dust remains downstream
                }
                if (sink_arc[cur] < 0 || rem[sink_arc[cur]] <= kFlowDust) {
                    rem[pass_arc[i]] = 0.0;  // drop the dust, conservation noise
                    break;
                }
                path.push_back(sink_arc[cur]);
                double amt = kInf;
                for (int arc : path) amt = std::min(amt, rem[arc]);
                for (int arc : path) rem[arc] -= amt;
                pairs.emplace_back(i, cur, amt);
            }
        }

        // Merge duplicate (x, y) contributions from distinct paths.
        std::sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) {
            return std::make_pair(std::get<0>(a), std::get<1>(a)) <
                   std::make_pair(std::get<0>(b), std::get<1>(b));
        });
        std::vector<std::tuple<int, int, double>> merged;
        for (const auto& [x, y, w] : pairs) {
            if (!merged.empty() && std::get<0>(merged.back()) == x &&
                std::get<1>(merged.back()) == y)
                std::get<2>(merged.back()) += w;
            else
                merged.emplace_back(x, y, w);
        }
        return merged;
    }
};

void require_equal_mass(const Measure& mu, const Measure& nu) {
    if (std::abs(mu.mass() - nu.mass()) > kMassTol)
        throw MassMismatch("masses differ: " + std::to_string(mu.mass()) + " vs " +
                           std::to_string(nu.mass()));
}

}  // namespace

UpsetSup upset_sup(const Measure& mu, const Measure& nu) {
    TransportSolve solve(mu, nu);
    return {solve.sup_value(), solve.witness(*mu.poset())};
}

TransportPlan order_transport(const Measure& mu, const Measure& nu) {
    TransportSolve solve(mu, nu);
    TransportPlan plan{solve.flow.value, solve.moved_mu(mu), solve.moved_nu(nu),
                       solve.witness(*mu.poset()), solve.decompose()};
    return plan;
}

UpsetSup max_upset_deficiency(const Measure& mu, const Measure& nu) {
    require_same_poset(mu, nu);
    require_equal_mass(mu, nu);
    return upset_sup(mu, nu);
}

double ordered_affinity(const Measure& mu, const Measure& nu) {
    require_same_poset(mu, nu);
    require_equal_mass(mu, nu);
    TransportSolve solve(mu, nu);
    return solve.flow.value;
}

ComponentPair maximal_ordered_component_pair(const Measure& mu, const Measure& nu) {
    require_same_poset(mu, nu);
    require_equal_mass(mu, nu);
    TransportSolve solve(mu, nu);
    return {solve.moved_mu(mu), solve.moved_nu(nu)};
}

bool is_increasing_function(const Poset& p, const std::vector<double>& values,
                            double tol) {
    if (static_cast<int>(values.size()) != p.size()) return false;
    for (int i = 0; i < p.size(); ++i)
        for (int j = 0; j < p.size(); ++j)
            if (p.leq(i, j) && values[i] > values[j] + tol) return false;
    return true;
}

FunctionSup sup_increasing_function(const SignedDiff& lambda, FunctionRange range) {
    require_same_poset(lambda.plus, lambda.minus);
    const UpsetSup base = upset_sup(lambda.plus, lambda.minus);
    const int n = lambda.plus.size();

    FunctionSup out;
    out.argmax.range = range;
    out.argmax.values.assign(n, 0.0);
    if (range == FunctionRange::unit) {
        out.value = base.value;
        for (int i = 0; i < n; ++i)
            out.argmax.values[i] = base.witness.get(i) ? 1.0 : 0.0;
    } else {
        if (std::abs(lambda.total()) > kMassTol)
            throw BadParams(
                "symmetric-range supremum requires a signed measure with zero "
                "total mass");
        out.value = 2.0 * base.value;
        for (int i = 0; i < n; ++i)
            out.argmax.values[i] = base.witness.get(i) ? 1.0 : -1.0;
    }
    return out;
}

double gamma_distance(const Measure& mu, const Measure& nu) {
    const Measure pm = require_probability(mu);
    const Measure pn = require_probability(nu);
    return upset_sup(pm, pn).value + upset_sup(pn, pm).value;
}

double beta_distance(const Measure& mu, const Measure& nu) {
    const Measure pm = require_probability(mu);
    const Measure pn = require_probability(nu);
    return 2.0 * std::max(upset_sup(pm, pn).value, upset_sup(pn, pm).value);
}

}  // namespace tov
