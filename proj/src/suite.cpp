#include "tov/suite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>

#include "tov/coupling.hpp"
#include "tov/errors.hpp"
#include "tov/json_io.hpp"
#include "tov/kernel.hpp"
#include "tov/maxflow.hpp"
#include "tov/measure.hpp"
#include "tov/models.hpp"
#include "tov/ordered_affinity.hpp"
#include "tov/poset.hpp"
#include "tov/random_instances.hpp"
#include "tov/rng.hpp"

namespace tov {

namespace {

constexpr double kTol = 1e-9;

void expect(bool cond, const std::string& msg) {
    if (!cond) throw AssertionFailure(msg);
}

void expect_close(double a, double b, double tol, const std::string& what) {
    if (std::abs(a - b) > tol)
        throw AssertionFailure(what + ": " + fmt_real(a) + " vs " + fmt_real(b));
}

void expect_le(double a, double b, double tol, const std::string& what) {
    if (a > b + tol)
        throw AssertionFailure(what + ": " + fmt_real(a) + " > " + fmt_real(b));
}

// Brute-force sup of mu(I) - nu(I) over all increasing sets.
double brute_upset_sup(const Measure& mu, const Measure& nu, std::size_t cap) {
    double best = 0.0;
    for (const auto& upset : enumerate_upsets(*mu.poset(), cap))
        best = std::max(best, mu(upset) - nu(upset));
    return best;
}

// Random poset whose up-set count fits under the cap, so enumeration oracles
// stay cheap.
PosetPtr random_enumerable_poset(Rng& rng, int max_n, std::size_t cap) {
    for (int attempt = 0; attempt < 20; ++attempt) {
        PosetPtr p = random_poset(rng, max_n);
        try {
            enumerate_upsets(*p, cap);
            return p;
        } catch (const CapExceeded&) {
        }
    }
    return make_chain(max_n);
}

ElementSet random_subset(Rng& rng, int n) {
    ElementSet s(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        if (rng.bernoulli(0.5)) s.set(i);
    return s;
}

// Random increasing function with values in [0, 1]: monotone completion of
// independent uniforms.
std::vector<double> random_increasing_function(Rng& rng, const Poset& p) {
    std::vector<double> raw(p.size());
    for (double& x : raw) x = rng.uniform01();
    std::vector<double> h(p.size());
    for (int i = 0; i < p.size(); ++i) {
        double v = raw[i];
        for (int j = 0; j < p.size(); ++j)
            if (p.leq(j, i)) v = std::max(v, raw[j]);
        h[i] = v;
    }
    return h;
}

// ---------------------------------------------------------------------------
// Properties. Each throws AssertionFailure on its first counterexample.
// ---------------------------------------------------------------------------

void prop_poset_closure_minimal(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_enumerable_poset(rng, 8, 4096);
        const ElementSet b = random_subset(rng, p->size());
        const ElementSet closed = increase_closure(*p, b);
        expect(is_increasing(*p, closed), "closure is not increasing");
        expect(b.is_subset_of(closed), "closure does not contain the base");
        for (const auto& upset : enumerate_upsets(*p, 4096))
            if (b.is_subset_of(upset))
                expect(closed.is_subset_of(upset),
                       "a smaller increasing superset exists");
    }
}

void prop_poset_complement_duality(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 10);
        const ElementSet s = random_subset(rng, p->size());
        expect(is_increasing(*p, s) == is_decreasing(*p, s.complement()),
               "complement duality failed");
    }
}

void prop_poset_upset_counts(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const int n = rng.uniform_int(1, 10);
        expect(enumerate_upsets(Poset::chain(n)).size() ==
                   static_cast<std::size_t>(n) + 1,
               "chain up-set count is not n + 1");
        expect(enumerate_upsets(Poset::antichain(n)).size() ==
                   (std::size_t{1} << n),
               "antichain up-set count is not 2^n");
    }
}

void prop_affinity_bounds(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 10);
        const Measure mu = random_measure(rng, p, 0.25 + rng.uniform01());
        const Measure nu = random_measure(rng, p, 0.25 + rng.uniform01());
        const double a = affinity(mu, nu);
        expect(a >= -1e-15, "affinity negative");
        expect_le(a, std::min(mu.mass(), nu.mass()), 1e-12, "affinity above masses");
        expect_close(affinity(mu, mu), mu.mass(), 1e-12, "affinity(mu, mu)");
        const double c = rng.uniform01() * 2.0;
        expect_close(affinity(mu.scaled(c), nu.scaled(c)), c * a, 1e-12,
                     "affinity homogeneity");
        if (std::abs(a - mu.mass()) <= 1e-12 && std::abs(a - nu.mass()) <= 1e-12)
            expect_le(tv_distance(mu, nu), 0.0, 1e-9, "full affinity but mu != nu");
    }
}

void prop_dominance_antisymmetry(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 10);
        const Measure mu = random_probability(rng, p);
        const Measure lower = random_dominated_by(rng, mu);
        expect(stochastically_dominated(lower, mu), "pushdown is not dominated");
        if (stochastically_dominated(mu, lower))
            expect_le(tv_distance(mu, lower), 0.0, kTol,
                      "mutual dominance of distinct measures");
    }
}

void prop_tv_affinity_identity(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 10);
        const Measure mu = random_probability(rng, p);
        const Measure nu = random_probability(rng, p);
        expect_close(tv_distance(mu, nu), 2.0 * (1.0 - affinity(mu, nu)), 1e-12,
                     "norm-affinity identity");
    }
}

void prop_maxflow_duality(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const int nodes = rng.uniform_int(4, 12);
        FlowNetwork net(nodes, 0, nodes - 1);
        const int arcs = rng.uniform_int(nodes, 3 * nodes);
        for (int k = 0; k < arcs; ++k) {
            const int a = rng.uniform_int(0, nodes - 2);
            int b = rng.uniform_int(1, nodes - 1);
            if (a == b) b = nodes - 1;
            net.add_arc(a, b, rng.uniform01());
        }
        const FlowResult res = max_flow(net);  // internally asserts duality
        std::vector<double> balance(nodes, 0.0);
        for (std::size_t k = 0; k < net.arcs().size(); ++k) {
            const auto& arc = net.arcs()[k];
            expect(res.arc_flow[k] >= -1e-12 &&
                       res.arc_flow[k] <= arc.capacity + 1e-12,
                   "flow outside capacity bounds");
            balance[arc.from] -= res.arc_flow[k];
            balance[arc.to] += res.arc_flow[k];
        }
        for (int v = 1; v + 1 < nodes; ++v)
            expect_close(balance[v], 0.0, 1e-9, "flow conservation");
        expect_close(balance[nodes - 1], res.value, 1e-9, "sink inflow");
    }
}

void prop_ordaff_oracle_equivalence(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_enumerable_poset(rng, 10, 10000);
        const Measure mu = random_probability(rng, p);
        const Measure nu = random_probability(rng, p);
        const double brute = brute_upset_sup(mu, nu, 10000);
        const UpsetSup sup = max_upset_deficiency(mu, nu);
        expect_close(sup.value, brute, kTol, "flow vs enumeration sup");
        expect(is_increasing(*p, sup.witness), "witness not increasing");
        expect_close(mu(sup.witness) - nu(sup.witness), sup.value, kTol,
                     "witness does not attain the sup");
        expect_close(ordered_affinity(mu, nu), 1.0 - brute, kTol,
                     "ordered affinity vs oracle");
    }
}

void prop_ordaff_bounds(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 10);
        const double mass = 0.25 + rng.uniform01();
        const Measure mu = random_measure(rng, p, mass);
        const Measure nu = random_measure(rng, p, mass);
        const double a = ordered_affinity(mu, nu);
        expect(a >= -1e-15 && a <= mass + 1e-12, "ordered affinity out of range");
        const double c = 0.5 + rng.uniform01();
        expect_close(ordered_affinity(mu.scaled(c), nu.scaled(c)), c * a, kTol,
                     "ordered affinity homogeneity");
        if (stochastically_dominated(mu, nu))
            expect_close(a, mass, kTol, "dominated pair without full affinity");
        if (a >= mass - 1e-12)
            expect(stochastically_dominated(mu, nu),
                   "full ordered affinity without dominance");
        const Measure lower = random_dominated_by(rng, mu);
        expect_close(ordered_affinity(lower, mu), mass, kTol,
                     "constructed dominated pair");
    }
}

void prop_ordaff_dominates_affinity(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 10);
        const Measure mu = random_probability(rng, p);
        const Measure nu = random_probability(rng, p);
        expect_le(affinity(mu, nu), ordered_affinity(mu, nu), kTol,
                  "affinity exceeds ordered affinity");
        if (p->is_identity_order())
            expect_close(affinity(mu, nu), ordered_affinity(mu, nu), kTol,
                         "identity order affinities differ");
    }
}

void prop_deficiency_bounds_gamma(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_enumerable_poset(rng, 8, 4096);
        const Measure mu = random_probability(rng, p);
        const Measure nu = random_probability(rng, p);
        const double g = gamma_distance(mu, nu);
        const double d1 = max_upset_deficiency(mu, nu).value;
        const double d2 = max_upset_deficiency(nu, mu).value;
        expect_le(std::max(d1, d2), g, kTol, "deficiency above gamma");
        for (const auto& upset : enumerate_upsets(*p, 4096)) {
            const ElementSet down = upset.complement();
            expect_le(std::abs(mu(down) - nu(down)), g, kTol,
                      "decreasing-set difference above gamma");
        }
    }
}

void prop_gamma_metric_axioms(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 8);
        const Measure mu = random_probability(rng, p);
        const Measure nu = random_probability(rng, p);
        const Measure rho = random_probability(rng, p);
        expect_close(gamma_distance(mu, nu), gamma_distance(nu, mu), 0.0,
                     "gamma symmetry");
        expect_le(0.0, gamma_distance(mu, nu), 0.0, "gamma negative");
        expect_le(gamma_distance(mu, mu), 0.0, 1e-12, "gamma(mu, mu) nonzero");
        expect_le(gamma_distance(mu, rho),
                  gamma_distance(mu, nu) + gamma_distance(nu, rho), kTol,
                  "triangle inequality");
        // Separation: moving visible mass strictly increases gamma.
        if (p->size() >= 2) {
            const int a = rng.uniform_int(0, p->size() - 1);
            int b = rng.uniform_int(0, p->size() - 2);
            if (b >= a) ++b;
            std::vector<double> w(mu.weights());
            const double delta = 0.05 * std::min(1.0, 1.0 - w[a]) + 1e-3;
            for (double& x : w) x *= (1.0 - delta);
            w[b] += delta;
            std::vector<double> v(mu.weights());
            for (double& x : v) x *= (1.0 - delta);
            v[a] += delta;
            const Measure shifted_b(p, std::move(w));
            const Measure shifted_a(p, std::move(v));
            expect(gamma_distance(shifted_a, shifted_b) >= delta - kTol,
                   "gamma fails to separate a visible mass move");
        }
    }
}

void prop_gamma_beta_sandwich(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 10);
        const Measure mu = random_probability(rng, p);
        const Measure nu = random_probability(rng, p);
        const double g = gamma_distance(mu, nu);
        const double b = beta_distance(mu, nu);
        expect_le(g, b, kTol, "gamma above beta");
        expect_le(b, 2.0 * g, kTol, "beta above twice gamma");
        if (p->is_identity_order())
            expect_close(b, tv_distance(mu, nu), kTol, "identity-order beta != tv");
    }
}

void prop_component_pair_invariants(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 10);
        const Measure mu = random_probability(rng, p);
        const Measure nu = random_probability(rng, p);
        const ComponentPair pair = maximal_ordered_component_pair(mu, nu);
        for (int i = 0; i < p->size(); ++i) {
            expect_le(pair.mu_part[i], mu[i], 1e-12, "mu component too large");
            expect_le(pair.nu_part[i], nu[i], 1e-12, "nu component too large");
        }
        expect_close(pair.mu_part.mass(), pair.nu_part.mass(), kTol,
                     "component masses differ");
        expect_close(pair.mu_part.mass(), ordered_affinity(mu, nu), kTol,
                     "component mass is not maximal");
        expect(stochastically_dominated(pair.mu_part, pair.nu_part),
               "components not ordered");
    }
}

void prop_increasing_function_sup(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 10);
        const SignedDiff lambda{random_measure(rng, p, 0.5 + rng.uniform01()),
                                random_measure(rng, p, 0.5 + rng.uniform01())};
        const FunctionSup sup = sup_increasing_function(lambda, FunctionRange::unit);
        expect(is_increasing_function(*p, sup.argmax.values),
               "argmax is not increasing");
        expect_close(lambda.plus.integral(sup.argmax.values) -
                         lambda.minus.integral(sup.argmax.values),
                     sup.value, kTol, "argmax does not attain the sup");
        for (int k = 0; k < 10; ++k) {
            const std::vector<double> h = random_increasing_function(rng, *p);
            expect_le(lambda.plus.integral(h) - lambda.minus.integral(h), sup.value,
                      kTol, "sampled function beats the sup");
        }
    }
}

void prop_increasing_function_doubling(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 10);
        const SignedDiff lambda{random_probability(rng, p),
                                random_probability(rng, p)};
        const FunctionSup unit = sup_increasing_function(lambda, FunctionRange::unit);
        const FunctionSup sym =
            sup_increasing_function(lambda, FunctionRange::symmetric);
        expect_close(sym.value, 2.0 * unit.value, kTol, "doubling identity");
        // The two directed symmetric sups add up to twice gamma.
        const FunctionSup sym_rev = sup_increasing_function(
            SignedDiff{lambda.minus, lambda.plus}, FunctionRange::symmetric);
        expect_close(sym.value + sym_rev.value,
                     2.0 * gamma_distance(lambda.plus, lambda.minus), kTol,
                     "directed sups vs gamma");
        expect_close(lambda.plus.integral(sym.argmax.values) -
                         lambda.minus.integral(sym.argmax.values),
                     sym.value, kTol, "symmetric argmax does not attain");
        for (int k = 0; k < 10; ++k) {
            std::vector<double> h = random_increasing_function(rng, *p);
            for (double& x : h) x = 2.0 * x - 1.0;
            expect_le(lambda.plus.integral(h) - lambda.minus.integral(h), sym.value,
                      kTol, "sampled symmetric function beats the sup");
        }
    }
}

void prop_coupling_attainment(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 10);
        const Measure mu = random_probability(rng, p);
        const Measure nu = random_probability(rng, p);
        expect_close(maximal_coupling(mu, nu).diagonal_mass(), affinity(mu, nu),
                     kTol, "maximal coupling diagonal mass");
        expect_close(order_maximal_coupling(mu, nu).ordered_mass(),
                     ordered_affinity(mu, nu), kTol,
                     "order-maximal coupling ordered mass");
        const Measure lower = random_dominated_by(rng, mu);
        expect_close(nachbin_strassen_coupling(lower, mu).ordered_mass(), 1.0, kTol,
                     "dominated coupling not fully ordered");
    }
}

void prop_coupling_upper_bound(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 8);
        const int n = p->size();
        const Measure mu = random_probability(rng, p);
        const Measure nu = random_probability(rng, p);
        const double bound = ordered_affinity(mu, nu);
        std::vector<double> joint = order_maximal_coupling(mu, nu).joint();
        for (int k = 0; k < 20; ++k) {
            if (n < 2) break;
            const int i = rng.uniform_int(0, n - 1);
            int i2 = rng.uniform_int(0, n - 2);
            if (i2 >= i) ++i2;
            const int j = rng.uniform_int(0, n - 1);
            int j2 = rng.uniform_int(0, n - 2);
            if (j2 >= j) ++j2;
            const double room = std::min(joint[static_cast<std::size_t>(i) * n + j2],
                                         joint[static_cast<std::size_t>(i2) * n + j]);
            if (room <= 0.0) continue;
            const double d = room * rng.uniform01();
            joint[static_cast<std::size_t>(i) * n + j] += d;
            joint[static_cast<std::size_t>(i2) * n + j2] += d;
            joint[static_cast<std::size_t>(i) * n + j2] -= d;
            joint[static_cast<std::size_t>(i2) * n + j] -= d;
            const Coupling perturbed = Coupling::from_matrix(mu, nu, joint);
            expect_le(perturbed.ordered_mass(), bound, kTol,
                      "perturbed coupling beats the ordered affinity");
        }
    }
}

void prop_coupling_residual_orthogonality(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 10);
        const Measure mu = random_probability(rng, p);
        const Measure nu = random_probability(rng, p);
        const TransportPlan plan = order_transport(mu, nu);
        if (1.0 - plan.moved_mass <= 1e-9) continue;
        const Measure mu_res = mu.minus(plan.mu_part);
        const Measure nu_res = nu.minus(plan.nu_part);
        for (int i = 0; i < p->size(); ++i)
            for (int j = 0; j < p->size(); ++j)
                if (p->leq(i, j))
                    expect_le(mu_res[i] * nu_res[j], 0.0, kTol,
                              "residuals share an ordered pair");
    }
}

void prop_directed_wasserstein(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 10);
        const Measure mu = random_probability(rng, p);
        const Measure nu = random_probability(rng, p);
        const double decomposed =
            (1.0 - order_maximal_coupling(mu, nu).ordered_mass()) +
            (1.0 - order_maximal_coupling(nu, mu).ordered_mass());
        expect_close(gamma_distance(mu, nu), decomposed, kTol,
                     "directed decomposition of gamma");
    }
}

void prop_coupled_kernel_marginals(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 6);
        const MarkovKernel kernel = random_monotone_kernel(rng, p);
        const CoupledKernel coupled = absorbing_coupled_kernel(kernel);
        const int n = kernel.size();
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                std::vector<double> first(n, 0.0), second(n, 0.0);
                for (const auto& [idx, w] : coupled.row(coupled.pair_index(x, y)).entries) {
                    first[idx / n] += w;
                    second[idx % n] += w;
                }
                for (int z = 0; z < n; ++z) {
                    expect_close(first[z], kernel.at(x, z), kTol, "first marginal");
                    expect_close(second[z], kernel.at(y, z), kTol, "second marginal");
                }
            }
    }
}

void prop_coupled_kernel_absorbing(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 6);
        const MarkovKernel kernel = random_monotone_kernel(rng, p);
        const CoupledKernel coupled = absorbing_coupled_kernel(kernel);
        const int n = kernel.size();
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (!p->leq(x, y)) continue;
                for (const auto& [idx, w] : coupled.row(coupled.pair_index(x, y)).entries)
                    expect(p->leq(idx / n, idx % n),
                           "ordered row leaks outside the order graph");
            }
        // Path-level equivalence: never-ordered-up-to-t iff not-ordered-at-t.
        Rng path_rng(rng.next_u64());
        for (int rep = 0; rep < 5; ++rep) {
            int x = rng.uniform_int(0, n - 1);
            int y = rng.uniform_int(0, n - 1);
            int idx = coupled.pair_index(x, y);
            bool ever_ordered = p->leq(x, y);
            for (int step = 0; step < 12; ++step) {
                idx = coupled.step(idx, path_rng.uniform01());
                const auto [cx, cy] = coupled.pair_state(idx);
                ever_ordered = ever_ordered || p->leq(cx, cy);
                expect(p->leq(cx, cy) == ever_ordered,
                       "path left the order graph after entering it");
            }
        }
    }
}

void prop_order_coupling_bound_mc(Rng& rng, int trials) {
    const int instances = std::max(1, std::min(trials / 40, 8));
    for (int t = 0; t < instances; ++t) {
        const PosetPtr p = random_poset_with_bottom(rng, 6);
        const MarkovKernel kernel = random_monotone_kernel(rng, p);
        const CoupledKernel coupled = absorbing_coupled_kernel(kernel);
        const int n = kernel.size();
        const int x0 = rng.uniform_int(0, n - 1);
        const int y0 = 0;  // bottom: comparable start
        const int horizon = 8;
        const std::size_t reps = 4000;
        const CoupledChainStats stats =
            simulate_coupled_chain(coupled, x0, y0, horizon, reps, rng.next_u64());
        // The two estimates share replications, so standard errors add; each
        // carries a one-observation floor against zero-count degeneracy.
        const double floor = 1.0 / static_cast<double>(reps);
        Measure mu = Measure::dirac(p, x0);
        Measure nu = Measure::dirac(p, y0);
        for (int s = 0; s <= horizon; ++s) {
            const double exact = gamma_distance(mu, nu);
            const double se = std::max(stats.se_leq[s], floor) +
                              std::max(stats.se_geq[s], floor);
            expect_le(exact, stats.p_never_leq[s] + stats.p_never_geq[s] + 3.0 * se,
                      kTol, "order coupling bound at t=" + std::to_string(s));
            mu = apply(mu, kernel);
            nu = apply(nu, kernel);
        }
    }
}

void prop_affinity_monotone_step(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 8);
        const MarkovKernel kernel = random_monotone_kernel(rng, p);
        const Measure mu = random_probability(rng, p);
        const Measure nu = random_probability(rng, p);
        expect_le(ordered_affinity(mu, nu),
                  ordered_affinity(apply(mu, kernel), apply(nu, kernel)), kTol,
                  "kernel step decreased ordered affinity");
    }
}

void prop_affinity_pair_ordering(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 8);
        const MarkovKernel kernel = random_monotone_kernel(rng, p);
        const Measure mu = random_probability(rng, p);
        const Measure nu = random_probability(rng, p);
        const Measure mu_low = random_dominated_by(rng, mu);
        const Measure nu_high = random_dominating(rng, nu);
        expect_le(ordered_affinity(apply(mu, kernel), apply(nu, kernel)),
                  ordered_affinity(apply(mu_low, kernel), apply(nu_high, kernel)),
                  kTol, "widened pair lost ordered affinity");
    }
}

void prop_joint_affinity_preserved(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 8);
        const MarkovKernel kernel = random_monotone_kernel(rng, p);
        const Measure mu = random_probability(rng, p);
        const Measure nu = random_probability(rng, p);
        expect_close(ordered_affinity(joint_distribution(mu, kernel),
                                      joint_distribution(nu, kernel)),
                     ordered_affinity(mu, nu), kTol,
                     "joint distribution changed the ordered affinity");
    }
}

void prop_residual_contraction(Rng& rng, int trials) {
    const auto g = [](const Measure& a, const Measure& b) {
        return a.mass() - ordered_affinity(a, b);
    };
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 8);
        const MarkovKernel kernel = random_monotone_kernel(rng, p);
        const Measure mu = random_probability(rng, p);
        const Measure nu = random_probability(rng, p);
        const ComponentPair pair = maximal_ordered_component_pair(mu, nu);
        const Measure mu_res = mu.minus(pair.mu_part);
        const Measure nu_res = nu.minus(pair.nu_part);
        expect_le(g(apply(mu, kernel), apply(nu, kernel)),
                  g(apply(mu_res, kernel), apply(nu_res, kernel)), kTol,
                  "residual pair contracted less");
    }
}

void prop_monotonicity_preserved(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset(rng, 7);
        const MarkovKernel kernel = random_monotone_kernel(rng, p);
        expect(is_monotone(kernel), "generator returned a non-monotone kernel");
        expect(is_monotone(compose(kernel, 2)), "square lost monotonicity");
        expect(is_monotone(compose(kernel, 3)), "cube lost monotonicity");
    }
}

void prop_nonexpansiveness(Rng& rng, int trials) {
    const int reps = std::max(1, trials / 10);
    for (int t = 0; t < reps; ++t) {
        const PosetPtr p = random_poset(rng, 7);
        const MarkovKernel kernel = random_monotone_kernel(rng, p);
        nonexpansiveness_check(kernel, 10, rng.next_u64());
        // Identity order: gamma is the total variation norm and every kernel
        // is (nonexpansively) monotone.
        const MarkovKernel flat = random_doeblin_kernel(rng, rng.uniform_int(2, 8),
                                                        0.05 + 0.5 * rng.uniform01());
        const Measure mu = random_probability(rng, flat.poset());
        const Measure nu = random_probability(rng, flat.poset());
        expect_le(tv_distance(apply(mu, flat), apply(nu, flat)),
                  tv_distance(mu, nu), kTol, "TV expansion under a kernel");
        expect_close(gamma_distance(mu, nu), tv_distance(mu, nu), 1e-12,
                     "identity-order gamma is not TV");
    }
}

void prop_contraction(Rng& rng, int trials) {
    const int reps = std::max(1, trials / 10);
    for (int t = 0; t < reps; ++t) {
        const PosetPtr p = random_poset(rng, 7);
        const MarkovKernel kernel = random_monotone_kernel(rng, p);
        contraction_check(kernel, 10, rng.next_u64());
    }
}

void prop_sigma_measure_pairs(Rng& rng, int trials) {
    const int reps = std::max(1, trials / 10);
    for (int t = 0; t < reps; ++t) {
        const PosetPtr p = random_poset(rng, 7);
        const MarkovKernel kernel = random_monotone_kernel(rng, p);
        const double sigma = dobrushin_coefficient(kernel);
        expect(sigma >= 0.0 && sigma <= 1.0, "sigma out of range");
        sigma_measure_pairs_check(kernel, 10, rng.next_u64());
    }
}

void prop_contraction_tightness(Rng& rng, int trials) {
    for (int t = 0; t < trials; ++t) {
        const PosetPtr p = random_poset_with_bottom(rng, 7);
        const MarkovKernel kernel = random_monotone_kernel(rng, p);
        const double sigma = dobrushin_coefficient(kernel);
        if (sigma >= 1.0 - kTol) continue;
        double best = 0.0;
        for (int x = 0; x < p->size(); ++x)
            for (int y = 0; y < p->size(); ++y) {
                if (x == y || !p->leq(y, x)) continue;
                best = std::max(best,
                                gamma_distance(kernel.row(x), kernel.row(y)));
            }
        expect(best >= (1.0 - sigma) - kTol,
               "no Dirac pair is within reach of the contraction bound");
    }
}

void prop_bernoulli_rate(Rng& rng, int trials) {
    const int reps = std::min(trials, 13);
    for (int t = 0; t < reps; ++t) {
        const double g = bernoulli_gamma(t);
        expect(g == std::ldexp(1.0, -t), "averaging-chain gamma is not 2^-t");
    }
    (void)rng;
    expect(bernoulli_coupling_sigma_bound() == 0.5, "antithetic bound is not 1/2");
    expect(bernoulli_comonotone_ordered_mass() == 0.0,
           "comonotone coupling has ordered mass");
}

void prop_inventory_sigma(Rng& rng, int trials) {
    (void)rng;
    (void)trials;
    const GridModel model = inventory_model(2.0, 41, {0.0, 1.0, 128});
    const MarkovKernel& kernel = model.kernel;
    // Every row restocks through zero with at least the tail mass P{W >= K}.
    const double kappa = 1.0 - normal_cdf(std::log(2.0));
    double tail = 0.0;
    for (int q = 0; q < 128; ++q)
        if (std::exp(normal_quantile((q + 0.5) / 128.0)) >= 2.0) tail += 1.0 / 128.0;
    for (int i = 0; i < kernel.size(); ++i)
        expect_le(tail, kernel.at(i, 0), 1e-12, "restocking mass below the tail");
    const double sigma = dobrushin_coefficient(kernel);
    expect_le(kappa - model.shock_cell_mass, sigma, kTol,
              "sigma below the minorization bound");
    const StabilityCertificate cert = certify_stationary(kernel, 3);
    expect_le(cert.residual, 1e-8, 0.0, "certificate residual too large");
    Measure mu = Measure::dirac(kernel.poset(), kernel.size() / 2);
    const double gamma0 = gamma_distance(mu, cert.stationary);
    double bound = gamma0;
    for (int t = 1; t <= 20; ++t) {
        mu = apply(mu, kernel);
        bound *= (1.0 - sigma);
        expect_le(gamma_distance(mu, cert.stationary), bound, kTol,
                  "convergence slower than the certified rate");
    }
}

void prop_splitting_sigma(Rng& rng, int trials) {
    const int reps = std::max(1, trials / 10);
    for (int t = 0; t < reps; ++t) {
        const int n = rng.uniform_int(2, 10);
        const double s1 = 0.05 + 0.4 * rng.uniform01();
        const double s2 = 0.05 + 0.4 * rng.uniform01();
        const GridModel model = splitting_lattice_model(n, s1, s2);
        expect(is_monotone(model.kernel), "splitting kernel not monotone");
        expect_le(s1 * s2, dobrushin_coefficient(model.kernel), kTol,
                  "sigma below the splitting bound");
    }
    const GridModel half = splitting_lattice_model(8, 0.5, 0.5);
    expect_le(0.25, dobrushin_coefficient(half.kernel), kTol,
              "half-split sigma below 1/4");
    certify_stationary(half.kernel, 2);
}

void prop_doeblin_recovery(Rng& rng, int trials) {
    const int reps = std::max(1, trials / 10);
    for (int t = 0; t < reps; ++t) {
        const int n = rng.uniform_int(2, 10);
        const double eps = 0.1 + 0.4 * rng.uniform01();
        const MarkovKernel kernel = random_doeblin_kernel(rng, n, eps);
        expect_le(eps, dobrushin_coefficient(kernel), kTol,
                  "sigma below the minorization mass");
        const StabilityCertificate cert = certify_stationary(kernel, 2);
        Measure mu = random_probability(rng, kernel.poset());
        for (int s = 0; s < 10; ++s) {
            expect_close(gamma_distance(mu, cert.stationary),
                         tv_distance(mu, cert.stationary), kTol,
                         "identity-order gamma diverged from TV");
            mu = apply(mu, kernel);
        }
    }
}

struct Property {
    const char* name;
    void (*run)(Rng&, int);
};

constexpr Property kProperties[] = {
    {"poset-closure-minimal", prop_poset_closure_minimal},
    {"poset-complement-duality", prop_poset_complement_duality},
    {"poset-upset-counts", prop_poset_upset_counts},
    {"measure-affinity-bounds", prop_affinity_bounds},
    {"measure-dominance-antisymmetry", prop_dominance_antisymmetry},
    {"measure-tv-affinity-identity", prop_tv_affinity_identity},
    {"maxflow-duality", prop_maxflow_duality},
    {"ordaff-oracle-equivalence", prop_ordaff_oracle_equivalence},
    {"ordaff-bounds", prop_ordaff_bounds},
    {"ordaff-dominates-affinity", prop_ordaff_dominates_affinity},
    {"ordaff-deficiency-bounds-gamma", prop_deficiency_bounds_gamma},
    {"gamma-metric-axioms", prop_gamma_metric_axioms},
    {"gamma-beta-sandwich", prop_gamma_beta_sandwich},
    {"ordaff-component-pair-invariants", prop_component_pair_invariants},
    {"increasing-function-sup", prop_increasing_function_sup},
    {"increasing-function-sup-doubling", prop_increasing_function_doubling},
    {"coupling-attainment", prop_coupling_attainment},
    {"coupling-upper-bound", prop_coupling_upper_bound},
    {"coupling-residual-orthogonality", prop_coupling_residual_orthogonality},
    {"coupling-directed-wasserstein", prop_directed_wasserstein},
    {"coupled-kernel-marginals", prop_coupled_kernel_marginals},
    {"coupled-kernel-absorbing", prop_coupled_kernel_absorbing},
    {"coupling-order-bound-mc", prop_order_coupling_bound_mc},
    {"kernel-affinity-monotone-step", prop_affinity_monotone_step},
    {"kernel-affinity-pair-ordering", prop_affinity_pair_ordering},
    {"kernel-joint-affinity-preserved", prop_joint_affinity_preserved},
    {"kernel-residual-contraction", prop_residual_contraction},
    {"kernel-monotonicity-preserved", prop_monotonicity_preserved},
    {"kernel-nonexpansive", prop_nonexpansiveness},
    {"kernel-contraction", prop_contraction},
    {"kernel-sigma-measure-pairs", prop_sigma_measure_pairs},
    {"kernel-contraction-tightness", prop_contraction_tightness},
    {"model-bernoulli-rate", prop_bernoulli_rate},
    {"model-inventory-sigma", prop_inventory_sigma},
    {"model-splitting-sigma", prop_splitting_sigma},
    {"model-doeblin-recovery", prop_doeblin_recovery},
};

}  // namespace

bool SuiteReport::all_passed() const {
    for (const auto& r : results)
        if (!r.passed) return false;
    return true;
}

SuiteReport run_property_suite(std::uint64_t seed, int trials) {
    SuiteReport report;
    report.seed = seed;
    report.trials = trials;
    std::uint64_t ordinal = 0;
    for (const auto& prop : kProperties) {
        Rng rng(mix_seed(seed, ordinal++));
        PropertyResult result;
        result.name = prop.name;
        result.trials = trials;
        try {
            if (trials > 0) prop.run(rng, trials);
            result.passed = true;
        } catch (const Error& e) {
            result.passed = false;
            result.counterexample = e.what();
        }
        report.results.push_back(std::move(result));
    }
    return report;
}

std::string format_report(const SuiteReport& report) {
    std::string out = "property-suite seed=" + std::to_string(report.seed) +
                      " trials=" + std::to_string(report.trials) + "\n";
    int passed = 0;
    for (const auto& r : report.results) {
        if (r.passed) {
            out += "PASS " + r.name + " trials=" + std::to_string(r.trials) + "\n";
            ++passed;
        } else {
            out += "FAIL " + r.name + " trials=" + std::to_string(r.trials) +
                   " counterexample: " + r.counterexample + "\n";
        }
    }
    out += "summary: " + std::to_string(passed) + "/" +
           std::to_string(report.results.size()) + " properties passed\n";
    return out;
}

}  // namespace tov
