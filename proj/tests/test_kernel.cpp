#include "tov/kernel.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tov/errors.hpp"
#include "tov/random_instances.hpp"
#include "tov/rng.hpp"

using namespace tov;

namespace {
// The worked two-state kernel: monotone with coefficient 1/2.
struct TwoState {
    PosetPtr chain = make_chain(2);
    MarkovKernel p{chain, {{0.7, 0.3}, {0.2, 0.8}}};
};
}  // namespace

TEST_CASE("kernel construction and application") {
    const TwoState ts;
    CHECK_THROWS_AS(MarkovKernel(ts.chain, {{0.5, 0.3}, {0.2, 0.8}}), MassMismatch);
    CHECK_THROWS_AS(MarkovKernel(ts.chain, {{1.0, 0.0}}), DimMismatch);

    const Measure mu(ts.chain, {0.5, 0.5});
    const Measure out = apply(mu, ts.p);
    CHECK(out[0] == doctest::Approx(0.45).epsilon(1e-12));
    CHECK(out[1] == doctest::Approx(0.55).epsilon(1e-12));
    CHECK(out.mass() == doctest::Approx(1.0).epsilon(1e-12));

    const Measure dirac = Measure::dirac(ts.chain, 1);
    const Measure row = apply(dirac, ts.p);
    CHECK(row[0] == doctest::Approx(0.2));
    CHECK(row[1] == doctest::Approx(0.8));

    const MarkovKernel id = MarkovKernel::identity(ts.chain);
    CHECK(tv_distance(apply(mu, id), mu) == 0.0);
}

TEST_CASE("composition") {
    const TwoState ts;
    const MarkovKernel p2 = compose(ts.p, 2);
    CHECK(p2.at(0, 0) == doctest::Approx(0.55).epsilon(1e-12));
    CHECK(p2.at(0, 1) == doctest::Approx(0.45).epsilon(1e-12));
    CHECK_THROWS_AS(compose(ts.p, 0), BadParams);

    const MarkovKernel id = MarkovKernel::identity(ts.chain);
    const MarkovKernel id5 = compose(id, 5);
    CHECK(id5.at(0, 0) == 1.0);
    CHECK(id5.at(1, 1) == 1.0);
}

TEST_CASE("joint distribution") {
    const TwoState ts;
    const Measure dirac = Measure::dirac(ts.chain, 0);
    const Measure joint = joint_distribution(dirac, ts.p);
    CHECK(joint.mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(joint[0] == doctest::Approx(0.7));  // (0,0)
    CHECK(joint[1] == doctest::Approx(0.3));  // (0,1)
    CHECK(joint[2] == 0.0);
}

TEST_CASE("monotonicity detection") {
    const TwoState ts;
    CHECK(is_monotone(ts.p));

    const MarkovKernel swapped(ts.chain, {{0.2, 0.8}, {0.7, 0.3}});
    CHECK_FALSE(is_monotone(swapped));

    // Identity order: every kernel is monotone.
    Rng rng(41);
    const PosetPtr anti = make_antichain(4);
    for (int t = 0; t < 10; ++t) {
        std::vector<std::vector<double>> rows;
        for (int i = 0; i < 4; ++i)
            rows.push_back(random_probability(rng, anti).weights());
        CHECK(is_monotone(MarkovKernel(anti, rows)));
    }
}

TEST_CASE("ordered Dobrushin coefficient") {
    const TwoState ts;
    CHECK(dobrushin_coefficient(ts.p) == doctest::Approx(0.5).epsilon(1e-12));

    // Identity kernel with incomparable states: coefficient zero.
    const PosetPtr anti = make_antichain(3);
    CHECK(dobrushin_coefficient(MarkovKernel::identity(anti)) == 0.0);

    // Doeblin minorization: coefficient at least the shared mass.
    Rng rng(42);
    for (int t = 0; t < 10; ++t) {
        const double eps = 0.1 + 0.4 * rng.uniform01();
        const MarkovKernel k = random_doeblin_kernel(rng, rng.uniform_int(2, 8), eps);
        CHECK(dobrushin_coefficient(k) >= eps - 1e-9);
    }
}

TEST_CASE("contraction and nonexpansiveness checks") {
    const TwoState ts;
    const CheckReport contraction = contraction_check(ts.p, 50, 7);
    CHECK(contraction.trials == 50);
    CHECK(contraction.max_ratio <= 1.0 + 1e-9);
    nonexpansiveness_check(ts.p, 50, 7);

    // Tightness witness: Dirac pair attains the contraction factor exactly.
    const double gamma_rows = gamma_distance(ts.p.row(0), ts.p.row(1));
    const double sigma = dobrushin_coefficient(ts.p);
    CHECK(gamma_rows == doctest::Approx((1.0 - sigma) * 1.0).epsilon(1e-12));

    const MarkovKernel swapped(ts.chain, {{0.2, 0.8}, {0.7, 0.3}});
    CHECK_THROWS_AS(contraction_check(swapped, 5, 7), NotMonotone);

    Rng rng(43);
    for (int t = 0; t < 10; ++t) {
        const PosetPtr p = random_poset(rng, 6);
        const MarkovKernel k = random_monotone_kernel(rng, p);
        contraction_check(k, 20, rng.next_u64());
    }
}

TEST_CASE("stationary certificate for the two-state kernel") {
    const TwoState ts;
    const StabilityCertificate cert = certify_stationary(ts.p, 3);
    CHECK(cert.m == 1);
    CHECK(cert.sigma_m == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cert.rate == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(cert.residual <= 1e-8);
    CHECK(cert.stationary[0] == doctest::Approx(0.4).epsilon(1e-7));
    CHECK(cert.stationary[1] == doctest::Approx(0.6).epsilon(1e-7));

    // Cross-check against the linear-solve oracle.
    const auto pi = oracle::stationary_linear(ts.p.rows());
    CHECK(cert.stationary[0] == doctest::Approx(pi[0]).epsilon(1e-7));
    CHECK(cert.stationary[1] == doctest::Approx(pi[1]).epsilon(1e-7));
}

TEST_CASE("certificate at a power above one") {
    // Near-cyclic identity-order kernel: one-step rows from states 0 and 1
    // have disjoint supports, so the coefficient is zero at m = 1 but
    // positive at m = 2.
    const PosetPtr anti = make_antichain(3);
    const MarkovKernel p(
        anti, {{0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}, {0.5, 0.0, 0.5}});
    CHECK(dobrushin_coefficient(p) == 0.0);
    CHECK(dobrushin_coefficient(compose(p, 2)) > 0.2);

    const StabilityCertificate cert = certify_stationary(p, 3);
    CHECK(cert.m == 2);
    CHECK(cert.residual <= 1e-8);
    const auto pi = oracle::stationary_linear(p.rows());
    for (int i = 0; i < 3; ++i)
        CHECK(cert.stationary[i] == doctest::Approx(pi[i]).epsilon(1e-6));
    CHECK(cert.stationary[2] == doctest::Approx(0.5).epsilon(1e-6));

    // Geometric decay with the floor(t / m) exponent.
    Measure mu = Measure::dirac(anti, 0);
    const double gamma0 = gamma_distance(mu, cert.stationary);
    for (int t = 0; t <= 12; ++t) {
        const double bound =
            std::pow(cert.rate, t / cert.m) * gamma0;
        CHECK(gamma_distance(mu, cert.stationary) <= bound + 1e-9);
        mu = apply(mu, p);
    }
}

TEST_CASE("no certificate for the identity kernel") {
    const PosetPtr anti = make_antichain(3);
    CHECK_THROWS_AS(certify_stationary(MarkovKernel::identity(anti), 4),
                    NoCertificate);
}

TEST_CASE("doeblin-minorized kernels certify") {
    Rng rng(44);
    for (int t = 0; t < 5; ++t) {
        const double eps = 0.2 + 0.3 * rng.uniform01();
        const MarkovKernel k = random_doeblin_kernel(rng, rng.uniform_int(2, 6), eps);
        const StabilityCertificate cert = certify_stationary(k, 2);
        CHECK(cert.sigma_m >= eps - 1e-9);
        CHECK(cert.residual <= 1e-8);
        const auto pi = oracle::stationary_linear(k.rows());
        for (int i = 0; i < k.size(); ++i)
            CHECK(cert.stationary[i] == doctest::Approx(pi[i]).epsilon(1e-6));
    }
}

TEST_CASE("kernel-level affinity inequalities on random instances") {
    Rng rng(45);
    for (int t = 0; t < 50; ++t) {
        const PosetPtr p = random_poset(rng, 7);
        const MarkovKernel k = random_monotone_kernel(rng, p);
        const Measure mu = random_probability(rng, p);
        const Measure nu = random_probability(rng, p);

        // One kernel step never lowers the ordered affinity.
        CHECK(ordered_affinity(apply(mu, k), apply(nu, k)) >=
              ordered_affinity(mu, nu) - 1e-9);

        // The joint preserves it exactly.
        CHECK(ordered_affinity(joint_distribution(mu, k), joint_distribution(nu, k)) ==
              doctest::Approx(ordered_affinity(mu, nu)).epsilon(1e-9));

        // Widening the pair in dominance order helps.
        const Measure mu_low = random_dominated_by(rng, mu);
        const Measure nu_high = random_dominating(rng, nu);
        CHECK(ordered_affinity(apply(mu, k), apply(nu, k)) <=
              ordered_affinity(apply(mu_low, k), apply(nu_high, k)) + 1e-9);
    }
}

TEST_CASE("sigma lower-bounds measure-pair affinities") {
    const TwoState ts;
    sigma_measure_pairs_check(ts.p, 100, 8);

    Rng rng(46);
    const double sigma = dobrushin_coefficient(ts.p);
    for (int t = 0; t < 50; ++t) {
        const Measure mu = random_probability(rng, ts.chain);
        const Measure nu = random_probability(rng, ts.chain);
        CHECK(ordered_affinity(apply(mu, ts.p), apply(nu, ts.p)) >= sigma - 1e-9);
    }
}
