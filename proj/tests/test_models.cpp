#include "tov/models.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "tov/errors.hpp"

using namespace tov;

TEST_CASE("exact dyadic law of the averaging chain") {
    // One step from 0: uniform on {0, 1/2}.
    const DyadicDistribution from0 = bernoulli_exact_distribution(0, 0, 1);
    CHECK(from0.depth == 1);
    REQUIRE(from0.atoms.size() == 2);
    CHECK(from0.atoms[0] == std::pair<std::int64_t, double>{0, 0.5});
    CHECK(from0.atoms[1] == std::pair<std::int64_t, double>{1, 0.5});

    // One step from 1: uniform on {1/2, 1}.
    const DyadicDistribution from1 = bernoulli_exact_distribution(1, 0, 1);
    REQUIRE(from1.atoms.size() == 2);
    CHECK(from1.atoms[0].first == 1);
    CHECK(from1.atoms[1].first == 2);

    // No steps: a point mass.
    const DyadicDistribution still = bernoulli_exact_distribution(3, 2, 0);
    REQUIRE(still.atoms.size() == 1);
    CHECK(still.atoms[0] == std::pair<std::int64_t, double>{3, 1.0});
    CHECK(still.mass() == 1.0);

    CHECK_THROWS_AS(bernoulli_exact_distribution(0, 0, 21), DepthExceeded);
    CHECK_THROWS_AS(bernoulli_exact_distribution(5, 2, 1), BadParams);
}

TEST_CASE("averaging-chain gamma is exactly 2^-t") {
    for (int t = 0; t <= 12; ++t)
        CHECK(bernoulli_gamma(t) == std::ldexp(1.0, -t));
    CHECK(bernoulli_gamma(0) == 1.0);
    CHECK_THROWS_AS(bernoulli_gamma(15), DepthExceeded);
}

TEST_CASE("antithetic coupling bound") {
    CHECK(bernoulli_coupling_sigma_bound() == 0.5);
    CHECK(bernoulli_comonotone_ordered_mass() == 0.0);
}

TEST_CASE("one-step laws from 0 and 1 share the midpoint atom") {
    // P_1 = uniform{1/2, 1} and P_0 = uniform{0, 1/2} overlap at 1/2, so
    // their plain affinity is 1/2 (each places mass 1/2 there).
    const PosetPtr grid = make_chain(3);  // points 0, 1/2, 1
    const Measure from0(grid, {0.5, 0.5, 0.0});
    const Measure from1(grid, {0.0, 0.5, 0.5});
    CHECK(affinity(from1, from0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("normal quantile inverts the cdf") {
    for (double p : {0.01, 0.2, 0.5, 0.75, 0.99})
        CHECK(normal_cdf(normal_quantile(p)) == doctest::Approx(p).epsilon(1e-10));
    CHECK(normal_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("inventory model structure") {
    const GridModel model = inventory_model(2.0, 41, {0.0, 1.0, 64});
    const MarkovKernel& k = model.kernel;
    CHECK(k.size() == 41);
    CHECK(model.grid.front() == 0.0);
    CHECK(model.grid.back() == doctest::Approx(2.0));
    CHECK(model.shock_cell_mass == doctest::Approx(1.0 / 64));
    CHECK(k.poset()->is_identity_order());

    // Empty inventory restocks to capacity: rows 0 and K coincide.
    for (int j = 0; j < k.size(); ++j)
        CHECK(k.at(0, j) == doctest::Approx(k.at(k.size() - 1, j)).epsilon(1e-12));

    // Every positive state hits zero at least as often as the full one:
    // the tail P{W >= capacity} is a uniform minorization through state 0.
    double tail = 0.0;
    for (int q = 0; q < 64; ++q)
        if (std::exp(normal_quantile((q + 0.5) / 64.0)) >= 2.0) tail += 1.0 / 64;
    for (int i = 1; i < k.size(); ++i) CHECK(k.at(i, 0) >= tail - 1e-12);

    // The discrete tail is within one cell of the true kappa.
    const double kappa = 1.0 - normal_cdf(std::log(2.0));
    CHECK(std::abs(tail - kappa) <= model.shock_cell_mass);

    CHECK_THROWS_AS(inventory_model(-1.0, 41), BadParams);
    CHECK_THROWS_AS(inventory_model(2.0, 1), BadParams);
}

TEST_CASE("inventory sigma bound and certificate") {
    const GridModel model = inventory_model(2.0, 41, {0.0, 1.0, 64});
    const double kappa = 1.0 - normal_cdf(std::log(2.0));
    const double sigma = dobrushin_coefficient(model.kernel);
    CHECK(sigma >= kappa - model.shock_cell_mass - 1e-9);

    const StabilityCertificate cert = certify_stationary(model.kernel, 2);
    CHECK(cert.m == 1);
    CHECK(cert.residual <= 1e-8);

    // Stationary distribution matches the linear-solve oracle.
    const auto pi = oracle::stationary_linear(model.kernel.rows());
    double err = 0.0;
    for (int i = 0; i < model.kernel.size(); ++i)
        err += std::abs(pi[i] - cert.stationary[i]);
    CHECK(err <= 1e-6);
}

TEST_CASE("splitting lattice model") {
    const GridModel model = splitting_lattice_model(8, 0.3, 0.3);
    const MarkovKernel& k = model.kernel;
    CHECK(is_monotone(k));
    CHECK(dobrushin_coefficient(k) >= 0.3 * 0.3 - 1e-9);

    // Both split events are visible from the extremes.
    CHECK(k.at(0, 7) >= 0.3 - 1e-12);
    CHECK(k.at(7, 0) >= 0.3 - 1e-12);

    const GridModel half = splitting_lattice_model(6, 0.5, 0.5);
    CHECK(dobrushin_coefficient(half.kernel) >= 0.25 - 1e-9);
    const StabilityCertificate cert = certify_stationary(half.kernel, 2);
    CHECK(cert.residual <= 1e-8);

    CHECK_THROWS_AS(splitting_lattice_model(1, 0.3, 0.3), BadParams);
    CHECK_THROWS_AS(splitting_lattice_model(8, 0.7, 0.5), BadParams);
    CHECK_THROWS_AS(splitting_lattice_model(8, 0.0, 0.5), BadParams);
}
