#include "tov/measure.hpp"

#include <cmath>

#include "doctest.h"
#include "tov/errors.hpp"
#include "tov/random_instances.hpp"
#include "tov/rng.hpp"

using namespace tov;

TEST_CASE("tv distance") {
    const PosetPtr chain = make_chain(3);
    const Measure mu(chain, {0.0, 0.5, 0.5});
    const Measure nu(chain, {0.5, 0.5, 0.0});
    CHECK(tv_distance(mu, nu) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tv_distance(mu, mu) == 0.0);

    const Measure dx = Measure::dirac(chain, 0);
    const Measure dy = Measure::dirac(chain, 2);
    CHECK(tv_distance(dx, dy) == 2.0);

    const PosetPtr other = make_chain(4);
    CHECK_THROWS_AS(tv_distance(mu, Measure::uniform(other)), DimMismatch);
}

TEST_CASE("measure infimum and affinity") {
    const PosetPtr p = make_antichain(2);
    const Measure mu(p, {0.5, 0.5});
    const Measure nu(p, {0.3, 0.7});
    const Measure inf = inf_measure(mu, nu);
    CHECK(inf[0] == 0.3);
    CHECK(inf[1] == 0.5);
    CHECK(affinity(mu, nu) == doctest::Approx(0.8).epsilon(1e-12));
    CHECK(affinity(mu, mu) == doctest::Approx(mu.mass()).epsilon(1e-12));

    const PosetPtr c = make_chain(3);
    CHECK(affinity(Measure::dirac(c, 0), Measure::dirac(c, 2)) == 0.0);

    // Norm-affinity identity for the pair above.
    CHECK(tv_distance(mu, nu) ==
          doctest::Approx(2.0 * (1.0 - affinity(mu, nu))).epsilon(1e-12));
}

TEST_CASE("stochastic dominance") {
    const PosetPtr chain = make_chain(3);
    const Measure low(chain, {0.5, 0.5, 0.0});
    const Measure high(chain, {0.0, 0.5, 0.5});
    CHECK(stochastically_dominated(low, high));
    CHECK_FALSE(stochastically_dominated(high, low));
    CHECK(stochastically_dominated(low, low));

    // Identity order: dominance collapses to equality.
    const PosetPtr anti = make_antichain(3);
    const Measure a(anti, {0.2, 0.3, 0.5});
    const Measure b(anti, {0.3, 0.2, 0.5});
    CHECK(stochastically_dominated(a, a));
    CHECK_FALSE(stochastically_dominated(a, b));
    CHECK_FALSE(stochastically_dominated(b, a));

    // Unequal masses are never comparable.
    CHECK_FALSE(stochastically_dominated(low, high.scaled(0.5)));
}

TEST_CASE("dominance antisymmetry on random instances") {
    Rng rng(11);
    for (int t = 0; t < 100; ++t) {
        const PosetPtr p = random_poset(rng, 8);
        const Measure mu = random_probability(rng, p);
        const Measure nu = random_probability(rng, p);
        if (stochastically_dominated(mu, nu) && stochastically_dominated(nu, mu))
            CHECK(tv_distance(mu, nu) <= 1e-9);
    }
}

TEST_CASE("affinity scaling and bounds on random instances") {
    Rng rng(12);
    for (int t = 0; t < 100; ++t) {
        const PosetPtr p = random_poset(rng, 8);
        const Measure mu = random_measure(rng, p, 0.5 + rng.uniform01());
        const Measure nu = random_measure(rng, p, 0.5 + rng.uniform01());
        const double a = affinity(mu, nu);
        CHECK(a >= 0.0);
        CHECK(a <= std::min(mu.mass(), nu.mass()) + 1e-12);
        const double c = 2.0 * rng.uniform01();
        CHECK(affinity(mu.scaled(c), nu.scaled(c)) ==
              doctest::Approx(c * a).epsilon(1e-10));
    }
}

TEST_CASE("probability validation") {
    const PosetPtr p = make_chain(2);
    CHECK_THROWS_AS(require_probability(Measure(p, {0.2, 0.2})), MassMismatch);
    const Measure renorm = require_probability(Measure(p, {0.5 + 4e-10, 0.5}));
    CHECK(renorm.mass() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(Measure(p, {-0.5, 1.5}), BadParams);
}

TEST_CASE("signed difference bookkeeping") {
    const PosetPtr p = make_chain(3);
    const SignedDiff lambda{Measure(p, {0.0, 0.5, 0.5}), Measure(p, {0.5, 0.5, 0.0})};
    CHECK(lambda.total() == doctest::Approx(0.0).epsilon(1e-15));
    ElementSet top(3);
    top.set(2);
    CHECK(lambda.of_set(top) == doctest::Approx(0.5).epsilon(1e-15));
}
