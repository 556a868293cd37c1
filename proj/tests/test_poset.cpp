#include "tov/poset.hpp"

#include "doctest.h"
#include "tov/errors.hpp"
#include "tov/random_instances.hpp"
#include "tov/rng.hpp"

using namespace tov;

namespace {
ElementSet set_of(int n, std::initializer_list<int> members) {
    ElementSet s(static_cast<std::size_t>(n));
    for (int i : members) s.set(i);
    return s;
}
}  // namespace

TEST_CASE("transitive closure of a chain") {
    const Poset p = Poset::chain(3);
    CHECK(p.leq(0, 2));
    CHECK(p.leq(0, 0));
    CHECK_FALSE(p.leq(2, 0));
    CHECK(p.cover_arcs().size() == 2);
}

TEST_CASE("antichain is the identity order") {
    const Poset p = Poset::from_covers({"a", "b"}, {});
    CHECK(p.is_identity_order());
    CHECK(p.leq(0, 0));
    CHECK_FALSE(p.leq(0, 1));
}

TEST_CASE("cycles are rejected") {
    CHECK_THROWS_AS(Poset::from_covers({"0", "1"}, {{0, 1}, {1, 0}}), CycleError);
    CHECK_THROWS_AS(Poset::from_covers({"0", "1", "2"}, {{0, 1}, {1, 2}, {2, 0}}),
                    CycleError);
    CHECK_THROWS_AS(Poset::from_covers({"0"}, {{0, 3}}), IndexError);
}

TEST_CASE("increasing set checks") {
    const Poset chain = Poset::chain(3);
    CHECK(is_increasing(chain, set_of(3, {2})));
    CHECK_FALSE(is_increasing(chain, set_of(3, {0})));
    CHECK(is_decreasing(chain, set_of(3, {0})));
    CHECK(is_increasing(chain, set_of(3, {})));

    const Poset anti = Poset::antichain(3);
    CHECK(is_increasing(anti, set_of(3, {0})));
    CHECK(is_increasing(anti, set_of(3, {0, 2})));
}

TEST_CASE("closures") {
    const Poset chain = Poset::chain(3);
    CHECK(increase_closure(chain, set_of(3, {1})) == set_of(3, {1, 2}));
    CHECK(decrease_closure(chain, set_of(3, {1})) == set_of(3, {0, 1}));
    CHECK(increase_closure(chain, set_of(3, {})) == set_of(3, {}));

    const Poset anti = Poset::antichain(3);
    CHECK(increase_closure(anti, set_of(3, {0, 2})) == set_of(3, {0, 2}));
}

TEST_CASE("up-set enumeration") {
    const auto chain_upsets = enumerate_upsets(Poset::chain(3));
    CHECK(chain_upsets.size() == 4);

    const auto anti_upsets = enumerate_upsets(Poset::antichain(3));
    CHECK(anti_upsets.size() == 8);

    CHECK_THROWS_AS(enumerate_upsets(Poset::antichain(20), 1000), CapExceeded);

    // Every enumerated set is increasing and there are no duplicates.
    const PosetPtr p = make_poset({"a", "b", "c", "d"}, {{0, 1}, {0, 2}, {1, 3}});
    const auto upsets = enumerate_upsets(*p);
    for (std::size_t i = 0; i < upsets.size(); ++i) {
        CHECK(is_increasing(*p, upsets[i]));
        for (std::size_t j = i + 1; j < upsets.size(); ++j)
            CHECK_FALSE(upsets[i] == upsets[j]);
    }
}

TEST_CASE("product poset") {
    const Poset c2 = Poset::chain(2);
    const Poset prod = product_poset(c2, c2);
    CHECK(prod.size() == 4);
    // (0,1) and (1,0) are incomparable.
    CHECK_FALSE(prod.leq(1, 2));
    CHECK_FALSE(prod.leq(2, 1));
    CHECK(prod.leq(0, 3));
    CHECK(prod.leq(1, 3));

    const Poset single = Poset::antichain(1);
    const Poset iso = product_poset(c2, single);
    CHECK(iso.same_order_as(c2));

    const Poset anti = product_poset(Poset::antichain(2), Poset::antichain(2));
    CHECK(anti.is_identity_order());

    CHECK_THROWS_AS(product_poset(Poset::chain(200), Poset::chain(200)), SizeError);
}

TEST_CASE("random posets satisfy the order axioms") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const PosetPtr p = random_poset(rng, 9);
        const int n = p->size();
        for (int i = 0; i < n; ++i) {
            CHECK(p->leq(i, i));
            for (int j = 0; j < n; ++j) {
                if (i != j) CHECK_FALSE((p->leq(i, j) && p->leq(j, i)));
                for (int k = 0; k < n; ++k)
                    if (p->leq(i, j) && p->leq(j, k)) CHECK(p->leq(i, k));
            }
        }
    }
}
