#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "tov/bitset.hpp"

namespace tov {

// A set of elements of a poset, stored as a membership bit vector.
using ElementSet = Bitset;

// Finite partially ordered set. The relation is stored densely as one bitset
// row per element (row i holds every j with i preceding-or-equal j), which is
// what the closure, up-set and transport routines operate on. Immutable after
// construction, so instances can be shared freely across threads.
class Poset {
  public:
    // Builds the order as the reflexive-transitive closure of the given cover
    // pairs. Throws CycleError if two distinct elements end up mutually
    // comparable, IndexError on out-of-range pair indices.
    static Poset from_covers(std::vector<std::string> labels,
                             std::vector<std::pair<int, int>> covers);

    // Total order 0 < 1 < ... < n-1.
    static Poset chain(int n);

    // Identity order: x <= y iff x == y.
    static Poset antichain(int n);

    int size() const { return n_; }
    const std::string& label(int i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }

    // True iff element i precedes-or-equals element j.
    bool leq(int i, int j) const { return up_[i].get(j); }

    // All j with i <= j (includes i).
    const Bitset& up_row(int i) const { return up_[i]; }
    // All j with j <= i (includes i).
    const Bitset& down_row(int i) const { return down_[i]; }

    // The generator arcs the order was built from (deduplicated input covers,
    // self-loops removed). Their closure equals the stored relation.
    const std::vector<std::pair<int, int>>& cover_arcs() const { return covers_; }

    bool is_identity_order() const;

    // A linear extension: strict predecessors always appear earlier.
    const std::vector<int>& topological_order() const { return topo_; }

    // Structural equality of the relation (labels ignored).
    bool same_order_as(const Poset& o) const;

  private:
    friend Poset product_poset(const Poset&, const Poset&, std::size_t);

    Poset() = default;
    void close_and_check();  // Warshall closure + antisymmetry check
    void derive();           // down rows and topological order from up rows

    int n_ = 0;
    std::vector<std::string> labels_;
    std::vector<std::pair<int, int>> covers_;
    std::vector<Bitset> up_;
    std::vector<Bitset> down_;
    std::vector<int> topo_;
};

using PosetPtr = std::shared_ptr<const Poset>;

PosetPtr make_poset(std::vector<std::string> labels,
                    std::vector<std::pair<int, int>> covers);
PosetPtr make_chain(int n);
PosetPtr make_antichain(int n);

// True iff s is an up-set: membership is inherited upward.
bool is_increasing(const Poset& p, const ElementSet& s);

// True iff s is a down-set.
bool is_decreasing(const Poset& p, const ElementSet& s);

// Smallest increasing superset of b.
ElementSet increase_closure(const Poset& p, const ElementSet& b);

// Smallest decreasing superset of b.
ElementSet decrease_closure(const Poset& p, const ElementSet& b);

// Exhaustive list of all increasing sets, including the empty set and the
// whole space. Throws CapExceeded once more than `cap` sets are found; counts
// grow exponentially on wide posets.
std::vector<ElementSet> enumerate_upsets(const Poset& p, std::size_t cap = 1000000);

inline constexpr std::size_t kDefaultProductLimit = 20000;

// Pointwise product order on pairs; element (x0, x1) maps to index
// x0 * n1 + x1. Throws SizeError if the product exceeds `limit` elements.
Poset product_poset(const Poset& a, const Poset& b,
                    std::size_t limit = kDefaultProductLimit);
PosetPtr make_product_poset(const PosetPtr& a, const PosetPtr& b,
                            std::size_t limit = kDefaultProductLimit);

}  // namespace tov
