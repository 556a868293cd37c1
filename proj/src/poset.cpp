#include "tov/poset.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "tov/errors.hpp"

namespace tov {

Poset Poset::from_covers(std::vector<std::string> labels,
                         std::vector<std::pair<int, int>> covers) {
    Poset p;
    p.n_ = static_cast<int>(labels.size());
    p.labels_ = std::move(labels);

    std::set<std::pair<int, int>> seen;
    for (auto [a, b] : covers) {
        if (a < 0 || a >= p.n_ || b < 0 || b >= p.n_)
            throw IndexError("cover pair (" + std::to_string(a) + ", " +
                             std::to_string(b) + ") out of range");
        if (a == b) continue;
        if (seen.insert({a, b}).second) p.covers_.emplace_back(a, b);
    }
    p.close_and_check();
    p.derive();
    return p;
}

// Chains and antichains are closed by construction, so both skip the cubic
// Warshall pass; large dyadic-grid chains stay cheap to build.
Poset Poset::chain(int n) {
    Poset p;
    p.n_ = n;
    p.up_.assign(n, Bitset(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        p.labels_.push_back(std::to_string(i));
        if (i + 1 < n) p.covers_.emplace_back(i, i + 1);
        for (int j = i; j < n; ++j) p.up_[i].set(j);
    }
    p.derive();
    return p;
}

Poset Poset::antichain(int n) {
    Poset p;
    p.n_ = n;
    p.up_.assign(n, Bitset(static_cast<std::size_t>(n)));
    for (int i = 0; i < n; ++i) {
        p.labels_.push_back(std::to_string(i));
        p.up_[i].set(i);
    }
    p.derive();
    return p;
}

void Poset::close_and_check() {
    up_.assign(n_, Bitset(static_cast<std::size_t>(n_)));
    for (int i = 0; i < n_; ++i) up_[i].set(i);
    for (auto [a, b] : covers_) up_[a].set(b);

    // Warshall closure by row OR-propagation.
    for (int k = 0; k < n_; ++k)
        for (int i = 0; i < n_; ++i)
            if (i != k && up_[i].get(k)) up_[i] |= up_[k];

    for (int i = 0; i < n_; ++i)
        for (int j = i + 1; j < n_; ++j)
            if (up_[i].get(j) && up_[j].get(i))
                throw CycleError("covers create a cycle through elements " +
                                 std::to_string(i) + " and " + std::to_string(j));
}

void Poset::derive() {
    down_.assign(n_, Bitset(static_cast<std::size_t>(n_)));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (up_[i].get(j)) down_[j].set(i);

    // Sorting by predecessor count yields a linear extension: j < i strictly
    // implies down(j) is a proper subset of down(i).
    std::vector<std::size_t> pred_count(n_);
    for (int i = 0; i < n_; ++i) pred_count[i] = down_[i].count();
    topo_.resize(n_);
    std::iota(topo_.begin(), topo_.end(), 0);
    std::stable_sort(topo_.begin(), topo_.end(), [&pred_count](int a, int b) {
        return pred_count[a] < pred_count[b];
    });
}

bool Poset::is_identity_order() const {
    for (int i = 0; i < n_; ++i)
        if (up_[i].count() != 1) return false;
    return true;
}

bool Poset::same_order_as(const Poset& o) const {
    return n_ == o.n_ && up_ == o.up_;
}

PosetPtr make_poset(std::vector<std::string> labels,
                    std::vector<std::pair<int, int>> covers) {
    return std::make_shared<const Poset>(
        Poset::from_covers(std::move(labels), std::move(covers)));
}

PosetPtr make_chain(int n) { return std::make_shared<const Poset>(Poset::chain(n)); }

PosetPtr make_antichain(int n) {
    return std::make_shared<const Poset>(Poset::antichain(n));
}

bool is_increasing(const Poset& p, const ElementSet& s) {
    for (int i = 0; i < p.size(); ++i)
        if (s.get(i) && !p.up_row(i).is_subset_of(s)) return false;
    return true;
}

bool is_decreasing(const Poset& p, const ElementSet& s) {
    for (int i = 0; i < p.size(); ++i)
        if (s.get(i) && !p.down_row(i).is_subset_of(s)) return false;
    return true;
}

ElementSet increase_closure(const Poset& p, const ElementSet& b) {
    ElementSet r(b.size());
    for (int i = 0; i < p.size(); ++i)
        if (b.get(i)) r |= p.up_row(i);
    return r;
}

ElementSet decrease_closure(const Poset& p, const ElementSet& b) {
    ElementSet r(b.size());
    for (int i = 0; i < p.size(); ++i)
        if (b.get(i)) r |= p.down_row(i);
    return r;
}

namespace {

// Enumerates down-sets by deciding membership along a linear extension: an
// element may join only if all its strict predecessors already joined.
// Complements are the up-sets. Bails out as soon as the cap is passed.
void enumerate_downsets_rec(const Poset& p, std::size_t k, Bitset& current,
                            std::vector<ElementSet>& out, std::size_t cap) {
    if (k == p.topological_order().size()) {
        if (out.size() >= cap)
            throw CapExceeded("up-set enumeration exceeds cap of " +
                              std::to_string(cap));
        out.push_back(current.complement());
        return;
    }
    const int e = p.topological_order()[k];
    enumerate_downsets_rec(p, k + 1, current, out, cap);
    Bitset strict_pred = p.down_row(e);
    strict_pred.set(e, false);
    if (strict_pred.is_subset_of(current)) {
        current.set(e, true);
        enumerate_downsets_rec(p, k + 1, current, out, cap);
        current.set(e, false);
    }
}

}  // namespace

std::vector<ElementSet> enumerate_upsets(const Poset& p, std::size_t cap) {
    std::vector<ElementSet> out;
    Bitset current(static_cast<std::size_t>(p.size()));
    enumerate_downsets_rec(p, 0, current, out, cap);
    return out;
}

Poset product_poset(const Poset& a, const Poset& b, std::size_t limit) {
    const std::size_t n = static_cast<std::size_t>(a.size()) *
                          static_cast<std::size_t>(b.size());
    if (n > limit)
        throw SizeError("product poset would have " + std::to_string(n) +
                        " elements, limit is " + std::to_string(limit));

    Poset p;
    p.n_ = static_cast<int>(n);
    p.labels_.reserve(n);
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j)
            p.labels_.push_back("(" + a.label(i) + "," + b.label(j) + ")");

    // Generator arcs move one coordinate along a cover; their closure is the
    // pointwise product order, which is filled in directly below.
    for (auto [x, y] : a.cover_arcs())
        for (int j = 0; j < b.size(); ++j)
            p.covers_.emplace_back(x * b.size() + j, y * b.size() + j);
    for (auto [x, y] : b.cover_arcs())
        for (int i = 0; i < a.size(); ++i)
            p.covers_.emplace_back(i * b.size() + x, i * b.size() + y);

    p.up_.assign(n, Bitset(n));
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < b.size(); ++j) {
            Bitset& row = p.up_[static_cast<std::size_t>(i) * b.size() + j];
            for (int c = 0; c < a.size(); ++c) {
                if (!a.leq(i, c)) continue;
                for (int d = 0; d < b.size(); ++d)
                    if (b.leq(j, d)) row.set(static_cast<std::size_t>(c) * b.size() + d);
            }
        }
    p.derive();
    return p;
}

PosetPtr make_product_poset(const PosetPtr& a, const PosetPtr& b, std::size_t limit) {
    return std::make_shared<const Poset>(product_poset(*a, *b, limit));
}

}  // namespace tov
