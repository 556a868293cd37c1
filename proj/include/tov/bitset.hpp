#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tov {

// Fixed-length bit vector. Used both for rows of order relations and for
// element sets; bitwise OR propagation makes transitive closure and
// up-set arithmetic cheap on dense desk-scale posets.
class Bitset {
  public:
    Bitset() = default;

    explicit Bitset(std::size_t n, bool fill = false)
        : n_(n), w_((n + 63) / 64, fill ? ~std::uint64_t{0} : 0) {
        trim();
    }

    std::size_t size() const { return n_; }

    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }

    void set(std::size_t i, bool v = true) {
        const std::uint64_t mask = std::uint64_t{1} << (i & 63);
        if (v)
            w_[i >> 6] |= mask;
        else
            w_[i >> 6] &= ~mask;
    }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto x : w_) c += static_cast<std::size_t>(__builtin_popcountll(x));
        return c;
    }

    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }

    bool none() const { return !any(); }

    Bitset& operator|=(const Bitset& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] |= o.w_[k];
        return *this;
    }

    Bitset& operator&=(const Bitset& o) {
        for (std::size_t k = 0; k < w_.size(); ++k) w_[k] &= o.w_[k];
        return *this;
    }

    friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
    friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }

    bool is_subset_of(const Bitset& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & ~o.w_[k]) return false;
        return true;
    }

    bool intersects(const Bitset& o) const {
        for (std::size_t k = 0; k < w_.size(); ++k)
            if (w_[k] & o.w_[k]) return true;
        return false;
    }

    bool operator==(const Bitset& o) const = default;

    Bitset complement() const {
        Bitset r(n_);
        for (std::size_t k = 0; k < w_.size(); ++k) r.w_[k] = ~w_[k];
        r.trim();
        return r;
    }

    // Indices of set bits, ascending.
    std::vector<int> elements() const {
        std::vector<int> out;
        for (std::size_t i = 0; i < n_; ++i)
            if (get(i)) out.push_back(static_cast<int>(i));
        return out;
    }

  private:
    void trim() {
        if (n_ % 64 != 0 && !w_.empty())
            w_.back() &= (~std::uint64_t{0}) >> (64 - n_ % 64);
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

}  // namespace tov
