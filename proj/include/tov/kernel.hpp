#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "tov/measure.hpp"
#include "tov/ordered_affinity.hpp"

namespace tov {

// Row-stochastic transition matrix indexed by poset elements. Row i is the
// distribution of the next state from element i.
class MarkovKernel {
  public:
    // Validates that every row is a probability vector (mass one within
    // kMassTol, nonnegative entries).
    MarkovKernel(PosetPtr poset, std::vector<std::vector<double>> rows);

    static MarkovKernel identity(PosetPtr poset);

    int size() const { return n_; }
    const PosetPtr& poset() const { return poset_; }
    double at(int i, int j) const { return rows_[i][j]; }
    const std::vector<std::vector<double>>& rows() const { return rows_; }

    // Row i as a measure (the one-step distribution from element i).
    Measure row(int i) const;

  private:
    PosetPtr poset_;
    int n_ = 0;
    std::vector<std::vector<double>> rows_;
};

// Distribution update mu -> mu P. Mass is preserved.
Measure apply(const Measure& mu, const MarkovKernel& p);

// m-th composition of the kernel with itself, m >= 1.
MarkovKernel compose(const MarkovKernel& p, int m);

// Joint distribution of (current, next) on the product poset; the weight of
// pair (x, y) is mu(x) P(x, y).
Measure joint_distribution(const Measure& mu, const MarkovKernel& p,
                           std::size_t limit = kDefaultProductLimit);

// True iff rows are stochastically ordered along the state order.
bool is_monotone(const MarkovKernel& p);

// Ordered Dobrushin coefficient: the minimum of the ordered affinity between
// any two rows. Positivity makes one step of the kernel a gamma-contraction.
double dobrushin_coefficient(const MarkovKernel& p);

// Outcome of a randomized inequality check.
struct CheckReport {
    int trials = 0;
    double max_ratio = 0.0;  // worst observed lhs / rhs over valid trials
    double max_slack = 0.0;  // worst observed lhs - rhs
};

// Asserts gamma(mu P, nu P) <= (1 - sigma(P)) gamma(mu, nu) + 1e-9 on random
// probability pairs. Throws NotMonotone or AssertionFailure with the
// violating pair.
CheckReport contraction_check(const MarkovKernel& p, int trials, std::uint64_t seed);

// Asserts gamma(mu P, nu P) <= gamma(mu, nu) + 1e-9 on random pairs.
CheckReport nonexpansiveness_check(const MarkovKernel& p, int trials,
                                   std::uint64_t seed);

// Asserts ordered_affinity(mu P, nu P) >= sigma(P) - 1e-9 on random measure
// pairs; the Dirac pairs attain the infimum.
CheckReport sigma_measure_pairs_check(const MarkovKernel& p, int trials,
                                      std::uint64_t seed);

struct StabilityCertificate {
    int m = 0;          // kernel power the contraction was certified at
    double sigma_m = 0; // ordered Dobrushin coefficient of P^m
    double rate = 0;    // 1 - sigma_m, per-cycle contraction factor
    Measure stationary;
    double residual = 0;  // gamma(pi P, pi), at most 1e-8
};

// Finds the smallest m <= m_max with a usable coefficient sigma(P^m) > 1e-6,
// then fixed-point iterates mu <- mu P^m from the uniform start until the
// gamma step falls below 1e-10 and the one-step residual below 1e-8.
// Throws NotMonotone, or NoCertificate when no power qualifies (inconclusive,
// not a disproof).
StabilityCertificate certify_stationary(const MarkovKernel& p, int m_max);

}  // namespace tov
