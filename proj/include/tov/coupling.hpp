#pragma once

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "tov/kernel.hpp"
#include "tov/measure.hpp"

namespace tov {

// Joint distribution on element pairs with prescribed marginals. Stored as a
// dense row-major matrix; row sums match the first marginal and column sums
// the second, both within kMassTol.
class Coupling {
  public:
    static Coupling from_matrix(Measure mu, Measure nu, std::vector<double> joint);

    const PosetPtr& poset() const { return mu_.poset(); }
    int size() const { return n_; }
    double at(int i, int j) const { return joint_[static_cast<std::size_t>(i) * n_ + j]; }
    const std::vector<double>& joint() const { return joint_; }
    const Measure& mu() const { return mu_; }
    const Measure& nu() const { return nu_; }

    // P{X = Y}.
    double diagonal_mass() const;
    // P{X <= Y}: total weight on order-related pairs.
    double ordered_mass() const;

  private:
    Coupling(Measure mu, Measure nu, std::vector<double> joint);
    Measure mu_;
    Measure nu_;
    int n_;
    std::vector<double> joint_;
};

// Classical maximal coupling: the measure infimum sits on the diagonal and
// the residuals are coupled independently. Attains P{X = Y} = affinity(mu, nu).
Coupling maximal_coupling(const Measure& mu, const Measure& nu);

// Order-maximal coupling: the optimal transport flow sits on ordered pairs
// (mass equal to the ordered affinity) and the residuals are coupled
// independently. Attains P{X <= Y} = ordered_affinity(mu, nu).
Coupling order_maximal_coupling(const Measure& mu, const Measure& nu);

// Coupling supported entirely on ordered pairs; exists iff mu is
// stochastically dominated by nu. Throws NotDominated otherwise.
Coupling nachbin_strassen_coupling(const Measure& mu, const Measure& nu);

// One row of a coupled kernel: sparse distribution over pair indices
// (x * n + y, weight), sorted by pair index, with its sampling CDF.
struct CoupledRow {
    std::vector<std::pair<int, double>> entries;
    std::vector<double> cdf;
};

// Markov kernel on state pairs whose rows are order-maximal couplings of the
// corresponding transition rows. Both coordinate marginals reproduce the base
// kernel, and the order graph is absorbing: from an ordered pair, all mass
// moves to ordered pairs. Rows are built on demand and cached; the object is
// not safe for concurrent row construction.
class CoupledKernel {
  public:
    explicit CoupledKernel(MarkovKernel p);  // requires a monotone kernel

    const MarkovKernel& kernel() const { return kernel_; }
    const PosetPtr& base_poset() const { return kernel_.poset(); }
    int base_size() const { return kernel_.size(); }
    int pair_count() const { return base_size() * base_size(); }

    int pair_index(int x, int y) const { return x * base_size() + y; }
    std::pair<int, int> pair_state(int idx) const {
        return {idx / base_size(), idx % base_size()};
    }

    const CoupledRow& row(int pair_idx) const;

    // Next pair index by inverse CDF at u in [0, 1).
    int step(int pair_idx, double u) const;

  private:
    MarkovKernel kernel_;
    mutable std::vector<std::unique_ptr<CoupledRow>> rows_;
};

// Builds the coupled kernel for a monotone base kernel. Throws NotMonotone.
CoupledKernel absorbing_coupled_kernel(const MarkovKernel& p);

// Monte Carlo estimates, per t = 0..horizon, of the probabilities that the
// two coordinates have never been ordered up to t (in either direction),
// with binomial standard errors. Deterministic given the seed; replication r
// uses the stream derived from (seed, r).
struct CoupledChainStats {
    int horizon = 0;
    std::size_t replications = 0;
    std::vector<double> p_never_leq;
    std::vector<double> p_never_geq;
    std::vector<double> se_leq;
    std::vector<double> se_geq;
};

CoupledChainStats simulate_coupled_chain(const CoupledKernel& m, int x0, int y0,
                                         int horizon, std::size_t replications,
                                         std::uint64_t seed);

}  // namespace tov
