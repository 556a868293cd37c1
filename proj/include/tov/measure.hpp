#pragma once

#include <vector>

#include "tov/poset.hpp"

namespace tov {

inline constexpr double kMassTol = 1e-9;

// Finite nonnegative measure on a poset. Value semantics, immutable weights.
class Measure {
  public:
    Measure(PosetPtr poset, std::vector<double> weights);

    static Measure dirac(PosetPtr poset, int i);
    static Measure uniform(PosetPtr poset);
    static Measure zero(PosetPtr poset);

    int size() const { return static_cast<int>(weights_.size()); }
    double operator[](int i) const { return weights_[i]; }
    const std::vector<double>& weights() const { return weights_; }
    const PosetPtr& poset() const { return poset_; }

    double mass() const;

    // Weight of a set of elements.
    double operator()(const ElementSet& s) const;

    // Integral of a function given by its value vector.
    double integral(const std::vector<double>& h) const;

    // Scaled to total mass one. Throws MassMismatch on the zero measure.
    Measure normalized() const;

    Measure scaled(double c) const;

    // Componentwise difference, clamping small negative residue to zero.
    // Throws if the difference undershoots zero by more than the tolerance.
    Measure minus(const Measure& other, double tol = 1e-9) const;

  private:
    PosetPtr poset_;
    std::vector<double> weights_;
};

// Signed measure kept as an explicit difference of two measures, preserving
// the nonnegativity invariant of Measure.
struct SignedDiff {
    Measure plus;
    Measure minus;

    double total() const { return plus.mass() - minus.mass(); }
    double of_set(const ElementSet& s) const { return plus(s) - minus(s); }
};

// Throws DimMismatch unless both measures live on the same poset.
void require_same_poset(const Measure& a, const Measure& b);

// Validates mass one within kMassTol, then returns the exactly renormalized
// measure. Throws MassMismatch otherwise.
Measure require_probability(const Measure& m);

// Full total variation norm: sum of |mu_i - nu_i|. For probability pairs this
// equals twice the largest set-difference.
double tv_distance(const Measure& mu, const Measure& nu);

// Pointwise minimum: the largest measure dominated by both.
Measure inf_measure(const Measure& mu, const Measure& nu);

// Mass of the measure infimum.
double affinity(const Measure& mu, const Measure& nu);

// True iff mass(mu) == mass(nu) and mu(I) <= nu(I) for every increasing I,
// decided exactly via the up-set deficiency transport problem.
bool stochastically_dominated(const Measure& mu, const Measure& nu,
                              double tol = kMassTol);

}  // namespace tov
