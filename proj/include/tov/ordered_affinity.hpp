#pragma once

#include <tuple>
#include <vector>

#include "tov/measure.hpp"

namespace tov {

// Result of maximizing mu(I) - nu(I) over increasing sets I. The witness is
// an increasing set attaining the value (the empty set gives 0, so the value
// is never negative).
struct UpsetSup {
    double value = 0.0;
    ElementSet witness;
};

// A pair of components mu_part <= mu, nu_part <= nu with equal mass and
// mu_part stochastically dominated by nu_part.
struct ComponentPair {
    Measure mu_part;
    Measure nu_part;
};

// Full solution of the order transport problem: how much of mu can be moved
// upward onto nu along the order graph, which sub-measures move, and the
// joint placement of the moved mass on ordered pairs.
struct TransportPlan {
    double moved_mass = 0.0;
    Measure mu_part;
    Measure nu_part;
    ElementSet witness;  // increasing set attaining mass(mu) - moved_mass
    // (x, y, weight) with x <= y, sorted by (x, y); row/column sums are the
    // weights of mu_part and nu_part.
    std::vector<std::tuple<int, int, double>> pair_flows;
};

// Core engine: sup over increasing I of mu(I) - nu(I), computed as a min cut
// of the transport network source -> x (cap mu_x), x -> y along the order
// (cap infinity, routed through cover arcs), y -> sink (cap nu_y). No mass
// precondition; works for any pair of finite measures.
UpsetSup upset_sup(const Measure& mu, const Measure& nu);

// Same solve, additionally decomposing the optimal flow into ordered pairs.
TransportPlan order_transport(const Measure& mu, const Measure& nu);

// The sup term of the duality together with a maximizing increasing set.
// Requires equal masses.
UpsetSup max_upset_deficiency(const Measure& mu, const Measure& nu);

// Maximal mass of an ordered component pair; equals mass(mu) minus the up-set
// deficiency. Requires equal masses (probabilities in the usual case).
double ordered_affinity(const Measure& mu, const Measure& nu);

// A maximal ordered component pair realized by the optimal transport flow.
// Non-unique in general; only the pair invariants are contractual.
ComponentPair maximal_ordered_component_pair(const Measure& mu, const Measure& nu);

enum class FunctionRange { unit, symmetric };

// Function on the poset that is monotone along the order, with values in
// [0, 1] (unit) or [-1, 1] (symmetric).
struct IncreasingFunction {
    std::vector<double> values;
    FunctionRange range = FunctionRange::unit;
};

bool is_increasing_function(const Poset& p, const std::vector<double>& values,
                            double tol = 1e-12);

struct FunctionSup {
    double value = 0.0;
    IncreasingFunction argmax;
};

// Supremum of lambda(h) over increasing functions with the given range.
// For the unit range the sup equals the up-set sup and is attained by the
// indicator of the witness set. The symmetric range is exposed only for
// lambda with zero total mass, where the value doubles and the argmax is the
// recentered indicator.
FunctionSup sup_increasing_function(const SignedDiff& lambda, FunctionRange range);

// Total ordered variation distance between probability measures:
// the sum of the two directional deficiencies.
double gamma_distance(const Measure& mu, const Measure& nu);

// Bhattacharya metric: sup over increasing [-1,1] functions of the absolute
// integral difference. Equivalent to gamma (gamma <= beta <= 2 gamma).
double beta_distance(const Measure& mu, const Measure& nu);

}  // namespace tov
