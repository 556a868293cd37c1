#pragma once

#include <vector>

#include "tov/kernel.hpp"
#include "tov/measure.hpp"
#include "tov/rng.hpp"

namespace tov {

// Random finite poset with up to max_n elements: a random DAG of covers over
// the index order, so chains, antichains and layered orders all occur.
PosetPtr random_poset(Rng& rng, int max_n);

// As above but guarantees a global bottom element (every pair has a lower
// bound), which the contraction tightness scan needs.
PosetPtr random_poset_with_bottom(Rng& rng, int max_n);

// Random probability measure; occasionally a Dirac, and entries are zeroed
// with positive probability so boundary support cases are exercised.
Measure random_probability(Rng& rng, const PosetPtr& poset);

// Random finite measure with the given total mass.
Measure random_measure(Rng& rng, const PosetPtr& poset, double mass);

// Random order-preserving map f (x <= y implies f(x) <= f(y)), sampled by
// monotone completion along a linear extension with restart; falls back to a
// constant map if completion keeps dead-ending.
std::vector<int> random_monotone_map(Rng& rng, const Poset& poset);

// Convex mixture of random monotone deterministic maps; monotone by
// construction.
MarkovKernel random_monotone_kernel(Rng& rng, const PosetPtr& poset,
                                    int num_maps = 3);

// Identity-order kernel with a Doeblin minorization: (1 - eps) Q + eps psi
// for a random row-stochastic Q and random probability psi, so every pair of
// rows shares at least eps of common mass.
MarkovKernel random_doeblin_kernel(Rng& rng, int n, double eps);

// Pushforward of mu under a random downward map; stochastically dominated
// by mu.
Measure random_dominated_by(Rng& rng, const Measure& mu);

// Pushforward of mu under a random upward map; stochastically dominates mu.
Measure random_dominating(Rng& rng, const Measure& mu);

}  // namespace tov
