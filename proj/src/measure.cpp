#include "tov/measure.hpp"

#include <cmath>
#include <string>

#include "tov/errors.hpp"
#include "tov/ordered_affinity.hpp"

namespace tov {

Measure::Measure(PosetPtr poset, std::vector<double> weights)
    : poset_(std::move(poset)), weights_(std::move(weights)) {
    if (!poset_) throw DimMismatch("measure requires a poset");
    if (static_cast<int>(weights_.size()) != poset_->size())
        throw DimMismatch("weight vector length " + std::to_string(weights_.size()) +
                          " does not match poset size " +
                          std::to_string(poset_->size()));
    for (double& w : weights_) {
        if (std::isnan(w) || w < -1e-9)
            throw BadParams("measure weight " + std::to_string(w) + " is negative");
        if (w < 0.0) w = 0.0;  // clamp arithmetic residue
    }
}

Measure Measure::dirac(PosetPtr poset, int i) {
    if (i < 0 || i >= poset->size()) throw IndexError("dirac point out of range");
    std::vector<double> w(poset->size(), 0.0);
    w[i] = 1.0;
    return Measure(std::move(poset), std::move(w));
}

Measure Measure::uniform(PosetPtr poset) {
    const int n = poset->size();
    if (n == 0) throw BadParams("uniform measure on empty poset");
    return Measure(std::move(poset), std::vector<double>(n, 1.0 / n));
}

Measure Measure::zero(PosetPtr poset) {
    const int n = poset->size();
    return Measure(std::move(poset), std::vector<double>(n, 0.0));
}

double Measure::mass() const {
    double s = 0.0;
    for (double w : weights_) s += w;
    return s;
}

double Measure::operator()(const ElementSet& s) const {
    double acc = 0.0;
    for (int i = 0; i < size(); ++i)
        if (s.get(i)) acc += weights_[i];
    return acc;
}

double Measure::integral(const std::vector<double>& h) const {
    if (h.size() != weights_.size())
        throw DimMismatch("function vector length mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) acc += h[i] * weights_[i];
    return acc;
}

Measure Measure::normalized() const {
    const double m = mass();
    if (m <= 0.0) throw MassMismatch("cannot normalize the zero measure");
    return scaled(1.0 / m);
}

Measure Measure::scaled(double c) const {
    if (c < 0.0) throw BadParams("negative scale factor");
    std::vector<double> w(weights_);
    for (double& x : w) x *= c;
    return Measure(poset_, std::move(w));
}

Measure Measure::minus(const Measure& other, double tol) const {
    require_same_poset(*this, other);
    std::vector<double> w(weights_);
    for (int i = 0; i < size(); ++i) {
        w[i] -= other.weights_[i];
        if (w[i] < -tol)
            throw BadParams("measure difference is negative at element " +
                            std::to_string(i));
        if (w[i] < 0.0) w[i] = 0.0;
    }
    return Measure(poset_, std::move(w));
}

void require_same_poset(const Measure& a, const Measure& b) {
    if (a.poset() == b.poset()) return;
    if (a.poset() && b.poset() && a.poset()->same_order_as(*b.poset())) return;
    throw DimMismatch("measures live on different posets");
}

Measure require_probability(const Measure& m) {
    if (std::abs(m.mass() - 1.0) > kMassTol)
        throw MassMismatch("expected a probability measure, got mass " +
                           std::to_string(m.mass()));
    return m.normalized();
}

double tv_distance(const Measure& mu, const Measure& nu) {
    require_same_poset(mu, nu);
    double s = 0.0;
    for (int i = 0; i < mu.size(); ++i) s += std::abs(mu[i] - nu[i]);
    return s;
}

Measure inf_measure(const Measure& mu, const Measure& nu) {
    require_same_poset(mu, nu);
    std::vector<double> w(mu.size());
    for (int i = 0; i < mu.size(); ++i) w[i] = std::min(mu[i], nu[i]);
    return Measure(mu.poset(), std::move(w));
}

double affinity(const Measure& mu, const Measure& nu) {
    return inf_measure(mu, nu).mass();
}

bool stochastically_dominated(const Measure& mu, const Measure& nu, double tol) {
    require_same_poset(mu, nu);
    if (std::abs(mu.mass() - nu.mass()) > tol) return false;
    return upset_sup(mu, nu).value <= tol;
}

}  // namespace tov
