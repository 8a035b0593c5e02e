#include "pcurv/derivation.hpp"

#include "pcurv/errors.hpp"

namespace pcurv {

Derivation::Derivation(RingPtr ring) : ring_(std::move(ring)) {
    components_.assign(ring_->num_coordinates(), Poly(ring_));
}

Derivation::Derivation(RingPtr ring, std::vector<Poly> components)
    : ring_(std::move(ring)), components_(std::move(components)) {
    if (components_.size() != ring_->num_coordinates())
        throw DimensionError("derivation needs one component per coordinate");
    for (auto& c : components_) {
        if (c.ring() == nullptr) c = Poly(ring_);
        if (!same_ring(c.ring(), ring_)) throw MismatchError("derivation component over a different ring");
    }
}

Derivation Derivation::coordinate(RingPtr ring, std::size_t j) {
    Derivation d(ring);
    if (j >= d.components_.size()) throw DimensionError("coordinate index out of range");
    d.components_[j] = Poly::constant(ring, 1);
    return d;
}

bool Derivation::is_zero() const noexcept {
    for (const auto& c : components_)
        if (!c.is_zero()) return false;
    return true;
}

Poly Derivation::apply(const Poly& f) const {
    if (!same_ring(f.ring(), ring_) && !f.is_zero()) throw MismatchError("derivation applied across rings");
    Poly result(ring_);
    const auto& coords = ring_->coordinates();
    for (std::size_t j = 0; j < components_.size(); ++j) {
        if (components_[j].is_zero()) continue;
        Poly partial = f.derivative(coords[j]);
        if (!partial.is_zero()) result += components_[j] * partial;
    }
    return result;
}

Poly Derivation::iterate(const Poly& f, std::size_t k) const {
    Poly g = f.ring() ? f : Poly(ring_);
    for (std::size_t i = 0; i < k && !g.is_zero(); ++i) g = apply(g);
    return g;
}

Derivation Derivation::operator+(const Derivation& other) const {
    if (!same_ring(ring_, other.ring_)) throw MismatchError("derivations over different rings");
    Derivation r = *this;
    for (std::size_t j = 0; j < components_.size(); ++j) r.components_[j] += other.components_[j];
    return r;
}

Derivation Derivation::operator-(const Derivation& other) const {
    if (!same_ring(ring_, other.ring_)) throw MismatchError("derivations over different rings");
    Derivation r = *this;
    for (std::size_t j = 0; j < components_.size(); ++j) r.components_[j] -= other.components_[j];
    return r;
}

Derivation Derivation::scaled(const Poly& g) const {
    Derivation r = *this;
    for (auto& c : r.components_) c = g * c;
    return r;
}

Derivation Derivation::bracket(const Derivation& other) const {
    if (!same_ring(ring_, other.ring_)) throw MismatchError("derivations over different rings");
    std::vector<Poly> comps;
    comps.reserve(components_.size());
    for (std::size_t j = 0; j < components_.size(); ++j)
        comps.push_back(apply(other.components_[j]) - other.apply(components_[j]));
    return Derivation(ring_, std::move(comps));
}

Derivation Derivation::lift(const RingPtr& target) const {
    if (target->num_coordinates() != ring_->num_coordinates())
        throw MismatchError("lift target has a different number of coordinates");
    std::vector<Poly> comps;
    for (const auto& c : components_) comps.push_back(c.lift(target));
    return Derivation(target, std::move(comps));
}

std::string Derivation::to_string() const {
    std::string out;
    const auto& coords = ring_->coordinates();
    for (std::size_t j = 0; j < components_.size(); ++j) {
        if (components_[j].is_zero()) continue;
        if (!out.empty()) out += " + ";
        out += "(" + components_[j].to_string() + ")*d_" + ring_->variable(coords[j]).name;
    }
    return out.empty() ? "0" : out;
}

bool Derivation::operator==(const Derivation& other) const {
    if (components_.size() != other.components_.size()) return false;
    for (std::size_t j = 0; j < components_.size(); ++j)
        if (!(components_[j] == other.components_[j])) return false;
    return true;
}

Poly derivation_apply(const Derivation& nu, const Poly& f) { return nu.apply(f); }

Derivation derivation_pth_power(const Derivation& nu) {
    const auto& ring = nu.ring();
    const auto p = ring->characteristic();
    std::vector<Poly> comps;
    for (auto idx : ring->coordinates()) comps.push_back(nu.iterate(Poly::variable(ring, idx), p));
    return Derivation(ring, std::move(comps));
}

}  // namespace pcurv
