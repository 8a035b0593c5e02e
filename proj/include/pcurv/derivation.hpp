#pragma once

#include <string>
#include <vector>

#include "pcurv/poly.hpp"

namespace pcurv {

/// A derivation sum_j nu_j * d/dx_j of the coordinate ring. Components are
/// indexed by coordinate position, so Rees and auxiliary variables are
/// constants for every derivation (relative tangent field).
class Derivation {
public:
    Derivation() = default;
    explicit Derivation(RingPtr ring);  // zero derivation
    Derivation(RingPtr ring, std::vector<Poly> components);

    /// d/dx_j
    static Derivation coordinate(RingPtr ring, std::size_t j);

    const RingPtr& ring() const noexcept { return ring_; }
    const std::vector<Poly>& components() const noexcept { return components_; }
    const Poly& component(std::size_t j) const { return components_.at(j); }
    bool is_zero() const noexcept;

    Poly apply(const Poly& f) const;
    /// nu applied k times.
    Poly iterate(const Poly& f, std::size_t k) const;

    Derivation operator+(const Derivation& other) const;
    Derivation operator-(const Derivation& other) const;
    /// Left multiplication by a function: (g * nu)(f) = g * nu(f).
    Derivation scaled(const Poly& g) const;
    /// Lie bracket of vector fields.
    Derivation bracket(const Derivation& other) const;
    Derivation lift(const RingPtr& target) const;

    std::string to_string() const;

    bool operator==(const Derivation& other) const;

private:
    RingPtr ring_;
    std::vector<Poly> components_;
};

/// nu(f) = sum_j nu_j * df/dx_j
Poly derivation_apply(const Derivation& nu, const Poly& f);

/// The derivation nu^p, determined by its values nu^p(x_j).
Derivation derivation_pth_power(const Derivation& nu);

}  // namespace pcurv
